use gchain::functor::{compose_functors, derivative, taylor};
use gchain::random::{InstanceGen, SeqShape};
use gchain::symseq::{compose, evaluate_seq};
use gchain::trace::Circuit;
use gchain::{Ctx, Laurent, PolyFunctor, SignMode, SymSeq};
use proptest::prelude::*;

fn sign(signed: bool) -> SignMode {
    if signed {
        SignMode::Signed
    } else {
        SignMode::Unsigned
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn composite_evaluates_as_nested_evaluation(seed in any::<u64>(), signed in any::<bool>()) {
        let mut g = InstanceGen::new(seed);
        let a = g.seq(&SeqShape { max_constant: 1, ..SeqShape::reduced(3, 3) }, 9);
        let b = g.seq(&SeqShape::reduced(3, 2), 9);
        let x = g.base_laurent(2, (0, 1));
        let ctx = Ctx::new(sign(signed), 9);
        let ab = compose(&a, &b, &ctx).unwrap();
        prop_assert_eq!(evaluate_seq(&ab, &x, &ctx), evaluate_seq(&a, &evaluate_seq(&b, &x, &ctx), &ctx));
        for (_, e) in ab.entries() {
            prop_assert!(e.is_genuine());
        }
    }

    #[test]
    fn json_round_trip(seed in any::<u64>()) {
        let s = InstanceGen::new(seed).seq(&SeqShape { max_constant: 2, ..SeqShape::reduced(4, 3) }, 5);
        prop_assert_eq!(SymSeq::from_json(&s.to_json()).unwrap(), s.clone());
        let f = PolyFunctor::new(s, "F");
        prop_assert_eq!(PolyFunctor::from_json(&f.to_json()).unwrap(), f);
    }

    #[test]
    fn derivatives_of_composites_match_the_trace_circuit(seed in any::<u64>(), signed in any::<bool>()) {
        let mut g = InstanceGen::new(seed);
        let shape = SeqShape::reduced(3, 2);
        let (a, b, c) = (g.seq(&shape, 5), g.seq(&shape, 5), g.seq(&shape, 5));
        let ctx = Ctx::new(sign(signed), 5);
        let abc = compose(&compose(&a, &b, &ctx).unwrap(), &c, &ctx).unwrap();
        let traced = Circuit::chain(&[&a, &b, &c]).derivatives_at(&Laurent::zero(), 5, &ctx);
        for n in 1..=5 {
            prop_assert_eq!(abc.entry(n), traced.entry(n));
        }
    }
}

#[test]
fn tower_of_a_composite() {
    let ctx = Ctx::new(SignMode::Unsigned, 6);
    let mut g = InstanceGen::new(42);
    let f = PolyFunctor::new(g.seq(&SeqShape::reduced(3, 3), 6), "F");
    let h = PolyFunctor::new(g.seq(&SeqShape::reduced(3, 3), 6), "G");
    let fh = compose_functors(&f, &h, &ctx).unwrap();
    assert_eq!(fh.label, "F(G)");
    for n in 0..=6 {
        let slice = taylor(&fh, n).unwrap();
        assert!(slice.is_split_exact());
        assert_eq!(
            derivative(&fh, n, &ctx).unwrap(),
            if n == 0 {
                gchain::GradedCharacter::scalar(Laurent::zero())
            } else {
                fh.coeffs.entry(n)
            }
        );
    }
    assert!(taylor(&PolyFunctor::new(SymSeq::zero(2, false), "open"), 3).is_err());
}
