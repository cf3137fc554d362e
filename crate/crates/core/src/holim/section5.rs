//! The seven-object diagram whose limit is `P_3(FG)`.
//!
//! Objects and their summands, writing `W_j = D_jG(X)`:
//!
//! | object                    | labels                            |
//! |---------------------------|-----------------------------------|
//! | `(P_1F)(P_3G)`            | `c`, `A1D1`, `A1D2`, `A1D3`       |
//! | `(P_3F)(P_1G)`            | `c`, `A1D1`, `A2D1sym`, `A3D1`    |
//! | `d_2F ^ P_1G ^ P_2G`      | `A2D1sym`, `A2D1anti`, `A2D1D2`   |
//! | `(P_1F)(P_2G)`            | `c`, `A1D1`, `A1D2`               |
//! | `(P_2F)(P_1G)`            | `c`, `A1D1`, `A2D1sym`            |
//! | `d_2F ^ P_1G^2`           | `A2D1sym`, `A2D1anti`             |
//! | `(P_1F)(P_1G)`            | `c`, `A1D1`                       |
//!
//! `d_2F ^ W_1 ^ W_1` splits into the image of the norm map from the
//! orbits (`sym`) and a complement (`anti`); `Delta_2` is injective onto
//! `sym`.

use crate::error::Result;
use crate::holim::split::{split_limit, SplitDiagram, SplitLimit};
use crate::laurent::{GradedDim, Laurent};
use crate::symseq::{evaluate_seq, SymSeq};
use crate::Ctx;

pub fn section5_diagram(a: &SymSeq, b: &SymSeq, x: &Laurent, ctx: &Ctx) -> Result<SplitDiagram> {
    let w: Vec<Laurent> = (0..=3).map(|j| evaluate_seq(&b.homogeneous(j), x, ctx)).collect();
    let on = |k: usize, v: &Laurent| evaluate_seq(&a.homogeneous(k), v, ctx);
    let dim_a2 = a.entry(2).dim().clone();
    let sym = on(2, &w[1]);
    let anti = &(&(&dim_a2 * &w[1]) * &w[1]) - &sym;
    let weights: Vec<(&str, Laurent)> = vec![
        ("c", a.constant().clone()),
        ("A1D1", on(1, &w[1])),
        ("A1D2", on(1, &w[2])),
        ("A1D3", on(1, &w[3])),
        ("A2D1sym", sym),
        ("A2D1anti", anti),
        ("A3D1", on(3, &w[1])),
        ("A2D1D2", &(&dim_a2 * &w[1]) * &w[2]),
    ];
    let mut d = SplitDiagram::new();
    for (label, wt) in weights {
        d.set_weight(label, GradedDim::from_laurent(&wt)?);
    }
    let o1 = d.add_object("(P1F)(P3G)", ["c", "A1D1", "A1D2", "A1D3"]);
    let o2 = d.add_object("(P3F)(P1G)", ["c", "A1D1", "A2D1sym", "A3D1"]);
    let o3 = d.add_object("d2F^P1G^P2G", ["A2D1sym", "A2D1anti", "A2D1D2"]);
    let o4 = d.add_object("(P1F)(P2G)", ["c", "A1D1", "A1D2"]);
    let o5 = d.add_object("(P2F)(P1G)", ["c", "A1D1", "A2D1sym"]);
    let o6 = d.add_object("d2F^P1G^2", ["A2D1sym", "A2D1anti"]);
    let o7 = d.add_object("(P1F)(P1G)", ["c", "A1D1"]);
    d.add_projection(o1, o4)?;
    d.add_projection(o4, o7)?;
    d.add_projection(o2, o5)?;
    d.add_projection(o5, o7)?;
    d.add_projection(o3, o6)?;
    d.add_arrow(o5, o6, ["A2D1sym"])?;
    Ok(d)
}

pub fn section5_p3_limit(a: &SymSeq, b: &SymSeq, x: &Laurent, ctx: &Ctx) -> Result<(SplitDiagram, SplitLimit)> {
    let d = section5_diagram(a, b, x, ctx)?;
    let l = split_limit(&d)?;
    Ok((d, l))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::{rat, SignMode};

    #[test]
    fn anti_part_dies_and_linear_f_degenerates() {
        let c = Ctx::new(SignMode::Unsigned, 6);
        let a = SymSeq::trivial_dims(&[1, 1, 1], true);
        let b = SymSeq::trivial_dims(&[1, 1, 1], true);
        let x = Laurent::constant(rat(2));
        let (_, l) = section5_p3_limit(&a, &b, &x, &c).unwrap();
        assert_eq!(l.copies_of("A2D1anti"), 0);
        assert_eq!(l.copies_of("A2D1sym"), 1);
        let lin = SymSeq::trivial_dims(&[3], true);
        let (_, l) = section5_p3_limit(&lin, &b, &x, &c).unwrap();
        // 3 (W_1 + W_2 + W_3), W_j = dim Sym^j(2) = j + 1
        assert_eq!(l.total.to_laurent(), Laurent::constant(rat(3 * (2 + 3 + 4))));
    }

    #[test]
    fn label_engine_matches_matrices() {
        let c = Ctx::new(SignMode::Signed, 6);
        let a = SymSeq::trivial_dims(&[1, 2, 1], true).with_constant(Laurent::constant(rat(1)));
        let b = SymSeq::trivial_dims(&[2, 1, 1], true);
        let x = Laurent::from_pairs([(0, rat(1)), (1, rat(1))]);
        let (d, l) = section5_p3_limit(&a, &b, &x, &c).unwrap();
        for deg in -1..=9 {
            let lin = crate::holim::linear::derived_limits(&d.to_linear(deg).unwrap(), None).unwrap();
            assert_eq!(lin[0] as u64, l.total.get(deg));
            assert!(lin[1..].iter().all(|&h| h == 0));
        }
    }
}
