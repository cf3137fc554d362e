//! One line per acceptance criterion. Runs the default battery in both sign
//! modes; a criterion passes when every instance agrees in both, the minimum
//! instance count is met and each mode stays inside the time limit.

use std::process::ExitCode;

use gchain::holim::realize::Realization;
use gchain::holim::t_n_oracle;
use gchain::symseq::Cell;
use gchain::verify::{check_table, run_battery, Report, RunConfig};
use gchain::{GradedDim, SignMode};

/// Minimum instance count per criterion.
fn minimum(criterion: u32) -> usize {
    match criterion {
        1 => 100,
        2 => 25,
        3 | 9 => 50,
        5 => 25,
        11 => 10,
        _ => 1,
    }
}

/// An (n+1)-homogeneous functor at a line: the tower limit must be zero.
fn vanishing_limit_case() -> bool {
    [(1, 2), (2, 3)].iter().all(|&(n, k)| {
        let cell = Cell {
            n: k,
            composition: vec![k],
            signed: false,
            degree: 0,
            multiplicity: 1,
        };
        let f = Realization::new(vec![cell], GradedDim::zero()).unwrap();
        match t_n_oracle(&f, &GradedDim::concentrated(0, 1), n, None, 1, 2000) {
            Ok(r) => r.passed && r.target.is_zero(),
            Err(_) => false,
        }
    })
}

fn main() -> ExitCode {
    let reports: Vec<Report> = [SignMode::Unsigned, SignMode::Signed]
        .into_iter()
        .map(|sign| {
            run_battery(&RunConfig {
                sign,
                ..RunConfig::default()
            })
            .expect("battery runs")
        })
        .collect();
    let mut all = true;
    for (criterion, name, anchor) in check_table() {
        let recs: Vec<_> = reports
            .iter()
            .map(|r| r.check(name).expect("every check ran"))
            .collect();
        let instances = recs.iter().map(|c| c.instances).min().unwrap_or(0);
        let failed: usize = recs.iter().map(|c| c.failed).sum();
        let slowest = recs.iter().map(|c| c.wall).max().unwrap_or_default();
        let mut ok = failed == 0 && instances >= minimum(criterion) && recs.iter().all(|c| c.within_limit());
        if criterion == 11 {
            ok &= vanishing_limit_case();
        }
        all &= ok;
        println!(
            "criterion {criterion:2} {}  {name}: {instances} instances per mode, {failed} failures, {:.2}s  ({anchor})",
            if ok { "PASS" } else { "FAIL" },
            slowest.as_secs_f64()
        );
        for c in &recs {
            for f in &c.failures {
                println!("    {}  [{}]", f.detail, f.reproduce);
            }
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
