//! One-shot run of the headline checks with a pass/fail summary.

use anyhow::Result;
use hypersphere_core::hypercheck::{
    count1_check, hermite_bound_check, hermite_growth_limit, hermite_growth_rate, lemma_check,
    lemma_table, perturbative_necessity, utol1_check,
};
use hypersphere_core::norms::{
    norm_ratio_gaussian, norm_ratio_sphere, sphere_l2_norm_closed, sphere_lp_norm,
};
use hypersphere_core::quadrature::subordination_check;
use hypersphere_core::{ExponentPair, SphereParams};
use rayon::prelude::*;

use crate::commands::{scan_grid, suite};
use crate::report::{Outcome, Report};

struct Check {
    name: &'static str,
    pass: bool,
    detail: String,
}

fn lemma_part() -> Result<Check> {
    let mut holds = true;
    let mut equality = true;
    for n in [2, 3] {
        let table = lemma_table(n, 10_000)?;
        holds &= table.iter().all(|v| v.holds());
        equality &= table[0].is_equality();
    }
    let n4 = lemma_check(4, 3)?;
    Ok(Check {
        name: "lemma",
        pass: holds && equality && n4.fails(),
        detail: format!(
            "n=2,3 k<=10000 all hold: {holds}; k=1 equality: {equality}; (4,3): {}",
            n4.status
        ),
    })
}

fn counterexample(tol: f64) -> Result<Check> {
    let direct = utol1_check(13, 7, tol)?;
    let ratio = count1_check(13, 7, 2.0, 4.0, tol)?;
    let strong =
        |v: &hypersphere_core::Verdict| v.fails() && v.margin.abs() > 10.0 * v.numeric_error;
    Ok(Check {
        name: "counterexample",
        pass: strong(&direct) && strong(&ratio),
        detail: format!(
            "(n,d)=(13,7): direct margin {:.6e} (err {:.1e}), ratio margin {:.6e} (err {:.1e})",
            direct.margin, direct.numeric_error, ratio.margin, ratio.numeric_error
        ),
    })
}

fn frontier(tol: f64) -> Result<Check> {
    let report = scan_grid(ExponentPair::new(2.0, 4.0)?, (2, 13), (1, 10), tol)?;
    let first = report.first_failure;
    Ok(Check {
        name: "scan",
        pass: first.is_some_and(|c| c <= (13, 7)) && report.inconclusive_cells().is_empty(),
        detail: format!(
            "(p,q)=(2,4), n<=13, d<=10: first failure {first:?}, n0 upper bound {:?}",
            report.n0_upper_bound
        ),
    })
}

fn low_dimensions(tol: f64) -> Result<Check> {
    let mut failures = 0;
    let mut undecided = 0;
    for (p, q) in [(2.0, 4.0), (1.5, 3.0), (3.0, 6.0)] {
        let report = scan_grid(ExponentPair::new(p, q)?, (2, 3), (1, 30), tol)?;
        failures += report.failing_cells().len();
        undecided += report.inconclusive_cells().len();
    }
    Ok(Check {
        name: "low-dimensions",
        pass: failures == 0 && undecided == 0,
        detail: format!(
            "n in 2..=3, d<=30, three exponent pairs: {failures} failing, {undecided} inconclusive"
        ),
    })
}

fn closed_form(tol: f64) -> Result<Check> {
    let cells: Vec<(u32, usize)> = (2..=50)
        .flat_map(|n| (1..=30).map(move |d| (n, d)))
        .collect();
    let worst = cells
        .par_iter()
        .map(|&(n, d)| -> Result<f64> {
            let params = SphereParams::new(n)?;
            let numeric = sphere_lp_norm(params, d, 2.0, tol)?;
            let closed = sphere_l2_norm_closed(params, d)?;
            Ok((numeric.log_value() - closed.log_value()).exp_m1().abs())
        })
        .collect::<Result<Vec<f64>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    Ok(Check {
        name: "closed-form",
        pass: worst <= 1e-10,
        detail: format!("worst relative L2 deviation {worst:.2e} over n<=50, d<=30"),
    })
}

fn gaussian_limit(tol: f64) -> Result<Check> {
    let mut monotone = true;
    let mut finals = Vec::new();
    for d in 1..=6 {
        let gauss = norm_ratio_gaussian(d, 2.0, 4.0, tol)?.value();
        let mut last = f64::INFINITY;
        for n in [10, 100, 1000] {
            let gap =
                (norm_ratio_sphere(SphereParams::new(n)?, d, 2.0, 4.0, tol)?.value() - gauss).abs();
            monotone &= gap < last;
            last = gap;
        }
        finals.push(format!("{:.2}%", 100.0 * last / gauss));
    }
    Ok(Check {
        name: "gaussian-limit",
        pass: monotone,
        detail: format!(
            "gaps decrease over n=10,100,1000: {monotone}; relative gap at n=1000 for d=1..6: {}",
            finals.join(", ")
        ),
    })
}

fn growth(tol: f64) -> Result<Check> {
    let target = hermite_growth_limit(2.0, 4.0)?;
    let r20 = hermite_growth_rate(20, 2.0, 4.0, tol)?;
    let r40 = hermite_growth_rate(40, 2.0, 4.0, tol)?;
    Ok(Check {
        name: "growth-rate",
        pass: (r40 - target).abs() < (r20 - target).abs() && (r40 - target).abs() <= 0.05 * target,
        detail: format!("d=20: {r20:.6}, d=40: {r40:.6}, limit {target:.6}"),
    })
}

fn hermite_flip(tol: f64) -> Result<Check> {
    let d1 = hermite_bound_check(1, 2.0, 4.0, tol)?;
    let mut flip = None;
    for d in 1..=200 {
        if hermite_bound_check(d, 2.0, 4.0, tol)?.fails() {
            flip = Some(d);
            break;
        }
    }
    Ok(Check {
        name: "gaussian-bound",
        pass: d1.holds() && flip.is_some(),
        detail: format!("d=1 {}, first failing degree {flip:?}", d1.status),
    })
}

fn subordination(tol: f64) -> Result<Check> {
    let mut pass = true;
    let mut worst: f64 = 0.0;
    for x in [0.0, 1.0, 5.0] {
        let v = subordination_check(x, tol)?;
        pass &= v.holds();
        worst = worst.max(v.deviation());
    }
    Ok(Check {
        name: "subordination",
        pass,
        detail: format!("x=0,1,5: worst deviation {worst:.2e}"),
    })
}

/// The second-order expansion claims an `O(ε³)` remainder; decay at least that
/// fast passes.
fn necessity(tol: f64) -> Result<Check> {
    let t = ExponentPair::new(2.0, 4.0)?.t_star(2);
    let eps = [1e-2, 1e-3, 1e-4];
    let mut rem = Vec::new();
    for e in eps {
        let r = perturbative_necessity(2, 2.0, 4.0, t, e, tol)?;
        rem.push((r.lhs_remainder().abs(), r.rhs_remainder().abs()));
    }
    let slope = |a: f64, b: f64| (a / b).log10() / 2.0;
    let lhs = slope(rem[0].0, rem[2].0);
    let rhs = slope(rem[0].1, rem[2].1);
    Ok(Check {
        name: "necessity",
        pass: lhs >= 2.7 && rhs >= 2.7,
        detail: format!("remainder log-log slopes over eps=1e-2..1e-4: lhs {lhs:.3}, rhs {rhs:.3}"),
    })
}

fn random_suite(seed: u64, tol: f64) -> Result<Check> {
    let out = suite(1000, 8, seed, tol)?;
    Ok(Check {
        name: "log-sobolev",
        pass: out.violations == 0 && out.ordering_violations == 0,
        detail: format!(
            "1000 random functions on S^2/S^3 (seed {seed}): {} violations, {} ordering violations",
            out.violations, out.ordering_violations
        ),
    })
}

pub fn repro(seed: u64, tol: f64) -> Result<Report> {
    let checks = [
        lemma_part()?,
        counterexample(tol)?,
        frontier(tol)?,
        low_dimensions(tol)?,
        closed_form(tol)?,
        gaussian_limit(tol)?,
        growth(tol)?,
        hermite_flip(tol)?,
        subordination(tol)?,
        necessity(tol)?,
        random_suite(seed, tol)?,
    ];
    let mut report = Report::new("repro", vec!["check", "result", "detail"]);
    let mut passed = 0;
    for c in &checks {
        if c.pass {
            passed += 1;
        } else {
            report.flag(Outcome::Unexpected);
        }
        report.push(vec![
            c.name.into(),
            if c.pass { "pass" } else { "fail" }.into(),
            c.detail.clone().into(),
        ]);
    }
    report.note(
        "summary",
        format!("{passed}/{} checks passed", checks.len()),
    );
    Ok(report)
}
