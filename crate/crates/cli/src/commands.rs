use std::fmt;

use anyhow::Result;
use hypersphere_core::hypercheck::{
    count1_check, h_function, hermite_bound_check, lemma_table, logsob_check, logsob_rhs,
    perturbative_necessity, scan_cell, RhsKind,
};
use hypersphere_core::norms::{norm_ratio_gaussian, norm_ratio_sphere};
use hypersphere_core::quadrature::subordination_check;
use hypersphere_core::{
    Error as CoreError, ExponentPair, ScanReport, SphereParams, Verdict, ZonalPolynomial,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::args::RhsArg;
use crate::report::{verdict_cells, Cell, Outcome, Report};

/// Invalid arguments detected after parsing.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

fn pair(p: f64, q: f64) -> Result<ExponentPair> {
    ExponentPair::new(p, q).map_err(|e| usage(format!("exponents: {e}")))
}

/// Exponents admissible for witness scans: `1 < p < q` and `q > 2`.
fn scan_pair(p: f64, q: f64) -> Result<ExponentPair> {
    let pair = pair(p, q)?;
    if !(q > p.max(2.0)) {
        return Err(usage(format!(
            "scan requires q > max(2, p), got p={p}, q={q}"
        )));
    }
    Ok(pair)
}

fn check_inconclusive(report: &mut Report, v: &Verdict) {
    if v.is_inconclusive() {
        report.flag(Outcome::Inconclusive);
    }
}

/// Which lemma rows come with an expected status.
fn lemma_expectation(n: u32, k: u64) -> Option<bool> {
    match (n, k) {
        (..=3, _) => Some(true),
        (4, 3) => Some(false),
        _ => None,
    }
}

pub fn lemma(ns: &[u32], k_max: u64) -> Result<Report> {
    if ns.is_empty() {
        return Err(usage("--n needs at least one dimension"));
    }
    let mut report = Report::new(
        "lemma",
        vec![
            "n",
            "k",
            "lhs",
            "rhs",
            "margin",
            "numeric_error",
            "status",
            "equality",
            "h",
            "expected",
        ],
    );
    let tables: Vec<_> = ns
        .par_iter()
        .map(|&n| lemma_table(n, k_max).map(|t| (n, t)))
        .collect::<Result<_, _>>()?;
    for (n, table) in tables {
        for (i, v) in table.iter().enumerate() {
            let k = i as u64 + 1;
            let expected = lemma_expectation(n, k);
            match expected {
                Some(want) if v.holds() != want && !v.is_inconclusive() => {
                    report.flag(Outcome::Unexpected)
                }
                _ => check_inconclusive(&mut report, v),
            }
            let mut row = vec![n.into(), k.into()];
            row.extend(verdict_cells(v));
            row.push(v.is_equality().into());
            row.push(h_function(n, k)?.into());
            row.push(match expected {
                Some(true) => "holds".into(),
                Some(false) => "fails".into(),
                None => "-".into(),
            });
            report.push(row);
        }
    }
    Ok(report)
}

pub const SCAN_COLUMNS: [&str; 9] = [
    "n",
    "d",
    "p",
    "q",
    "lhs_log",
    "rhs_log",
    "margin_log",
    "num_error_log",
    "status",
];

/// Evaluates the grid on the current rayon pool; cells are merged by key.
pub fn scan_grid(
    exponents: ExponentPair,
    ns: (u32, u32),
    ds: (usize, usize),
    tol: f64,
) -> Result<ScanReport> {
    let cells: Vec<(u32, usize)> = (ns.0..=ns.1)
        .flat_map(|n| (ds.0..=ds.1).map(move |d| (n, d)))
        .collect();
    let evaluated = cells
        .par_iter()
        .map(|&(n, d)| scan_cell(n, d, exponents, tol).map(|v| ((n, d), v)))
        .collect::<Result<Vec<_>, CoreError>>()?;
    Ok(ScanReport::from_cells(exponents, evaluated))
}

pub fn scan(p: f64, q: f64, ns: (u32, u32), ds: (usize, usize), tol: f64) -> Result<Report> {
    let exponents = scan_pair(p, q)?;
    if ns.0 < 2 || ns.0 > ns.1 {
        return Err(usage(format!(
            "need 2 <= n-min <= n-max, got {}..{}",
            ns.0, ns.1
        )));
    }
    if ds.0 < 1 || ds.0 > ds.1 {
        return Err(usage(format!(
            "need 1 <= d-min <= d-max, got {}..{}",
            ds.0, ds.1
        )));
    }
    let grid = scan_grid(exponents, ns, ds, tol)?;
    let mut report = Report::new("scan", SCAN_COLUMNS.to_vec());
    for (&(n, d), v) in &grid.grid {
        let mut row = vec![n.into(), d.into(), p.into(), q.into()];
        row.extend(verdict_cells(v));
        report.push(row);
    }
    let key = |c: Option<(u32, usize)>| match c {
        Some((n, d)) => Cell::Text(format!("n={n} d={d}")),
        None => Cell::Text("none".into()),
    };
    report.note("first_failure", key(grid.first_failure));
    report.note(
        "n0_upper_bound (zonal witnesses only)",
        grid.n0_upper_bound
            .map_or(Cell::Text("none".into()), |n| n.into()),
    );
    report.note("failing_cells", grid.failing_cells().len());
    report.note("inconclusive_cells", grid.inconclusive_cells().len());
    if grid.failing_cells().iter().any(|&(n, _)| n <= 3) {
        report.flag(Outcome::Unexpected);
    }
    if grid.all_inconclusive() {
        report.flag(Outcome::Inconclusive);
    }
    Ok(report)
}

const VERDICT_COLUMNS: [&str; 5] = ["lhs", "rhs", "margin", "numeric_error", "status"];

fn with_verdict(prefix: &[&'static str]) -> Vec<&'static str> {
    prefix.iter().copied().chain(VERDICT_COLUMNS).collect()
}

pub fn ratio(n: Option<u32>, d: usize, p: f64, q: f64, tol: f64) -> Result<Report> {
    pair(p, q)?;
    if d == 0 {
        return Err(usage("--d must be at least 1"));
    }
    let (label, v) = match n {
        Some(n) => {
            if n < 2 {
                return Err(usage("--n must be at least 2"));
            }
            (Cell::from(n), count1_check(n, d, p, q, tol)?)
        }
        None => (Cell::from("gaussian"), hermite_bound_check(d, p, q, tol)?),
    };
    let mut report = Report::new("ratio", with_verdict(&["n", "d", "p", "q"]));
    let mut row = vec![label, d.into(), p.into(), q.into()];
    row.extend(verdict_cells(&v));
    report.push(row);
    check_inconclusive(&mut report, &v);
    Ok(report)
}

/// Columns: the sphere ratio (log) as `lhs` against the Gaussian ratio (log)
/// as `rhs`, plus the absolute gap in linear scale.
pub fn limit(d: usize, p: f64, q: f64, ns: &[u32], tol: f64) -> Result<Report> {
    pair(p, q)?;
    if d == 0 {
        return Err(usage("--d must be at least 1"));
    }
    if ns.is_empty() || ns.iter().any(|&n| n < 2) || ns.windows(2).any(|w| w[0] >= w[1]) {
        return Err(usage(
            "--n must be a strictly increasing list of dimensions >= 2",
        ));
    }
    let gauss = norm_ratio_gaussian(d, p, q, tol)?;
    let spheres = ns
        .par_iter()
        .map(|&n| SphereParams::new(n).and_then(|s| norm_ratio_sphere(s, d, p, q, tol)))
        .collect::<Result<Vec<_>, CoreError>>()?;
    let mut report = Report::new(
        "limit",
        with_verdict(&["n", "d", "p", "q"])
            .into_iter()
            .chain(["gap"])
            .collect(),
    );
    let mut last_gap = f64::INFINITY;
    for (&n, s) in ns.iter().zip(&spheres) {
        let v = Verdict::new(s.log_value, gauss.log_value, s.log_error + gauss.log_error);
        let gap = (s.value() - gauss.value()).abs();
        if !(gap < last_gap) {
            report.flag(Outcome::Unexpected);
        }
        last_gap = gap;
        let mut row = vec![n.into(), d.into(), p.into(), q.into()];
        row.extend(verdict_cells(&v));
        row.push(gap.into());
        report.push(row);
    }
    report.note("gaussian_ratio", gauss.value());
    report.note("final_relative_gap", last_gap / gauss.value());
    Ok(report)
}

pub fn logsob(n: u32, coeffs: &[f64], rhs: RhsArg, tol: f64) -> Result<Report> {
    if n < 2 {
        return Err(usage("--n must be at least 2"));
    }
    let g = ZonalPolynomial::new(n, coeffs.to_vec())
        .map_err(|e| usage(format!("coefficients: {e}")))?;
    let kinds: &[(RhsKind, &str)] = match rhs {
        RhsArg::Beckner => &[(RhsKind::Beckner, "beckner")],
        RhsArg::SqrtEigenvalue => &[(RhsKind::SqrtEigenvalue, "sqrt-eigenvalue")],
        RhsArg::Both => &[
            (RhsKind::Beckner, "beckner"),
            (RhsKind::SqrtEigenvalue, "sqrt-eigenvalue"),
        ],
    };
    let mut report = Report::new("logsob", with_verdict(&["n", "degree", "rhs_kind"]));
    for &(kind, name) in kinds {
        let v = match logsob_check(&g, kind, tol) {
            Err(e @ CoreError::Negative { .. }) => {
                return Err(usage(format!("g must be nonnegative: {e}")))
            }
            other => other?,
        };
        // Beckner's inequality holds in every dimension; the square-root
        // bound dominates it only for n <= 3.
        let expected = kind == RhsKind::Beckner || n <= 3;
        if expected && v.fails() {
            report.flag(Outcome::Unexpected);
        }
        check_inconclusive(&mut report, &v);
        let mut row = vec![n.into(), g.degree().into(), name.into()];
        row.extend(verdict_cells(&v));
        report.push(row);
    }
    Ok(report)
}

pub fn subordination(xs: &[f64], tol: f64) -> Result<Report> {
    if let Some(x) = xs.iter().find(|x| !(**x >= 0.0 && x.is_finite())) {
        return Err(usage(format!(
            "--x values must be finite and >= 0, got {x}"
        )));
    }
    let mut report = Report::new(
        "subordination",
        with_verdict(&["x"])
            .into_iter()
            .chain(["deviation"])
            .collect(),
    );
    for &x in xs {
        let v = subordination_check(x, tol)?;
        if v.fails() {
            report.flag(Outcome::Unexpected);
        }
        check_inconclusive(&mut report, &v);
        let mut row = vec![x.into()];
        row.extend(verdict_cells(&v));
        row.push(v.deviation().into());
        report.push(row);
    }
    Ok(report)
}

/// Rows compare `‖e^{-t sqrt(-Δ)} f‖_q - 1` (lhs) with `‖f‖_p - 1` (rhs).
pub fn necessity(n: u32, p: f64, q: f64, t: Option<f64>, eps: &[f64], tol: f64) -> Result<Report> {
    let exponents = pair(p, q)?;
    if n < 2 {
        return Err(usage("--n must be at least 2"));
    }
    let t = t.unwrap_or_else(|| exponents.t_star(n));
    let mut report = Report::new(
        "necessity",
        ["n", "p", "q", "t", "eps"]
            .into_iter()
            .chain(VERDICT_COLUMNS)
            .chain([
                "predicted_lhs",
                "predicted_rhs",
                "lhs_remainder",
                "rhs_remainder",
            ])
            .collect(),
    );
    for &e in eps {
        let r = perturbative_necessity(n, p, q, t, e, tol).map_err(|err| match err {
            CoreError::Negative { .. } => usage(format!("eps={e} makes 1 + eps Y_1 negative")),
            other => other.into(),
        })?;
        let v = Verdict::new(
            r.measured_lhs_excess,
            r.measured_rhs_excess,
            r.lhs_error + r.rhs_error,
        );
        if e != 0.0 {
            check_inconclusive(&mut report, &v);
        }
        let mut row = vec![n.into(), p.into(), q.into(), t.into(), e.into()];
        row.extend(verdict_cells(&v));
        row.extend([
            r.predicted_lhs_excess.into(),
            r.predicted_rhs_excess.into(),
            r.lhs_remainder().into(),
            r.rhs_remainder().into(),
        ]);
        report.push(row);
    }
    Ok(report)
}

pub struct SuiteOutcome {
    pub report: Report,
    pub violations: usize,
    pub ordering_violations: usize,
}

struct SuiteCase {
    trial: u64,
    n: u32,
    g: ZonalPolynomial,
}

/// Random nonnegative zonal functions on S² and S³. Parameters are drawn
/// sequentially from the seed, then evaluated in parallel.
pub fn suite(trials: u64, max_degree: u64, seed: u64, tol: f64) -> Result<SuiteOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cases = Vec::new();
    for trial in 0..trials {
        let n = if trial % 2 == 0 { 2 } else { 3 };
        let degree = rng.gen_range(1..=max_degree) as usize;
        let coeffs: Vec<f64> = (0..=degree).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let slack = rng.gen_range(0.01..1.0);
        let g = ZonalPolynomial::shifted_nonnegative(n, coeffs, slack)?;
        cases.push(SuiteCase { trial, n, g });
    }
    let evaluated = cases
        .par_iter()
        .map(|c| -> Result<_, CoreError> {
            let b = logsob_check(&c.g, RhsKind::Beckner, tol)?;
            let s = logsob_check(&c.g, RhsKind::SqrtEigenvalue, tol)?;
            let ordered = logsob_rhs(&c.g, RhsKind::SqrtEigenvalue)?
                >= logsob_rhs(&c.g, RhsKind::Beckner)? * (1.0 - 1e-14);
            Ok((b, s, ordered))
        })
        .collect::<Result<Vec<_>, CoreError>>()?;
    let mut report = Report::new("suite", with_verdict(&["trial", "n", "degree", "rhs_kind"]));
    let (mut violations, mut ordering_violations) = (0, 0);
    for (c, (b, s, ordered)) in cases.iter().zip(&evaluated) {
        for (v, name) in [(b, "beckner"), (s, "sqrt-eigenvalue")] {
            if v.fails() {
                violations += 1;
            }
            check_inconclusive(&mut report, v);
            let mut row = vec![c.trial.into(), c.n.into(), c.g.degree().into(), name.into()];
            row.extend(verdict_cells(v));
            report.push(row);
        }
        if !ordered {
            ordering_violations += 1;
        }
    }
    report.note("violations", violations);
    report.note("ordering_violations", ordering_violations);
    if violations + ordering_violations > 0 {
        report.flag(Outcome::Unexpected);
    }
    Ok(SuiteOutcome {
        report,
        violations,
        ordering_violations,
    })
}
