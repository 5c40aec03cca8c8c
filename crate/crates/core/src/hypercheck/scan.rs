use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::ops::RangeInclusive;

use super::{count1_check, ExponentPair, Verdict};
use crate::{Error, Result};

/// Smallest tolerance a retry may ask for.
const MIN_RETRY_TOL: f64 = 1e-15;

/// Verdicts of the zonal witness check over an `(n, d)` grid.
///
/// Only zonal witnesses `Y_d` are tried, so [`ScanReport::n0_upper_bound`]
/// bounds the true threshold dimension from above and says nothing about
/// whether it is sharp.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanReport {
    pub exponents: ExponentPair,
    pub grid: BTreeMap<(u32, usize), Verdict>,
    /// Lexicographically smallest failing `(n, d)`.
    pub first_failure: Option<(u32, usize)>,
    /// Smallest scanned `n` with a failing degree.
    pub n0_upper_bound: Option<u32>,
}

impl ScanReport {
    /// Assembles a report from evaluated cells in any order.
    pub fn from_cells<I>(exponents: ExponentPair, cells: I) -> Self
    where
        I: IntoIterator<Item = ((u32, usize), Verdict)>,
    {
        let grid: BTreeMap<(u32, usize), Verdict> = cells.into_iter().collect();
        let first_failure = grid.iter().find(|(_, v)| v.fails()).map(|(&key, _)| key);
        ScanReport {
            exponents,
            first_failure,
            n0_upper_bound: first_failure.map(|(n, _)| n),
            grid,
        }
    }

    pub fn inconclusive_cells(&self) -> Vec<(u32, usize)> {
        self.grid
            .iter()
            .filter(|(_, v)| v.is_inconclusive())
            .map(|(&k, _)| k)
            .collect()
    }

    pub fn failing_cells(&self) -> Vec<(u32, usize)> {
        self.grid
            .iter()
            .filter(|(_, v)| v.fails())
            .map(|(&k, _)| k)
            .collect()
    }

    /// Whether some scanned degree fails in dimension `n`.
    pub fn dimension_fails(&self, n: u32) -> bool {
        self.grid
            .range((n, 0)..=(n, usize::MAX))
            .any(|(_, v)| v.fails())
    }

    pub fn all_inconclusive(&self) -> bool {
        !self.grid.is_empty() && self.grid.values().all(Verdict::is_inconclusive)
    }
}

/// One grid cell; an inconclusive result is re-run once at `tol / 100`.
pub fn scan_cell(n: u32, d: usize, exponents: ExponentPair, tol: f64) -> Result<Verdict> {
    let v = count1_check(n, d, exponents.p(), exponents.q(), tol)?;
    if !v.is_inconclusive() {
        return Ok(v);
    }
    count1_check(
        n,
        d,
        exponents.p(),
        exponents.q(),
        (tol / 100.0).max(MIN_RETRY_TOL),
    )
}

/// Validates the exponent pair for a counterexample scan: `q > max(2, p)`.
pub(crate) fn scan_exponents(p: f64, q: f64) -> Result<ExponentPair> {
    let pair = ExponentPair::new(p, q)?;
    if !(q > p.max(2.0)) {
        return Err(Error::Domain("counterexample scan needs q > max(2, p)"));
    }
    Ok(pair)
}

/// Sequential scan of `count1_check` over `n_range × d_range`.
pub fn counterexample_scan(
    p: f64,
    q: f64,
    n_range: RangeInclusive<u32>,
    d_range: RangeInclusive<usize>,
    tol: f64,
) -> Result<ScanReport> {
    let pair = scan_exponents(p, q)?;
    if *n_range.start() < 2 {
        return Err(Error::Domain("scan dimensions must satisfy n >= 2"));
    }
    if *d_range.start() < 1 && !d_range.is_empty() {
        return Err(Error::Domain("scan degrees must satisfy d >= 1"));
    }
    let mut cells = Vec::new();
    for n in n_range {
        for d in d_range.clone() {
            cells.push(((n, d), scan_cell(n, d, pair, tol)?));
        }
    }
    Ok(ScanReport::from_cells(pair, cells))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_degree_range() {
        #[allow(clippy::reversed_empty_ranges)]
        let report = counterexample_scan(2.0, 4.0, 2..=5, 3..=2, 1e-12).unwrap();
        assert!(report.grid.is_empty());
        assert_eq!(report.first_failure, None);
        assert!(!report.all_inconclusive());
    }

    #[test]
    fn rejects_bad_exponents() {
        assert!(counterexample_scan(2.0, 2.0, 2..=3, 1..=2, 1e-12).is_err());
        assert!(counterexample_scan(3.0, 2.5, 2..=3, 1..=2, 1e-12).is_err());
        assert!(counterexample_scan(2.0, 4.0, 1..=3, 1..=2, 1e-12).is_err());
    }

    #[test]
    fn report_ordering_is_lexicographic() {
        let pair = ExponentPair::new(2.0, 4.0).unwrap();
        let f = Verdict::new(1.0, 0.0, 0.0);
        let h = Verdict::new(0.0, 1.0, 0.0);
        let report = ScanReport::from_cells(
            pair,
            [((14, 3), f), ((13, 9), f), ((13, 2), h), ((2, 1), h)],
        );
        assert_eq!(report.first_failure, Some((13, 9)));
        assert_eq!(report.n0_upper_bound, Some(13));
        assert!(report.dimension_fails(14) && !report.dimension_fails(2));
        assert_eq!(report.failing_cells(), [(13, 9), (14, 3)]);
    }
}
