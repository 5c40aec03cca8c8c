//! Inequalities, constants and limits around hypercontractivity of the
//! Poisson semigroup on `S^n`.
//!
//! Every check returns a [`Verdict`]. Comparisons of norms and exponential
//! right-hand sides are done in log scale; `numeric_error` carries the
//! propagated quadrature error so a tiny margin is never over-read.

mod conditions;
mod gaussian;
mod lemma;
mod logsob;
mod necessity;
mod scan;
mod verdict;
mod zonal;

pub use conditions::{
    count1_check, eigenvalue_sqrt_laplacian, heat_condition, poisson_condition_ii,
    poisson_semigroup_apply, utol1_check, witness_threshold_time,
};
pub use gaussian::{hermite_bound_check, hermite_growth_limit, hermite_growth_rate};
pub use lemma::{beckner_constant, h_function, lemma_check, lemma_table};
pub use logsob::{entropy_functional, logsob_check, logsob_rhs, Entropy, RhsKind};
pub use necessity::{perturbative_necessity, PerturbativeReport};
pub use scan::{counterexample_scan, scan_cell, ScanReport};
pub use verdict::{Status, Verdict};
pub use zonal::ZonalPolynomial;

use crate::{Error, Result};

/// Exponents `1 < p ≤ q`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExponentPair {
    p: f64,
    q: f64,
}

impl ExponentPair {
    pub fn new(p: f64, q: f64) -> Result<Self> {
        if !(p > 1.0) || !p.is_finite() {
            return Err(Error::invalid("p", p));
        }
        if !(q >= p) || !q.is_finite() {
            return Err(Error::invalid("q", q));
        }
        Ok(ExponentPair { p, q })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    /// `ln((q - 1) / (p - 1))`.
    pub fn log_ratio(&self) -> f64 {
        if self.p == self.q {
            0.0
        } else {
            libm::log(self.q - 1.0) - libm::log(self.p - 1.0)
        }
    }

    /// The `t` solving `e^{-2t sqrt(n)} = (p - 1) / (q - 1)`.
    pub fn t_star(&self, n: u32) -> f64 {
        self.log_ratio() / (2.0 * libm::sqrt(f64::from(n)))
    }
}
