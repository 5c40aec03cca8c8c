//! Special functions: Gegenbauer `C_d^(λ)` and probabilistic Hermite `h_d`
//! polynomials, their roots, and Gamma/Beta helpers.
//!
//! Polynomials are always evaluated by their three-term recurrences; the
//! expanded coefficient form overflows and cancels badly beyond degree ~15.

mod gamma;
mod poly;
mod roots;
pub(crate) mod tridiag;

pub use gamma::{c_lambda, log_beta, log_c_lambda, log_gamma};
pub use poly::{
    gegenbauer_derivative, gegenbauer_eval, gegenbauer_eval_scaled, gegenbauer_log_abs,
    hermite_eval, hermite_eval_normalized,
};
pub use roots::{gegenbauer_roots, hermite_roots, RootDomain, RootList};

use crate::{Error, Result};

/// Identifies the Gegenbauer polynomial `C_d^(λ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GegenbauerSpec {
    lambda: f64,
    degree: usize,
}

impl GegenbauerSpec {
    pub fn new(lambda: f64, degree: usize) -> Result<Self> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::invalid("lambda", lambda));
        }
        Ok(GegenbauerSpec { lambda, degree })
    }

    /// The zonal harmonic of degree `degree` on `S^n` uses `λ = (n - 1) / 2`.
    pub fn for_sphere(n: u32, degree: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Domain("Gegenbauer index vanishes for n < 2"));
        }
        Self::new(f64::from(n - 1) / 2.0, degree)
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn degree(&self) -> usize {
        self.degree
    }
}

/// Identifies the probabilistic Hermite polynomial `h_d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HermiteSpec {
    pub degree: usize,
}

impl HermiteSpec {
    pub fn new(degree: usize) -> Self {
        HermiteSpec { degree }
    }
}

/// Compensated (Kahan-Babuska) summation.
#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct KahanSum {
    sum: f64,
    compensation: f64,
}

impl KahanSum {
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if libm::fabs(self.sum) >= libm::fabs(x) {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

impl core::iter::FromIterator<f64> for KahanSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = KahanSum::default();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}
