//! Numerics for hypercontractivity of the Poisson semigroup `e^{-t sqrt(-Δ)}`
//! on the unit sphere `S^n`.
//!
//! The crate is `no_std` (it needs `alloc`) and is organised bottom-up:
//!
//! * [`specfun`]: Gegenbauer and probabilistic Hermite polynomials, their
//!   roots, and log-Gamma / log-Beta helpers.
//! * [`quadrature`]: Gauss rules and piecewise adaptive integration for
//!   integrands with kinks at known points.
//! * [`norms`]: `L^p` norms of zonal harmonics on `S^n` and of Hermite
//!   polynomials under the Gaussian measure.
//! * [`hypercheck`]: every inequality of the theory as a [`Verdict`],
//!   plus the `(n, d)` counterexample scanner.
//!
//! All functions are pure; nothing here holds shared mutable state.

#![no_std]
#![forbid(unsafe_code)]
// `!(x > y)` is used on purpose so that NaN is rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;
#[cfg(test)]
extern crate std;

mod error;
pub mod hypercheck;
pub mod norms;
pub mod quadrature;
pub mod specfun;

pub use error::{Error, Result};
pub use hypercheck::{ExponentPair, ScanReport, Status, Verdict, ZonalPolynomial};
pub use norms::{NormValue, SphereParams};
pub use quadrature::{IntegralResult, QuadratureRule};
pub use specfun::{GegenbauerSpec, HermiteSpec, RootList};

/// Default relative tolerance for all quadrature-backed checks.
pub const DEFAULT_TOL: f64 = 1e-12;
