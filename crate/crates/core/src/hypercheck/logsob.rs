use core::cell::Cell;
use core::f64::consts::PI;

use super::{beckner_constant, eigenvalue_sqrt_laplacian, Verdict, ZonalPolynomial};
use crate::quadrature::PiecewiseIntegrator;
use crate::specfun::log_c_lambda;
use crate::{Error, Result};

/// Which coefficient sequence bounds the entropy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RhsKind {
    /// `Δ_n(k) = 2n Σ_{m<k} 1/(2m+n)`.
    Beckner,
    /// `2 sqrt(k(k+n-1)/n)`.
    SqrtEigenvalue,
}

impl RhsKind {
    pub fn coefficient(&self, n: u32, k: usize) -> Result<f64> {
        match self {
            RhsKind::Beckner => beckner_constant(n, k as u64),
            RhsKind::SqrtEigenvalue => {
                Ok(2.0 * eigenvalue_sqrt_laplacian(n, k) / libm::sqrt(f64::from(n)))
            }
        }
    }
}

/// `∫ g² ln g² dσ - (∫ g² dσ) ln(∫ g² dσ)` with an absolute error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Entropy {
    pub value: f64,
    pub error: f64,
}

/// Entropy of `g²` for a nonnegative zonal `g` with `n ≥ 2`.
///
/// Every point where the integrand is evaluated is also checked for
/// negativity of `g`, and a negative value beyond rounding is an error.
pub fn entropy_functional(g: &ZonalPolynomial, tol: f64) -> Result<Entropy> {
    let n = g.n();
    if n < 2 {
        return Err(Error::Domain("entropy quadrature requires n >= 2"));
    }
    let endpoint_check = |t: f64| -> Result<()> {
        let v = g.eval(t);
        if v < -rounding_floor(g, t) {
            return Err(Error::Negative { at: t, value: v });
        }
        Ok(())
    };
    endpoint_check(1.0)?;
    endpoint_check(-1.0)?;
    if g.is_constant() {
        return Ok(Entropy {
            value: 0.0,
            error: 0.0,
        });
    }

    let lambda = f64::from(n - 1) / 2.0;
    let c = libm::exp(log_c_lambda(lambda)?);
    let power = f64::from(n - 1);
    let worst = Cell::new((f64::INFINITY, 0.0));
    let profile = |theta: f64| {
        let t = libm::cos(theta);
        let v = g.eval(t);
        let floor = rounding_floor(g, t);
        if v < -floor && v < worst.get().0 {
            worst.set((v, t));
        }
        (v.max(0.0), c * libm::pow(libm::sin(theta), power))
    };
    let integrator = PiecewiseIntegrator::new();
    let mass = integrator.integrate(
        |theta| {
            let (v, w) = profile(theta);
            v * v * w
        },
        &[],
        (0.0, PI),
        tol,
    )?;
    let entropy_part = integrator.integrate(
        |theta| {
            let (v, w) = profile(theta);
            let v2 = v * v;
            if v2 == 0.0 {
                0.0
            } else {
                v2 * libm::log(v2) * w
            }
        },
        &[],
        (0.0, PI),
        tol,
    )?;
    let (min, at) = worst.get();
    if min.is_finite() {
        return Err(Error::Negative { at, value: min });
    }
    let log_mass = libm::log(mass.value);
    let value = entropy_part.value - mass.value * log_mass;
    let mut error = entropy_part.error_estimate
        + libm::fabs(1.0 + log_mass) * mass.error_estimate
        + 8.0 * f64::EPSILON * (libm::fabs(entropy_part.value) + libm::fabs(mass.value * log_mass));
    if !(mass.converged && entropy_part.converged) {
        error = f64::INFINITY;
    }
    Ok(Entropy { value, error })
}

fn rounding_floor(g: &ZonalPolynomial, t: f64) -> f64 {
    1e-12 * g.abs_scale(t).max(f64::MIN_POSITIVE)
}

/// `Σ_k c_k(n) ‖H_k‖_2²` with `H_k = a_k Y_k`.
pub fn logsob_rhs(g: &ZonalPolynomial, kind: RhsKind) -> Result<f64> {
    let parts = g.component_l2_sq()?;
    let mut total = 0.0;
    for (k, part) in parts.iter().enumerate().skip(1) {
        total += kind.coefficient(g.n(), k)? * part;
    }
    Ok(total)
}

/// `q = 2` log-Sobolev inequality for `g` with the chosen right-hand side.
pub fn logsob_check(g: &ZonalPolynomial, kind: RhsKind, tol: f64) -> Result<Verdict> {
    let entropy = entropy_functional(g, tol)?;
    if g.is_constant() {
        return Ok(Verdict::exact(0.0, 0.0, core::cmp::Ordering::Equal));
    }
    let rhs = logsob_rhs(g, kind)?;
    let numeric_error = entropy.error + 8.0 * f64::EPSILON * (g.degree() as f64) * rhs;
    Ok(Verdict::new(entropy.value, rhs, numeric_error))
}
