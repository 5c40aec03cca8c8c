use super::{ExponentPair, Verdict, ZonalPolynomial};
use crate::norms::{log_integral, norm_ratio_sphere, SphereParams};
use crate::specfun::{gegenbauer_log_abs, gegenbauer_roots, log_beta, GegenbauerSpec};
use crate::{Error, Result};
use alloc::vec::Vec;
use core::f64::consts::PI;

/// Rounding allowance for closed-form log-scale comparisons.
fn rounding(lhs: f64, rhs: f64) -> f64 {
    let scale = [lhs, rhs]
        .iter()
        .filter(|x| x.is_finite())
        .fold(1.0_f64, |m, x| m.max(libm::fabs(*x)));
    8.0 * f64::EPSILON * scale
}

/// `sqrt(d(d+n-1))`, the eigenvalue of `sqrt(-Δ)` on degree-`d` harmonics.
pub fn eigenvalue_sqrt_laplacian(n: u32, d: usize) -> f64 {
    let d = d as f64;
    libm::sqrt(d * (d + f64::from(n) - 1.0))
}

pub fn poisson_semigroup_apply(g: &ZonalPolynomial, t: f64) -> Result<ZonalPolynomial> {
    if !(t >= 0.0) {
        return Err(Error::invalid("t", t));
    }
    Ok(g.poisson_apply(t))
}

fn check_exponents(p: f64, q: f64, t: f64) -> Result<()> {
    if !(p >= 1.0) || !(q >= p) || !q.is_finite() {
        return Err(Error::Domain("requires 1 <= p <= q < inf"));
    }
    if !(t >= 0.0) {
        return Err(Error::invalid("t", t));
    }
    Ok(())
}

/// `½ ln((p-1)/(q-1))`, with the conventions `p = q ↦ 0` and `p = 1 < q ↦ -inf`.
fn half_log_exponent_ratio(p: f64, q: f64) -> f64 {
    if p == q {
        0.0
    } else {
        0.5 * (libm::log(p - 1.0) - libm::log(q - 1.0))
    }
}

/// Heat-semigroup hypercontractivity condition `e^{-tn} ≤ sqrt((p-1)/(q-1))`,
/// compared in log scale.
pub fn heat_condition(n: u32, p: f64, q: f64, t: f64) -> Result<Verdict> {
    check_exponents(p, q, t)?;
    let lhs = -t * f64::from(n);
    let rhs = half_log_exponent_ratio(p, q);
    Ok(Verdict::new(lhs, rhs, rounding(lhs, rhs)))
}

/// Condition (ii) for the Poisson semigroup: `e^{-t sqrt(n)} ≤ sqrt((p-1)/(q-1))`.
pub fn poisson_condition_ii(n: u32, p: f64, q: f64, t: f64) -> Result<Verdict> {
    check_exponents(p, q, t)?;
    let lhs = -t * libm::sqrt(f64::from(n));
    let rhs = half_log_exponent_ratio(p, q);
    Ok(Verdict::new(lhs, rhs, rounding(lhs, rhs)))
}

/// Hypercontractivity at the critical time tested on the zonal witness
/// `f = Y_d`:
///
/// `‖Y_d‖_q / ‖Y_d‖_p ≤ ((q-1)/(p-1))^{½ sqrt(d(d+n-1)/n)}`.
///
/// Both sides are logs.
pub fn count1_check(n: u32, d: usize, p: f64, q: f64, tol: f64) -> Result<Verdict> {
    let pair = ExponentPair::new(p, q)?;
    if d == 0 {
        return Err(Error::Domain("count1 check needs d >= 1"));
    }
    let rhs = 0.5 * eigenvalue_sqrt_laplacian(n, d) / libm::sqrt(f64::from(n)) * pair.log_ratio();
    if p == q {
        return Ok(Verdict::exact(0.0, 0.0, core::cmp::Ordering::Equal));
    }
    let ratio = norm_ratio_sphere(SphereParams::new(n)?, d, p, q, tol)?;
    let lhs = ratio.log_value;
    Ok(Verdict::new(lhs, rhs, ratio.log_error + rounding(lhs, rhs)))
}

/// The `(p, q) = (2, 4)` witness inequality written as
///
/// `∫_{-1}^{1} |C_d^((n-1)/2)(t)|⁴ (1-t²)^{(n-2)/2} dt
///     ≤ 9^{sqrt(d(d+n-1)/n)} (n-1)² B(1/2, n/2) / (d² (2d+n-1)² B²(n-1, d))`.
///
/// The left side is integrated directly; the right side uses the closed-form
/// `L²` norm. Both sides are logs.
pub fn utol1_check(n: u32, d: usize, tol: f64) -> Result<Verdict> {
    if n < 2 || d == 0 {
        return Err(Error::Domain("utol1 check needs n >= 2 and d >= 1"));
    }
    let spec = GegenbauerSpec::for_sphere(n, d)?;
    let breaks: Vec<f64> = gegenbauer_roots(spec)
        .iter()
        .map(|&t| libm::acos(t))
        .collect();
    let power = f64::from(n - 1);
    let integral = log_integral(
        |theta| {
            4.0 * gegenbauer_log_abs(spec, libm::cos(theta)) + power * libm::log(libm::sin(theta))
        },
        &breaks,
        (0.0, PI),
        tol,
    )?;
    let nf = f64::from(n);
    let df = d as f64;
    let rhs = libm::sqrt(df * (df + nf - 1.0) / nf) * libm::log(9.0)
        + 2.0 * libm::log(nf - 1.0)
        + log_beta(0.5, nf / 2.0)?
        - 2.0 * libm::log(df)
        - 2.0 * libm::log(2.0 * df + nf - 1.0)
        - 2.0 * log_beta(nf - 1.0, df)?;
    let lhs = integral.log_value;
    let numeric_error = integral.relative_error + 8.0 * rounding(lhs, rhs) * (1.0 + 0.5 * df);
    Ok(Verdict::new(lhs, rhs, numeric_error))
}

/// Smallest `t ≥ 0` with `‖Y_d‖_q / ‖Y_d‖_p ≤ e^{t sqrt(d(d+n-1))}`, located by
/// bisection on the monotone map `t ↦ t·sqrt(d(d+n-1)) - ln ratio`.
pub fn witness_threshold_time(n: u32, d: usize, p: f64, q: f64, tol: f64) -> Result<f64> {
    ExponentPair::new(p, q)?;
    if d == 0 {
        return Err(Error::Domain("threshold needs d >= 1"));
    }
    let ratio = norm_ratio_sphere(SphereParams::new(n)?, d, p, q, tol)?.log_value;
    let eig = eigenvalue_sqrt_laplacian(n, d);
    let gap = |t: f64| t * eig - ratio;
    if gap(0.0) >= 0.0 {
        return Ok(0.0);
    }
    let mut hi = 1.0;
    while gap(hi) < 0.0 {
        hi *= 2.0;
    }
    let mut lo = 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if gap(mid) >= 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}
