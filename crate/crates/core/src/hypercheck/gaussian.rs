use super::{ExponentPair, Verdict};
use crate::norms::norm_ratio_gaussian;
use crate::{Error, Result};

/// `‖h_d‖_q / ‖h_d‖_p ≤ ((q-1)/(p-1))^{sqrt(d)/2}`, the Gaussian shadow of the
/// witness inequality as `n → ∞`. Both sides are logs.
pub fn hermite_bound_check(d: usize, p: f64, q: f64, tol: f64) -> Result<Verdict> {
    let pair = ExponentPair::new(p, q)?;
    if d == 0 {
        return Err(Error::Domain("Hermite bound needs d >= 1"));
    }
    if p == q {
        return Ok(Verdict::exact(0.0, 0.0, core::cmp::Ordering::Equal));
    }
    let ratio = norm_ratio_gaussian(d, p, q, tol)?;
    let rhs = 0.5 * libm::sqrt(d as f64) * pair.log_ratio();
    let lhs = ratio.log_value;
    let rounding = 8.0 * f64::EPSILON * libm::fabs(lhs).max(libm::fabs(rhs)).max(1.0);
    Ok(Verdict::new(lhs, rhs, ratio.log_error + rounding))
}

/// `(‖h_d‖_q / ‖h_d‖_p)^{1/d}`.
pub fn hermite_growth_rate(d: usize, p: f64, q: f64, tol: f64) -> Result<f64> {
    ExponentPair::new(p, q)?;
    if d == 0 {
        return Err(Error::Domain("growth rate needs d >= 1"));
    }
    if !(q > p.max(2.0)) {
        return Err(Error::Domain("growth rate needs q > max(p, 2)"));
    }
    let ratio = norm_ratio_gaussian(d, p, q, tol)?;
    Ok(libm::exp(ratio.log_value / d as f64))
}

/// `sqrt((q-1)/(max(p,2)-1))`, the large-degree limit of
/// [`hermite_growth_rate`].
pub fn hermite_growth_limit(p: f64, q: f64) -> Result<f64> {
    ExponentPair::new(p, q)?;
    if !(q > p.max(2.0)) {
        return Err(Error::Domain("growth limit needs q > max(p, 2)"));
    }
    Ok(libm::sqrt((q - 1.0) / (p.max(2.0) - 1.0)))
}
