use core::f64::consts::PI;

use crate::norms::sphere_l2_log_norm_sq;
use crate::quadrature::PiecewiseIntegrator;
use crate::specfun::log_c_lambda;
use crate::{Error, Result};

/// Norms of `f = 1 + εY_1` and of `e^{-t sqrt(-Δ)} f` next to their
/// second-order expansions. Values are stored as excesses over 1 so
/// remainders of order `ε⁴` stay resolvable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerturbativeReport {
    /// `‖e^{-t sqrt(-Δ)} f‖_q - 1`.
    pub measured_lhs_excess: f64,
    /// `‖f‖_p - 1`.
    pub measured_rhs_excess: f64,
    /// `(q-1)/2 · ε² e^{-2t sqrt(n)} ‖Y_1‖_2²`.
    pub predicted_lhs_excess: f64,
    /// `(p-1)/2 · ε² ‖Y_1‖_2²`.
    pub predicted_rhs_excess: f64,
    /// Absolute quadrature error of each measured excess.
    pub lhs_error: f64,
    pub rhs_error: f64,
}

impl PerturbativeReport {
    pub fn measured_lhs(&self) -> f64 {
        1.0 + self.measured_lhs_excess
    }

    pub fn measured_rhs(&self) -> f64 {
        1.0 + self.measured_rhs_excess
    }

    pub fn predicted_lhs(&self) -> f64 {
        1.0 + self.predicted_lhs_excess
    }

    pub fn predicted_rhs(&self) -> f64 {
        1.0 + self.predicted_rhs_excess
    }

    pub fn lhs_remainder(&self) -> f64 {
        self.measured_lhs_excess - self.predicted_lhs_excess
    }

    pub fn rhs_remainder(&self) -> f64 {
        self.measured_rhs_excess - self.predicted_rhs_excess
    }
}

/// `(1+x)^p + (1-x)^p - 2` for `|x| ≤ 1`, by its even binomial series when
/// `|x|` is small.
fn symmetric_binomial_excess(p: f64, x: f64) -> f64 {
    if libm::fabs(x) < 0.1 {
        let x2 = x * x;
        let mut total = 0.0;
        // C(p, 2j) x^{2j}, built incrementally.
        let mut coeff = 1.0;
        let mut power = 1.0;
        for j in 1..=40 {
            let a = 2.0 * j as f64;
            coeff *= (p - a + 2.0) * (p - a + 1.0) / ((a - 1.0) * a);
            power *= x2;
            let term = coeff * power;
            total += term;
            if libm::fabs(term) <= 1e-18 * libm::fabs(total) {
                break;
            }
        }
        2.0 * total
    } else {
        libm::expm1(p * libm::log1p(x)) + libm::expm1(p * libm::log1p(-x))
    }
}

/// `‖1 + a Y_1‖_p - 1` and its absolute error, with `Y_1 = 2λ t`.
fn degree_one_excess(n: u32, amplitude: f64, p: f64, tol: f64) -> Result<(f64, f64)> {
    if amplitude == 0.0 {
        return Ok((0.0, 0.0));
    }
    let lambda = f64::from(n - 1) / 2.0;
    let c = libm::exp(log_c_lambda(lambda)?);
    let power = f64::from(n - 1);
    // Fold θ and π - θ together; Y_1 is odd about the equator.
    let res = PiecewiseIntegrator::new().integrate(
        |theta| {
            let x = amplitude * 2.0 * lambda * libm::cos(theta);
            symmetric_binomial_excess(p, x) * c * libm::pow(libm::sin(theta), power)
        },
        &[],
        (0.0, 0.5 * PI),
        tol,
    )?;
    let integral = res.value;
    let log_norm = libm::log1p(integral) / p;
    let excess = libm::expm1(log_norm);
    let error = if res.converged {
        res.error_estimate / p * (1.0 + excess)
    } else {
        f64::INFINITY
    };
    Ok((excess, error))
}

/// Measures both sides of `‖e^{-t sqrt(-Δ)} f‖_q ≤ ‖f‖_p` for
/// `f = 1 + εY_1` and reports them with their Taylor predictions.
pub fn perturbative_necessity(
    n: u32,
    p: f64,
    q: f64,
    t: f64,
    eps: f64,
    tol: f64,
) -> Result<PerturbativeReport> {
    if n < 2 {
        return Err(Error::Domain("perturbative check requires n >= 2"));
    }
    if !(p >= 1.0) || !(q >= p) || !q.is_finite() {
        return Err(Error::Domain("requires 1 <= p <= q < inf"));
    }
    if !(t >= 0.0) {
        return Err(Error::invalid("t", t));
    }
    let max_y1 = f64::from(n - 1);
    if !(libm::fabs(eps) * max_y1 < 1.0) {
        return Err(Error::Negative {
            at: -libm::copysign(1.0, eps),
            value: 1.0 - libm::fabs(eps) * max_y1,
        });
    }
    let damping = libm::exp(-t * libm::sqrt(f64::from(n)));
    let y1_sq = libm::exp(sphere_l2_log_norm_sq(n, 1)?);
    let (lhs, lhs_error) = degree_one_excess(n, eps * damping, q, tol)?;
    let (rhs, rhs_error) = degree_one_excess(n, eps, p, tol)?;
    Ok(PerturbativeReport {
        measured_lhs_excess: lhs,
        measured_rhs_excess: rhs,
        predicted_lhs_excess: 0.5 * (q - 1.0) * eps * eps * damping * damping * y1_sq,
        predicted_rhs_excess: 0.5 * (p - 1.0) * eps * eps * y1_sq,
        lhs_error,
        rhs_error,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypercheck::ExponentPair;

    #[test]
    fn zero_perturbation() {
        let r = perturbative_necessity(2, 2.0, 4.0, 0.3, 0.0, 1e-12).unwrap();
        assert_eq!(r.measured_lhs(), 1.0);
        assert_eq!(r.measured_rhs(), 1.0);
        assert_eq!(r.predicted_lhs(), 1.0);
        assert_eq!(r.predicted_rhs(), 1.0);
    }

    #[test]
    fn series_matches_direct_formula() {
        for p in [1.5, 2.0, 3.7, 4.0] {
            for x in [0.09, 0.05, 0.01] {
                let direct = libm::pow(1.0 + x, p) + libm::pow(1.0 - x, p) - 2.0;
                let series = symmetric_binomial_excess(p, x);
                assert!(
                    (direct - series).abs() < 1e-11 * direct.abs(),
                    "p={p} x={x}"
                );
            }
        }
    }

    #[test]
    fn exact_l2_excess() {
        // ‖1 + εt‖_2 on S² is sqrt(1 + ε²/3).
        let eps = 1e-3;
        let r = perturbative_necessity(2, 2.0, 4.0, 0.0, eps, 1e-12).unwrap();
        let exact = libm::expm1(0.5 * libm::log1p(eps * eps / 3.0));
        assert!((r.measured_rhs_excess - exact).abs() < 1e-12 * exact);
    }

    #[test]
    fn below_critical_time_violates() {
        let pair = ExponentPair::new(2.0, 4.0).unwrap();
        let t = 0.9 * pair.t_star(2);
        for eps in [1e-2, 1e-3] {
            let r = perturbative_necessity(2, 2.0, 4.0, t, eps, 1e-12).unwrap();
            assert!(r.measured_lhs_excess > r.measured_rhs_excess);
        }
    }

    #[test]
    fn pointwise_negativity_rejected() {
        assert!(perturbative_necessity(3, 2.0, 4.0, 0.0, 0.6, 1e-12).is_err());
    }
}
