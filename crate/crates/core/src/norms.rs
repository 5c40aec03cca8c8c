//! `L^p` norms of zonal harmonics `Y_d(ξ) = C_d^(λ)(ξ·e₁)` on `S^n` and of
//! Hermite polynomials under the standard Gaussian measure.
//!
//! Sphere integrals are reduced to one dimension through zonality and
//! computed in the angle `θ = arccos t`:
//!
//! `∫_{S^n} |Y_d|^p dσ_n = c_λ ∫_0^π |C_d^(λ)(cos θ)|^p sin^{n-1} θ dθ`,
//!
//! which keeps the weight smooth at both poles. Integrands are evaluated in
//! log scale and shifted by their sampled maximum before exponentiation, so
//! norms stay finite for large `d` and `n`.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::quadrature::{gaussian_truncation_radius, IntegralResult, PiecewiseIntegrator};
use crate::specfun::{
    gegenbauer_eval_scaled, gegenbauer_roots, hermite_eval_normalized, hermite_roots, log_beta,
    log_c_lambda, log_gamma, GegenbauerSpec, HermiteSpec,
};
use crate::{Error, Result};

const SHIFT_SAMPLES: usize = 2048;

/// Normalization of degree-`d` harmonics on the circle, where the
/// Gegenbauer index `λ = 0` degenerates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CircleConvention {
    /// `Y_d(θ) = cos(dθ)`.
    Chebyshev,
    /// `Y_d(θ) = (2/d) cos(dθ)`, the limit of `C_d^(λ)(cos θ) / λ` as `λ → 0`.
    GegenbauerLimit,
}

/// The sphere `S^n ⊂ R^{n+1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SphereParams {
    n: u32,
    circle: Option<CircleConvention>,
}

impl SphereParams {
    pub fn new(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("sphere dimension must be at least 1"));
        }
        Ok(SphereParams { n, circle: None })
    }

    pub fn with_circle_convention(mut self, convention: CircleConvention) -> Self {
        self.circle = Some(convention);
        self
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn lambda(&self) -> f64 {
        f64::from(self.n - 1) / 2.0
    }

    pub fn circle_convention(&self) -> Option<CircleConvention> {
        self.circle
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormMethod {
    Quadrature,
    ClosedForm,
    CircleFormula,
}

/// A norm kept in log scale together with its relative error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormValue {
    log_value: f64,
    relative_error: f64,
    pub p: f64,
    pub method: NormMethod,
}

impl NormValue {
    pub(crate) fn from_parts(
        log_value: f64,
        relative_error: f64,
        p: f64,
        method: NormMethod,
    ) -> Self {
        NormValue {
            log_value,
            relative_error,
            p,
            method,
        }
    }

    pub fn value(&self) -> f64 {
        libm::exp(self.log_value)
    }

    pub fn log_value(&self) -> f64 {
        self.log_value
    }

    /// Absolute error estimate of [`NormValue::value`].
    pub fn error_estimate(&self) -> f64 {
        self.value() * self.relative_error
    }

    /// Relative error of the value, equal to the absolute error of the log.
    pub fn relative_error(&self) -> f64 {
        self.relative_error
    }

    /// False when quadrature hit its panel cap.
    pub fn converged(&self) -> bool {
        self.relative_error.is_finite()
    }
}

/// `‖·‖_q / ‖·‖_p` in log scale.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormRatio {
    pub log_value: f64,
    /// Absolute error of `log_value`.
    pub log_error: f64,
}

impl NormRatio {
    pub fn value(&self) -> f64 {
        libm::exp(self.log_value)
    }

    fn one() -> Self {
        NormRatio {
            log_value: 0.0,
            log_error: 0.0,
        }
    }
}

fn check_exponent(p: f64) -> Result<()> {
    if !(p >= 1.0) || p.is_infinite() {
        return Err(Error::invalid("p", p));
    }
    Ok(())
}

/// Log of an integral `∫_a^b e^{log_f(x)} dx` with its relative error.
#[derive(Debug, Clone, Copy)]
pub(crate) struct LogIntegral {
    pub log_value: f64,
    pub relative_error: f64,
}

pub(crate) fn log_integral<F: Fn(f64) -> f64>(
    log_f: F,
    breakpoints: &[f64],
    interval: (f64, f64),
    tol: f64,
) -> Result<LogIntegral> {
    let (a, b) = interval;
    let mut shift = f64::NEG_INFINITY;
    let step = (b - a) / SHIFT_SAMPLES as f64;
    for i in 0..SHIFT_SAMPLES {
        shift = shift.max(log_f(a + (i as f64 + 0.5) * step));
    }
    let mut cuts: Vec<f64> = breakpoints.to_vec();
    cuts.sort_by(f64::total_cmp);
    let mut left = a;
    for &c in cuts.iter().chain(core::iter::once(&b)) {
        shift = shift.max(log_f(0.5 * (left + c)));
        left = c;
    }
    if shift == f64::NEG_INFINITY {
        return Err(Error::Domain("integrand vanishes on all sample points"));
    }
    if !shift.is_finite() {
        return Err(Error::Domain("integrand is not finite"));
    }
    let res: IntegralResult = PiecewiseIntegrator::new().integrate(
        |x| libm::exp(log_f(x) - shift),
        &cuts,
        interval,
        tol,
    )?;
    if !(res.value > 0.0) {
        return Err(Error::Domain(
            "integral of a non-negative function is not positive",
        ));
    }
    Ok(LogIntegral {
        log_value: libm::log(res.value) + shift,
        relative_error: res.relative_error(),
    })
}

/// `ln ∫_{S^n} e^{log_profile(θ)} dσ_n` for a zonal function given by its
/// log-profile in the polar angle; `n ≥ 2`.
pub(crate) fn sphere_log_integral<F: Fn(f64) -> f64>(
    n: u32,
    log_profile: F,
    angle_breakpoints: &[f64],
    tol: f64,
) -> Result<LogIntegral> {
    if n < 2 {
        return Err(Error::Domain("sphere quadrature requires n >= 2"));
    }
    let lambda = f64::from(n - 1) / 2.0;
    let power = f64::from(n - 1);
    let mut res = log_integral(
        |theta| log_profile(theta) + power * libm::log(libm::sin(theta)),
        angle_breakpoints,
        (0.0, PI),
        tol,
    )?;
    res.log_value += log_c_lambda(lambda)?;
    Ok(res)
}

/// `ln ‖S_d‖_p` for the scaled profile `S_d(sqrt(2λ) t)`, i.e. the norm of
/// `Y_d` up to the factor `d! / (2λ)^{d/2}`.
fn sphere_scaled_log_norm(n: u32, d: usize, p: f64, tol: f64) -> Result<(f64, f64)> {
    let spec = GegenbauerSpec::for_sphere(n, d)?;
    let scale = libm::sqrt(2.0 * spec.lambda());
    let breaks: Vec<f64> = gegenbauer_roots(spec)
        .iter()
        .map(|&t| libm::acos(t))
        .collect();
    let res = sphere_log_integral(
        n,
        |theta| {
            let s = gegenbauer_eval_scaled(spec, scale * libm::cos(theta));
            p * libm::log(libm::fabs(s))
        },
        &breaks,
        tol,
    )?;
    Ok((res.log_value / p, res.relative_error / p))
}

/// `ln(d! / (2λ)^{d/2})`, the scaling between `C_d^(λ)` and `S_d`.
fn gegenbauer_scale_log(lambda: f64, d: usize) -> f64 {
    let d = d as f64;
    log_gamma(d + 1.0).expect("positive") - 0.5 * d * libm::log(2.0 * lambda)
}

fn circle_lp_norm(convention: CircleConvention, d: usize, p: f64, tol: f64) -> Result<NormValue> {
    if d == 0 {
        return Ok(NormValue {
            log_value: 0.0,
            relative_error: 0.0,
            p,
            method: NormMethod::CircleFormula,
        });
    }
    let df = d as f64;
    let breaks: Vec<f64> = (0..d)
        .map(|k| (2.0 * k as f64 + 1.0) * PI / (2.0 * df))
        .collect();
    let res = log_integral(
        |theta| p * libm::log(libm::fabs(libm::cos(df * theta))),
        &breaks,
        (0.0, PI),
        tol,
    )?;
    let mut log_value = (res.log_value - libm::log(PI)) / p;
    if convention == CircleConvention::GegenbauerLimit {
        log_value += libm::log(2.0 / df);
    }
    Ok(NormValue {
        log_value,
        relative_error: res.relative_error / p + 4.0 * f64::EPSILON,
        p,
        method: NormMethod::CircleFormula,
    })
}

/// `‖Y_d‖_{L^p(S^n, dσ_n)}` with `Y_d = C_d^(λ)(ξ·e₁)`, by quadrature split at
/// the Gegenbauer roots.
///
/// On the circle, `params` must carry a [`CircleConvention`].
pub fn sphere_lp_norm(params: SphereParams, d: usize, p: f64, tol: f64) -> Result<NormValue> {
    check_exponent(p)?;
    if params.n == 1 {
        let convention = params.circle.ok_or(Error::CircleConventionRequired)?;
        return circle_lp_norm(convention, d, p, tol);
    }
    if d == 0 {
        return Ok(NormValue {
            log_value: 0.0,
            relative_error: 0.0,
            p,
            method: NormMethod::ClosedForm,
        });
    }
    let lambda = params.lambda();
    let (scaled, err) = sphere_scaled_log_norm(params.n, d, p, tol)?;
    let log_value = scaled - gegenbauer_scale_log(lambda, d);
    Ok(NormValue {
        log_value,
        relative_error: err + 4.0 * f64::EPSILON * (1.0 + libm::fabs(log_value)),
        p,
        method: NormMethod::Quadrature,
    })
}

/// `ln ‖Y_d‖_2² = ln((n-1) / (d (2d+n-1) B(n-1, d)))`.
pub fn sphere_l2_log_norm_sq(n: u32, d: usize) -> Result<f64> {
    if d == 0 {
        return Err(Error::Domain("closed-form L2 norm needs d >= 1"));
    }
    if n < 2 {
        return Err(Error::Domain("closed-form L2 norm needs n >= 2"));
    }
    let nf = f64::from(n);
    let df = d as f64;
    Ok(libm::log(nf - 1.0)
        - libm::log(df)
        - libm::log(2.0 * df + nf - 1.0)
        - log_beta(nf - 1.0, df)?)
}

/// Closed-form `‖Y_d‖_2`.
pub fn sphere_l2_norm_closed(params: SphereParams, d: usize) -> Result<NormValue> {
    let log_sq = sphere_l2_log_norm_sq(params.n, d)?;
    Ok(NormValue {
        log_value: 0.5 * log_sq,
        relative_error: 16.0 * f64::EPSILON * (1.0 + libm::fabs(log_sq)),
        p: 2.0,
        method: NormMethod::ClosedForm,
    })
}

/// `ln ‖h_d / sqrt(d!)‖_{L^p(dγ)}` and its absolute error.
fn gaussian_normalized_log_norm(d: usize, p: f64, tol: f64) -> Result<(f64, f64)> {
    let spec = HermiteSpec::new(d);
    let r = gaussian_truncation_radius(tol, p * d as f64);
    let roots = hermite_roots(spec);
    let log_density = -0.5 * libm::log(2.0 * PI);
    let res = log_integral(
        |y| p * libm::log(libm::fabs(hermite_eval_normalized(spec, y))) - 0.5 * y * y,
        &roots,
        (-r, r),
        tol,
    )?;
    Ok((
        (res.log_value + log_density) / p,
        res.relative_error / p + 4.0 * f64::EPSILON,
    ))
}

/// `‖h_d‖_{L^p(R, dγ)}` by quadrature split at the Hermite roots and truncated
/// at the radius where the tail bound with growth degree `p·d` drops below
/// the tolerance.
pub fn gaussian_lp_norm(d: usize, p: f64, tol: f64) -> Result<NormValue> {
    check_exponent(p)?;
    if d == 0 {
        return Ok(NormValue {
            log_value: 0.0,
            relative_error: 0.0,
            p,
            method: NormMethod::ClosedForm,
        });
    }
    let (log_norm, err) = gaussian_normalized_log_norm(d, p, tol)?;
    let log_value = log_norm + 0.5 * log_gamma(d as f64 + 1.0)?;
    Ok(NormValue {
        log_value,
        relative_error: err + 4.0 * f64::EPSILON * (1.0 + libm::fabs(log_value)),
        p,
        method: NormMethod::Quadrature,
    })
}

fn check_pair(p: f64, q: f64) -> Result<()> {
    check_exponent(p)?;
    check_exponent(q)?;
    if p > q {
        return Err(Error::Domain("norm ratio requires p <= q"));
    }
    Ok(())
}

/// `‖Y_d‖_q / ‖Y_d‖_p` on `S^n`.
pub fn norm_ratio_sphere(
    params: SphereParams,
    d: usize,
    p: f64,
    q: f64,
    tol: f64,
) -> Result<NormRatio> {
    check_pair(p, q)?;
    if d == 0 || p == q {
        return Ok(NormRatio::one());
    }
    if params.n == 1 {
        let nq = sphere_lp_norm(params, d, q, tol)?;
        let np = sphere_lp_norm(params, d, p, tol)?;
        return Ok(NormRatio {
            log_value: nq.log_value - np.log_value,
            log_error: nq.relative_error + np.relative_error,
        });
    }
    let (lq, eq) = sphere_scaled_log_norm(params.n, d, q, tol)?;
    let (lp, ep) = sphere_scaled_log_norm(params.n, d, p, tol)?;
    let log_value = lq - lp;
    Ok(NormRatio {
        log_value,
        log_error: eq + ep + 4.0 * f64::EPSILON * (libm::fabs(lq) + libm::fabs(lp)),
    })
}

/// `‖h_d‖_q / ‖h_d‖_p` under the standard Gaussian measure.
pub fn norm_ratio_gaussian(d: usize, p: f64, q: f64, tol: f64) -> Result<NormRatio> {
    check_pair(p, q)?;
    if d == 0 || p == q {
        return Ok(NormRatio::one());
    }
    let (lq, eq) = gaussian_normalized_log_norm(d, q, tol)?;
    let (lp, ep) = gaussian_normalized_log_norm(d, p, tol)?;
    Ok(NormRatio {
        log_value: lq - lp,
        log_error: eq + ep + 4.0 * f64::EPSILON * (libm::fabs(lq) + libm::fabs(lp)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-12;

    fn sphere(n: u32) -> SphereParams {
        SphereParams::new(n).unwrap()
    }

    #[test]
    fn constant_harmonic() {
        let v = sphere_lp_norm(sphere(5), 0, 3.3, TOL).unwrap();
        assert_eq!(v.value(), 1.0);
        assert_eq!(gaussian_lp_norm(0, 2.7, TOL).unwrap().value(), 1.0);
    }

    #[test]
    fn degree_one_on_s2() {
        let v = sphere_lp_norm(sphere(2), 1, 2.0, TOL).unwrap();
        assert!((v.value() - libm::sqrt(1.0 / 3.0)).abs() < 1e-13);
        let c = sphere_l2_norm_closed(sphere(2), 1).unwrap();
        assert!((c.value() * c.value() - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn closed_form_examples() {
        let c = sphere_l2_norm_closed(sphere(3), 2).unwrap();
        assert!((c.value() - 1.0).abs() < 1e-14);
        assert!(sphere_l2_norm_closed(sphere(3), 0).is_err());
    }

    #[test]
    fn gaussian_examples() {
        let v = gaussian_lp_norm(2, 2.0, TOL).unwrap();
        assert!((v.value() - libm::sqrt(2.0)).abs() < 1e-12);
        let v = gaussian_lp_norm(1, 4.0, TOL).unwrap();
        assert!((v.value() - libm::pow(3.0, 0.25)).abs() < 1e-12);
    }

    #[test]
    fn circle_requires_convention() {
        assert_eq!(
            sphere_lp_norm(sphere(1), 2, 2.0, TOL),
            Err(Error::CircleConventionRequired)
        );
        let cheb = sphere(1).with_circle_convention(CircleConvention::Chebyshev);
        // mean of cos²(dθ) is 1/2.
        let v = sphere_lp_norm(cheb, 3, 2.0, TOL).unwrap();
        assert!((v.value() - libm::sqrt(0.5)).abs() < 1e-13);
        assert_eq!(v.method, NormMethod::CircleFormula);
        let lim = sphere(1).with_circle_convention(CircleConvention::GegenbauerLimit);
        let w = sphere_lp_norm(lim, 3, 2.0, TOL).unwrap();
        assert!((w.value() - (2.0 / 3.0) * libm::sqrt(0.5)).abs() < 1e-13);
        // mean of cos⁴ is 3/8, so the ratio is convention independent.
        let r = norm_ratio_sphere(lim, 3, 2.0, 4.0, TOL).unwrap();
        let expected = libm::pow(3.0 / 8.0, 0.25) / libm::sqrt(0.5);
        assert!((r.value() - expected).abs() < 1e-12);
    }

    #[test]
    fn ratio_trivial_cases() {
        assert_eq!(
            norm_ratio_sphere(sphere(4), 0, 2.0, 4.0, TOL)
                .unwrap()
                .value(),
            1.0
        );
        assert_eq!(
            norm_ratio_sphere(sphere(4), 3, 3.0, 3.0, TOL)
                .unwrap()
                .value(),
            1.0
        );
        assert_eq!(norm_ratio_gaussian(5, 2.5, 2.5, TOL).unwrap().value(), 1.0);
        assert!(norm_ratio_gaussian(5, 4.0, 2.0, TOL).is_err());
        assert!(sphere_lp_norm(sphere(3), 2, 0.5, TOL).is_err());
    }

    #[test]
    fn p_monotonicity() {
        for n in [2, 5, 13] {
            for d in [1, 4, 9] {
                let mut last = 0.0;
                for p in [1.0, 1.5, 2.0, 3.0, 4.0, 6.0] {
                    let v = sphere_lp_norm(sphere(n), d, p, TOL).unwrap().value();
                    assert!(v >= last * (1.0 - 1e-12), "n={n} d={d} p={p}");
                    last = v;
                }
            }
        }
    }

    #[test]
    fn large_dimension_does_not_overflow() {
        let v = sphere_lp_norm(sphere(20_001), 100, 4.0, 1e-10).unwrap();
        assert!(v.log_value().is_finite() && v.converged());
        let closed = sphere_l2_norm_closed(sphere(20_001), 100).unwrap();
        let quad = sphere_lp_norm(sphere(20_001), 100, 2.0, 1e-10).unwrap();
        assert!((closed.log_value() - quad.log_value()).abs() < 1e-9);
    }
}
