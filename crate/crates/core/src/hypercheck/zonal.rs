use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::norms::{sphere_l2_log_norm_sq, sphere_log_integral, NormMethod, NormValue};
use crate::specfun::GegenbauerSpec;
use crate::{Error, Result};

const SIGN_SAMPLES_PER_DEGREE: usize = 64;

/// A real zonal polynomial `g = Σ_k a_k Y_k` on `S^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct ZonalPolynomial {
    n: u32,
    coefficients: Vec<f64>,
}

impl ZonalPolynomial {
    pub fn new(n: u32, coefficients: Vec<f64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("sphere dimension must be at least 1"));
        }
        if coefficients.iter().any(|a| !a.is_finite()) {
            return Err(Error::Domain("coefficients must be finite"));
        }
        if coefficients.iter().all(|&a| a == 0.0) {
            return Err(Error::Domain(
                "zonal polynomial needs a nonzero coefficient",
            ));
        }
        Ok(ZonalPolynomial { n, coefficients })
    }

    /// `a_0 + Σ_{k≥1} a_k Y_k`, with `a_0` raised so that the minimum over a
    /// dense angle grid equals `slack`. Used to build nonnegative test
    /// functions from arbitrary coefficients.
    pub fn shifted_nonnegative(n: u32, mut coefficients: Vec<f64>, slack: f64) -> Result<Self> {
        if coefficients.is_empty() {
            coefficients.push(0.0);
        }
        coefficients[0] = 0.0;
        if coefficients.iter().all(|&a| a == 0.0) {
            coefficients[0] = slack.max(1.0);
            return Self::new(n, coefficients);
        }
        let probe = ZonalPolynomial {
            n,
            coefficients: coefficients.clone(),
        };
        let samples = 256 * coefficients.len();
        let min = (0..=samples)
            .map(|i| probe.eval(libm::cos(PI * i as f64 / samples as f64)))
            .fold(f64::INFINITY, f64::min);
        coefficients[0] = slack - min;
        Self::new(n, coefficients)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn is_constant(&self) -> bool {
        self.coefficients[1..].iter().all(|&a| a == 0.0)
    }

    fn lambda(&self) -> f64 {
        f64::from(self.n - 1) / 2.0
    }

    /// `g` at `t = ξ·e₁`. On the circle the harmonics are `cos(kθ)`.
    pub fn eval(&self, t: f64) -> f64 {
        let mut acc = self.coefficients[0];
        if self.coefficients.len() == 1 {
            return acc;
        }
        let (mut prev, mut cur) = if self.n == 1 {
            (1.0, t)
        } else {
            (1.0, 2.0 * self.lambda() * t)
        };
        acc += self.coefficients[1] * cur;
        let lambda = self.lambda();
        for (k, &a) in self.coefficients.iter().enumerate().skip(2) {
            let kf = (k - 1) as f64;
            let next = if self.n == 1 {
                2.0 * t * cur - prev
            } else {
                (2.0 * (kf + lambda) * t * cur - (kf + 2.0 * lambda - 1.0) * prev) / (kf + 1.0)
            };
            prev = cur;
            cur = next;
            acc += a * cur;
        }
        acc
    }

    /// Sum of absolute values of the terms, a scale for rounding checks.
    pub(crate) fn abs_scale(&self, t: f64) -> f64 {
        self.coefficients
            .iter()
            .enumerate()
            .map(|(k, &a)| {
                if k == 0 || self.n == 1 {
                    libm::fabs(a)
                } else {
                    let spec = GegenbauerSpec::new(self.lambda(), k).expect("lambda > 0");
                    libm::fabs(a * crate::specfun::gegenbauer_eval(spec, t))
                }
            })
            .sum()
    }

    /// Applies `e^{-t sqrt(-Δ)}`: coefficient `k` is multiplied by
    /// `e^{-t sqrt(k(k+n-1))}`.
    pub fn poisson_apply(&self, t: f64) -> Self {
        let n = f64::from(self.n);
        let coefficients = self
            .coefficients
            .iter()
            .enumerate()
            .map(|(k, &a)| {
                let k = k as f64;
                a * libm::exp(-t * libm::sqrt(k * (k + n - 1.0)))
            })
            .collect();
        ZonalPolynomial {
            n: self.n,
            coefficients,
        }
    }

    /// `‖H_k‖_2² = a_k² ‖Y_k‖_2²` for each `k`, from the closed form.
    pub fn component_l2_sq(&self) -> Result<Vec<f64>> {
        if self.n < 2 {
            return Err(Error::Domain("closed-form L2 norms need n >= 2"));
        }
        self.coefficients
            .iter()
            .enumerate()
            .map(|(k, &a)| {
                if k == 0 {
                    Ok(a * a)
                } else {
                    Ok(a * a * libm::exp(sphere_l2_log_norm_sq(self.n, k)?))
                }
            })
            .collect()
    }

    /// Angles in `(0, π)` where `g(cos θ)` changes sign.
    pub(crate) fn sign_change_angles(&self) -> Vec<f64> {
        let samples = SIGN_SAMPLES_PER_DEGREE * (self.degree() + 1);
        let h = |theta: f64| self.eval(libm::cos(theta));
        let mut out = Vec::new();
        let mut left = 0.0;
        let mut f_left = h(left);
        for i in 1..=samples {
            let right = PI * i as f64 / samples as f64;
            let f_right = h(right);
            if f_left != 0.0 && f_right != 0.0 && (f_left < 0.0) != (f_right < 0.0) {
                let (mut a, mut b, mut fa) = (left, right, f_left);
                for _ in 0..80 {
                    let m = 0.5 * (a + b);
                    let fm = h(m);
                    if fm == 0.0 {
                        a = m;
                        b = m;
                        break;
                    }
                    if (fm < 0.0) == (fa < 0.0) {
                        a = m;
                        fa = fm;
                    } else {
                        b = m;
                    }
                }
                out.push(0.5 * (a + b));
            }
            left = right;
            f_left = f_right;
        }
        out
    }

    /// `‖g‖_{L^p(S^n)}` by quadrature split at detected sign changes.
    pub fn lp_norm(&self, p: f64, tol: f64) -> Result<NormValue> {
        if !(p >= 1.0) || p.is_infinite() {
            return Err(Error::invalid("p", p));
        }
        if self.n < 2 {
            return Err(Error::Domain("zonal quadrature requires n >= 2"));
        }
        let breaks = self.sign_change_angles();
        let res = sphere_log_integral(
            self.n,
            |theta| p * libm::log(libm::fabs(self.eval(libm::cos(theta)))),
            &breaks,
            tol,
        )?;
        let log_value = res.log_value / p;
        Ok(NormValue::from_parts(
            log_value,
            res.relative_error / p + 4.0 * f64::EPSILON * (1.0 + libm::fabs(log_value)),
            p,
            NormMethod::Quadrature,
        ))
    }
}
