//! Gauss rules and piecewise adaptive integration.
//!
//! Integrands of the form `|P(t)|^p` have kinks at the roots of `P` and are
//! smooth in between, so [`integrate_piecewise`] starts from one panel per
//! gap between breakpoints and bisects only where the two embedded Gauss
//! estimates disagree.

use alloc::collections::BinaryHeap;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::f64::consts::PI;

use crate::hypercheck::Verdict;
use crate::specfun::tridiag::eigen_first_components;
use crate::specfun::KahanSum;
use crate::{Error, Result};

/// Panel cap for [`integrate_piecewise`].
pub const MAX_PANELS: usize = 1 << 14;

const LOW_ORDER: usize = 20;
const HIGH_ORDER: usize = 40;

/// Required agreement between both sides of the subordination identity.
pub const SUBORDINATION_AGREEMENT: f64 = 1e-10;

/// Nodes and positive weights on `interval`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    interval: (f64, f64),
}

impl QuadratureRule {
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn interval(&self) -> (f64, f64) {
        self.interval
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Applies the rule on its own interval, against its own weight.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .collect::<KahanSum>()
            .value()
    }

    /// Applies a rule defined on a finite reference interval to `[a, b]` by
    /// the affine change of variables.
    pub fn integrate_on<F: Fn(f64) -> f64>(&self, a: f64, b: f64, f: F) -> f64 {
        let (lo, hi) = self.interval;
        let scale = (b - a) / (hi - lo);
        let mut acc = KahanSum::default();
        for (&x, &w) in self.nodes.iter().zip(&self.weights) {
            acc.add(w * f(a + (x - lo) * scale));
        }
        acc.value() * scale
    }
}

fn golub_welsch(diag: &[f64], off: &[f64], mass: f64, interval: (f64, f64)) -> QuadratureRule {
    let (nodes, weights) = eigen_first_components(diag, off)
        .into_iter()
        .map(|(x, z)| (x, mass * z * z))
        .unzip();
    QuadratureRule {
        nodes,
        weights,
        interval,
    }
}

/// `(P_n(x), P_n'(x))` for the Legendre polynomial.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut prev = 1.0;
    let mut cur = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0) * x * cur - kf * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    let deriv = n as f64 * (x * cur - prev) / (x * x - 1.0);
    (cur, deriv)
}

/// Gauss-Legendre rule on `[-1, 1]`. Nodes come from the Jacobi matrix and
/// are polished by Newton's method; weights use `2 / ((1 - x²) P_n'(x)²)`.
pub fn gauss_legendre(count: usize) -> Result<QuadratureRule> {
    if count == 0 {
        return Err(Error::Domain("quadrature rule needs at least one node"));
    }
    let off: Vec<f64> = (1..count)
        .map(|k| {
            let k = k as f64;
            k / libm::sqrt(4.0 * k * k - 1.0)
        })
        .collect();
    let mut rule = golub_welsch(&alloc::vec![0.0; count], &off, 2.0, (-1.0, 1.0));
    for (x, w) in rule.nodes.iter_mut().zip(rule.weights.iter_mut()) {
        for _ in 0..3 {
            let (p, dp) = legendre_with_derivative(count, *x);
            if dp == 0.0 {
                break;
            }
            *x -= p / dp;
        }
        let (_, dp) = legendre_with_derivative(count, *x);
        *w = 2.0 / ((1.0 - *x * *x) * dp * dp);
    }
    // Symmetrize.
    let n = rule.nodes.len();
    for i in 0..n / 2 {
        let j = n - 1 - i;
        let x = 0.5 * (rule.nodes[j] - rule.nodes[i]);
        let w = 0.5 * (rule.weights[j] + rule.weights[i]);
        rule.nodes[i] = -x;
        rule.nodes[j] = x;
        rule.weights[i] = w;
        rule.weights[j] = w;
    }
    if n % 2 == 1 {
        rule.nodes[n / 2] = 0.0;
    }
    Ok(rule)
}

/// Gauss rule for the probability weight `c_λ (1 - t²)^(λ - 1/2)` on `[-1, 1]`.
pub fn gauss_gegenbauer(lambda: f64, count: usize) -> Result<QuadratureRule> {
    if count == 0 {
        return Err(Error::Domain("quadrature rule needs at least one node"));
    }
    if !(lambda > 0.0) {
        return Err(Error::invalid("lambda", lambda));
    }
    let off: Vec<f64> = (1..count)
        .map(|k| {
            let k = k as f64;
            libm::sqrt(k * (k + 2.0 * lambda - 1.0) / (4.0 * (k + lambda) * (k + lambda - 1.0)))
        })
        .collect();
    Ok(golub_welsch(
        &alloc::vec![0.0; count],
        &off,
        1.0,
        (-1.0, 1.0),
    ))
}

/// Gauss rule for the standard Gaussian probability measure.
pub fn gauss_hermite(count: usize) -> Result<QuadratureRule> {
    if count == 0 {
        return Err(Error::Domain("quadrature rule needs at least one node"));
    }
    let off: Vec<f64> = (1..count).map(|k| libm::sqrt(k as f64)).collect();
    Ok(golub_welsch(
        &alloc::vec![0.0; count],
        &off,
        1.0,
        (f64::NEG_INFINITY, f64::INFINITY),
    ))
}

/// Outcome of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegralResult {
    pub value: f64,
    pub error_estimate: f64,
    pub subintervals_used: usize,
    /// `false` when the panel cap was hit before reaching the tolerance.
    /// Callers must treat such results as inconclusive.
    pub converged: bool,
}

impl IntegralResult {
    /// Relative error estimate, infinite when the integration did not
    /// converge.
    pub fn relative_error(&self) -> f64 {
        if !self.converged {
            return f64::INFINITY;
        }
        if self.value == 0.0 {
            if self.error_estimate == 0.0 {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            self.error_estimate / libm::fabs(self.value)
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    abs_value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// Reusable pair of embedded Gauss-Legendre rules for adaptive integration.
#[derive(Debug, Clone)]
pub struct PiecewiseIntegrator {
    low: QuadratureRule,
    high: QuadratureRule,
    max_panels: usize,
}

impl Default for PiecewiseIntegrator {
    fn default() -> Self {
        Self::new()
    }
}

impl PiecewiseIntegrator {
    pub fn new() -> Self {
        PiecewiseIntegrator {
            low: gauss_legendre(LOW_ORDER).expect("non-zero order"),
            high: gauss_legendre(HIGH_ORDER).expect("non-zero order"),
            max_panels: MAX_PANELS,
        }
    }

    pub fn with_max_panels(mut self, max_panels: usize) -> Self {
        self.max_panels = max_panels.max(1);
        self
    }

    fn panel<F: Fn(f64) -> f64>(&self, f: &F, a: f64, b: f64) -> Panel {
        let coarse = self.low.integrate_on(a, b, f);
        let fine = self.high.integrate_on(a, b, f);
        let abs_value = self.high.integrate_on(a, b, |x| libm::fabs(f(x)));
        let error = if fine.is_finite() && coarse.is_finite() {
            libm::fabs(fine - coarse)
        } else {
            f64::INFINITY
        };
        Panel {
            a,
            b,
            value: fine,
            abs_value,
            error,
        }
    }

    /// Integrates `f` over `interval = (a, b)`, splitting at `breakpoints`
    /// first and then bisecting worst panels until the summed error estimate
    /// is below `tol` relative to the integral.
    pub fn integrate<F: Fn(f64) -> f64>(
        &self,
        f: F,
        breakpoints: &[f64],
        interval: (f64, f64),
        tol: f64,
    ) -> Result<IntegralResult> {
        let (a, b) = interval;
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(Error::Domain(
                "integration interval must be finite with a < b",
            ));
        }
        if !(tol > 0.0) {
            return Err(Error::invalid("tol", tol));
        }
        let mut cuts: Vec<f64> = breakpoints
            .iter()
            .copied()
            .filter(|&x| x > a && x < b)
            .collect();
        cuts.sort_by(f64::total_cmp);
        cuts.dedup();

        let mut heap = BinaryHeap::with_capacity(cuts.len() + 1);
        let mut left = a;
        for &c in cuts.iter().chain(core::iter::once(&b)) {
            heap.push(self.panel(&f, left, c));
            left = c;
        }

        loop {
            let mut value = KahanSum::default();
            let mut abs_value = 0.0;
            let mut error = 0.0;
            for p in heap.iter() {
                value.add(p.value);
                abs_value += p.abs_value;
                error += p.error;
            }
            let value = value.value();
            let target = (tol * libm::fabs(value)).max(16.0 * f64::EPSILON * abs_value);
            if error <= target {
                return Ok(IntegralResult {
                    value,
                    error_estimate: error,
                    subintervals_used: heap.len(),
                    converged: value.is_finite(),
                });
            }
            let worst = *heap.peek().expect("at least one panel");
            let mid = 0.5 * (worst.a + worst.b);
            if heap.len() >= self.max_panels || !(mid > worst.a && mid < worst.b) {
                return Ok(IntegralResult {
                    value,
                    error_estimate: error,
                    subintervals_used: heap.len(),
                    converged: false,
                });
            }
            heap.pop();
            heap.push(self.panel(&f, worst.a, mid));
            heap.push(self.panel(&f, mid, worst.b));
        }
    }
}

/// Adaptive integration of `f` on `interval` with kinks allowed at
/// `breakpoints`. See [`PiecewiseIntegrator::integrate`].
pub fn integrate_piecewise<F: Fn(f64) -> f64>(
    f: F,
    breakpoints: &[f64],
    interval: (f64, f64),
    tol: f64,
) -> Result<IntegralResult> {
    PiecewiseIntegrator::new().integrate(f, breakpoints, interval, tol)
}

/// Smallest `R ≥ 10` with `(1 + R)^growth_degree · e^{-R²/2} < tol · 1e-3`.
pub fn gaussian_truncation_radius(tol: f64, growth_degree: f64) -> f64 {
    let target = libm::log(tol * 1e-3);
    let log_tail = |r: f64| growth_degree.max(0.0) * libm::log1p(r) - 0.5 * r * r;
    let mut r: f64 = 10.0;
    while log_tail(r) >= target {
        r *= 1.25;
    }
    if r == 10.0 {
        return r;
    }
    // Bisect down to the boundary.
    let (mut lo, mut hi) = ((r / 1.25).max(10.0), r);
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if log_tail(mid) < target {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// `∫ f dγ` for the standard Gaussian measure `dγ = e^{-y²/2}/sqrt(2π) dy`,
/// truncated to `[-R, R]` by [`gaussian_truncation_radius`].
pub fn gaussian_integrate<F: Fn(f64) -> f64>(
    f: F,
    breakpoints: &[f64],
    tol: f64,
    growth_degree: f64,
) -> Result<IntegralResult> {
    let r = gaussian_truncation_radius(tol, growth_degree);
    let norm = 1.0 / libm::sqrt(2.0 * PI);
    integrate_piecewise(
        |y| f(y) * norm * libm::exp(-0.5 * y * y),
        breakpoints,
        (-r, r),
        tol,
    )
}

/// Checks `e^{-x} = (1/sqrt(π)) ∫_0^∞ e^{-y - x²/(4y)} dy / sqrt(y)` after
/// the substitution `y = u²`. The verdict's inequality is
/// `|lhs - rhs| ≤ SUBORDINATION_AGREEMENT`; `lhs` is the quadrature value and
/// `rhs` is `e^{-x}`.
pub fn subordination_check(x: f64, tol: f64) -> Result<Verdict> {
    if !(x >= 0.0) || x.is_infinite() {
        return Err(Error::invalid("x", x));
    }
    let x2 = x * x;
    let integrand = |u: f64| {
        if u == 0.0 {
            return if x == 0.0 { 1.0 } else { 0.0 };
        }
        libm::exp(-u * u - x2 / (4.0 * u * u))
    };
    let upper = libm::sqrt(0.5 * x) + 8.0;
    let peak = libm::sqrt(0.5 * x);
    let res = integrate_piecewise(integrand, &[peak], (0.0, upper), tol)?;
    let scale = 2.0 / libm::sqrt(PI);
    let lhs = scale * res.value;
    let rhs = libm::exp(-x);
    let numeric_error = if res.converged {
        scale * res.error_estimate
    } else {
        f64::INFINITY
    };
    Ok(Verdict::identity(
        lhs,
        rhs,
        SUBORDINATION_AGREEMENT,
        numeric_error,
    ))
}
