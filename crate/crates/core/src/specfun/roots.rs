use alloc::vec::Vec;
use core::ops::Deref;

use super::tridiag::eigen_first_components;
use super::{gegenbauer_derivative, gegenbauer_eval, hermite_eval, GegenbauerSpec, HermiteSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootDomain {
    /// Roots of a Gegenbauer polynomial, inside `(-1, 1)`.
    SphereInterval,
    /// Roots of a Hermite polynomial, on the real line.
    RealLine,
}

/// Strictly increasing, sign-symmetric roots of an orthogonal polynomial.
#[derive(Debug, Clone, PartialEq)]
pub struct RootList {
    roots: Vec<f64>,
    domain: RootDomain,
}

impl RootList {
    pub fn empty(domain: RootDomain) -> Self {
        RootList {
            roots: Vec::new(),
            domain,
        }
    }

    pub fn domain(&self) -> RootDomain {
        self.domain
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.roots
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.roots
    }
}

impl Deref for RootList {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.roots
    }
}

/// Roots of `C_d^(λ)` from the eigenvalues of its Jacobi matrix, polished by
/// one guarded Newton step.
pub fn gegenbauer_roots(spec: GegenbauerSpec) -> RootList {
    let d = spec.degree();
    if d == 0 {
        return RootList::empty(RootDomain::SphereInterval);
    }
    let lambda = spec.lambda();
    // Monic recurrence x p_k = p_{k+1} + b_k p_{k-1}.
    let off: Vec<f64> = (1..d)
        .map(|k| {
            let k = k as f64;
            libm::sqrt(k * (k + 2.0 * lambda - 1.0) / (4.0 * (k + lambda) * (k + lambda - 1.0)))
        })
        .collect();
    let mut roots = eigenvalues(d, &off);
    polish(
        &mut roots,
        |x| gegenbauer_eval(spec, x),
        |x| gegenbauer_derivative(spec, x),
    );
    finish(roots, RootDomain::SphereInterval)
}

/// Roots of the probabilistic Hermite polynomial `h_d`.
pub fn hermite_roots(spec: HermiteSpec) -> RootList {
    let d = spec.degree;
    if d == 0 {
        return RootList::empty(RootDomain::RealLine);
    }
    let off: Vec<f64> = (1..d).map(|k| libm::sqrt(k as f64)).collect();
    let mut roots = eigenvalues(d, &off);
    polish(
        &mut roots,
        |x| hermite_eval(spec, x),
        |x| d as f64 * hermite_eval(HermiteSpec::new(d - 1), x),
    );
    finish(roots, RootDomain::RealLine)
}

fn eigenvalues(d: usize, off: &[f64]) -> Vec<f64> {
    let diag = alloc::vec![0.0; d];
    eigen_first_components(&diag, off)
        .into_iter()
        .map(|(x, _)| x)
        .collect()
}

fn polish(roots: &mut [f64], f: impl Fn(f64) -> f64, df: impl Fn(f64) -> f64) {
    let n = roots.len();
    for i in 0..n {
        let x = roots[i];
        let gap = {
            let left = if i > 0 {
                x - roots[i - 1]
            } else {
                f64::INFINITY
            };
            let right = if i + 1 < n {
                roots[i + 1] - x
            } else {
                f64::INFINITY
            };
            left.min(right)
        };
        let fx = f(x);
        let dfx = df(x);
        if fx == 0.0 || dfx == 0.0 || !dfx.is_finite() {
            continue;
        }
        let step = fx / dfx;
        let candidate = x - step;
        if libm::fabs(step) < 0.25 * gap && libm::fabs(f(candidate)) <= libm::fabs(fx) {
            roots[i] = candidate;
        }
    }
}

fn finish(mut roots: Vec<f64>, domain: RootDomain) -> RootList {
    let n = roots.len();
    for i in 0..n / 2 {
        let j = n - 1 - i;
        let r = 0.5 * (roots[j] - roots[i]);
        roots[i] = -r;
        roots[j] = r;
    }
    if n % 2 == 1 {
        roots[n / 2] = 0.0;
    }
    assert!(
        roots.windows(2).all(|w| w[0] < w[1]),
        "orthogonal polynomial roots must be simple"
    );
    RootList { roots, domain }
}
