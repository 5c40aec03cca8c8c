//! Implicit QL iteration for symmetric tridiagonal matrices.

use alloc::vec;
use alloc::vec::Vec;

const MAX_SWEEPS: usize = 64;

/// Eigenvalues (ascending) of the symmetric tridiagonal matrix with the given
/// diagonal and off-diagonal, paired with the first component of each
/// normalized eigenvector. Only the first row of the eigenvector matrix is
/// accumulated, which is all Golub-Welsch needs.
pub(crate) fn eigen_first_components(diag: &[f64], off: &[f64]) -> Vec<(f64, f64)> {
    let n = diag.len();
    assert!(
        n == 0 || off.len() + 1 == n,
        "off-diagonal must have n - 1 entries"
    );
    if n == 0 {
        return Vec::new();
    }
    let mut d = diag.to_vec();
    let mut e: Vec<f64> = off.iter().copied().chain(core::iter::once(0.0)).collect();
    let mut z = vec![0.0; n];
    z[0] = 1.0;

    for l in 0..n {
        let mut sweeps = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = libm::fabs(d[m]) + libm::fabs(d[m + 1]);
                if libm::fabs(e[m]) <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            sweeps += 1;
            assert!(sweeps <= MAX_SWEEPS, "tridiagonal QL failed to converge");

            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = libm::hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + libm::copysign(r, g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = libm::hypot(f, g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                let zf = z[i + 1];
                z[i + 1] = s * z[i] + c * zf;
                z[i] = c * z[i] - s * zf;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }

    let mut pairs: Vec<(f64, f64)> = d.into_iter().zip(z).collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    pairs
}
