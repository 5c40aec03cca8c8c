use core::cmp::Ordering;

use alloc::vec::Vec;

use super::Verdict;
use crate::specfun::KahanSum;
use crate::{Error, Result};

fn harmonic_tail(n: u32, k: u64) -> f64 {
    let nf = f64::from(n);
    (0..k)
        .map(|m| 1.0 / (2.0 * m as f64 + nf))
        .collect::<KahanSum>()
        .value()
}

/// `Δ_n(k) = 2n Σ_{m<k} 1/(2m+n)`, the conformal log-Sobolev coefficient.
pub fn beckner_constant(n: u32, k: u64) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("sphere dimension must be at least 1"));
    }
    Ok(2.0 * f64::from(n) * harmonic_tail(n, k))
}

/// `h(k) = 2/n + ln((k + n/2 - 1)/(n/2)) - (2/n) sqrt(k(k+n-1)/n)`.
pub fn h_function(n: u32, k: u64) -> Result<f64> {
    if n == 0 || k == 0 {
        return Err(Error::Domain("h(k) needs n >= 1 and k >= 1"));
    }
    let nf = f64::from(n);
    let kf = k as f64;
    Ok(2.0 / nf + libm::log((kf + nf / 2.0 - 1.0) / (nf / 2.0))
        - 2.0 / nf * libm::sqrt(kf * (kf + nf - 1.0) / nf))
}

/// Checks `n Σ_{m<k} 1/(2m+n) ≤ sqrt(k(k+n-1)/n)`.
///
/// Near-ties are settled in exact rational arithmetic (squared form), which
/// is how the `k = 1` equality is reported as an exact tie.
pub fn lemma_check(n: u32, k: u64) -> Result<Verdict> {
    if n == 0 || k == 0 {
        return Err(Error::Domain("lemma check needs n >= 1 and k >= 1"));
    }
    Ok(lemma_verdict(n, k, harmonic_tail(n, k)))
}

/// `lemma_check(n, k)` for `k = 1..=k_max`, sharing the partial sums.
pub fn lemma_table(n: u32, k_max: u64) -> Result<Vec<Verdict>> {
    if n == 0 || k_max == 0 {
        return Err(Error::Domain("lemma check needs n >= 1 and k >= 1"));
    }
    let nf = f64::from(n);
    let mut tail = KahanSum::default();
    let mut out = Vec::with_capacity(usize::try_from(k_max).unwrap_or(0));
    for k in 1..=k_max {
        tail.add(1.0 / (2.0 * (k - 1) as f64 + nf));
        out.push(lemma_verdict(n, k, tail.value()));
    }
    Ok(out)
}

fn lemma_verdict(n: u32, k: u64, tail: f64) -> Verdict {
    let nf = f64::from(n);
    let kf = k as f64;
    let lhs = nf * tail;
    let rhs = libm::sqrt(kf * (kf + nf - 1.0) / nf);
    let numeric_error = 8.0 * f64::EPSILON * (lhs + rhs);
    let verdict = Verdict::new(lhs, rhs, numeric_error);
    if !verdict.is_inconclusive() {
        return verdict;
    }
    match exact_compare(n, k) {
        Some(ordering) => Verdict::exact(lhs, rhs, ordering),
        None => verdict,
    }
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Sign of `lhs² - rhs²` computed as `n³ N² - k(k+n-1) D²` with
/// `Σ 1/(2m+n) = N/D`; `None` on u128 overflow.
fn exact_compare(n: u32, k: u64) -> Option<Ordering> {
    let (mut num, mut den): (u128, u128) = (0, 1);
    for m in 0..k {
        let term = 2 * u128::from(m) + u128::from(n);
        num = num.checked_mul(term)?.checked_add(den)?;
        den = den.checked_mul(term)?;
        let g = gcd(num, den);
        num /= g;
        den /= g;
    }
    let n = u128::from(n);
    let k = u128::from(k);
    let left = n.checked_pow(3)?.checked_mul(num.checked_mul(num)?)?;
    let right = k
        .checked_mul(k + n - 1)?
        .checked_mul(den.checked_mul(den)?)?;
    Some(left.cmp(&right))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k_one_is_exact_equality() {
        for n in 1..=10 {
            let v = lemma_check(n, 1).unwrap();
            assert!(v.holds() && v.is_equality(), "n = {n}");
            assert!(v.margin.abs() < 1e-14);
        }
    }

    #[test]
    fn table_matches_pointwise() {
        for n in [2, 3, 4, 7] {
            let table = lemma_table(n, 300).unwrap();
            for (i, v) in table.iter().enumerate() {
                assert_eq!(*v, lemma_check(n, i as u64 + 1).unwrap());
            }
        }
        assert!(lemma_table(2, 0).is_err());
    }

    #[test]
    fn small_cases() {
        let v = lemma_check(2, 2).unwrap();
        assert!((v.lhs - 1.5).abs() < 1e-15 && (v.rhs - libm::sqrt(3.0)).abs() < 1e-15);
        assert!(v.holds());
        assert!(lemma_check(4, 3).unwrap().fails());
        assert!(lemma_check(3, 3).unwrap().holds());
        assert!(lemma_check(0, 3).is_err());
        assert!(lemma_check(2, 0).is_err());
    }

    #[test]
    fn beckner_values() {
        assert_eq!(beckner_constant(7, 0).unwrap(), 0.0);
        for n in 1..20 {
            assert!((beckner_constant(n, 1).unwrap() - 2.0).abs() < 1e-15);
        }
        assert!((beckner_constant(2, 3).unwrap() - 11.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn h_values() {
        let h2 = h_function(2, 4).unwrap();
        let expected = 1.0 + 2.0 * core::f64::consts::LN_2 - libm::sqrt(10.0);
        assert!((h2 - expected).abs() < 1e-15);
        assert!((h2 + 0.775_983_299).abs() < 1e-9);
        let h3 = h_function(3, 4).unwrap();
        let expected = (2.0 + 3.0 * libm::log(3.0) - 4.0 * libm::sqrt(2.0)) / 3.0;
        assert!((h3 - expected).abs() < 1e-15 && h3 < 0.0);
    }

    #[test]
    fn h_is_decreasing() {
        for n in [2, 3] {
            let mut last = h_function(n, 4).unwrap();
            for k in 5..=10_000 {
                let h = h_function(n, k).unwrap();
                assert!(h < last, "n={n} k={k}");
                last = h;
            }
        }
    }

    #[test]
    fn exact_compare_agrees_with_float_on_clear_cases() {
        assert_eq!(exact_compare(4, 3), Some(Ordering::Greater));
        assert_eq!(exact_compare(2, 2), Some(Ordering::Less));
        assert_eq!(exact_compare(3, 1), Some(Ordering::Equal));
    }
}
