#![allow(clippy::excessive_precision)]

//! Special functions against exact-rational explicit sums and frozen
//! high-precision references.

use hypersphere_core::quadrature::integrate_piecewise;
use hypersphere_core::specfun::{
    c_lambda, gegenbauer_eval, gegenbauer_eval_scaled, hermite_eval, log_beta, log_gamma,
    GegenbauerSpec, HermiteSpec,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn factorial(n: usize) -> BigRational {
    (1..=n).fold(BigRational::one(), |acc, k| acc * rat(k as i64, 1))
}

/// `Γ(m + λ) / Γ(λ)` as the rising factorial `(λ)_m`.
fn rising(lambda: &BigRational, m: usize) -> BigRational {
    (0..m).fold(BigRational::one(), |acc, i| {
        acc * (lambda + rat(i as i64, 1))
    })
}

/// Explicit sum `Σ_j (-1)^j Γ(d-j+λ)/(Γ(λ) j! (d-2j)!) (2x)^{d-2j}`.
fn gegenbauer_exact(lambda: &BigRational, d: usize, x: &BigRational) -> BigRational {
    let two_x = x * rat(2, 1);
    let mut total = BigRational::zero();
    for j in 0..=d / 2 {
        let mut term = rising(lambda, d - j) / (factorial(j) * factorial(d - 2 * j));
        for _ in 0..d - 2 * j {
            term *= &two_x;
        }
        if j % 2 == 1 {
            term = -term;
        }
        total += term;
    }
    total
}

/// `Σ_j (-1)^j d! / (j! (d-2j)!) x^{d-2j} / 2^j`.
fn hermite_exact(d: usize, x: &BigRational) -> BigRational {
    let mut total = BigRational::zero();
    for j in 0..=d / 2 {
        let mut term = factorial(d) / (factorial(j) * factorial(d - 2 * j) * rat(1 << j, 1));
        for _ in 0..d - 2 * j {
            term *= x;
        }
        if j % 2 == 1 {
            term = -term;
        }
        total += term;
    }
    total
}

#[test]
fn frozen_exact_values() {
    // C_2^(1/2)(1/2) = 2λ(1+λ)x² - λ = -1/8
    let v = gegenbauer_exact(&rat(1, 2), 2, &rat(1, 2));
    assert_eq!(v, rat(-1, 8));
    assert_eq!(
        gegenbauer_eval(GegenbauerSpec::new(0.5, 2).unwrap(), 0.5),
        -0.125
    );
    assert_eq!(hermite_exact(2, &rat(2, 1)), rat(3, 1));
    assert_eq!(hermite_exact(3, &rat(1, 1)), rat(-2, 1));
}

#[test]
fn recurrence_matches_explicit_sum() {
    let lambdas = [(1, 2), (1, 1), (3, 2), (6, 1), (50, 1)];
    for &(ln, ld) in &lambdas {
        let lambda_q = rat(ln, ld);
        let lambda = ln as f64 / ld as f64;
        for d in 0..=15 {
            let spec = GegenbauerSpec::new(lambda, d).unwrap();
            let mut max_rel: f64 = 0.0;
            for i in 0..100 {
                // x = -1 + (2i + 1)/100 is exactly representable as a rational
                let x_q = rat(-100 + 2 * i + 1, 100);
                let x = x_q.to_f64().unwrap();
                let exact = gegenbauer_exact(&lambda_q, d, &x_q).to_f64().unwrap();
                let got = gegenbauer_eval(spec, x);
                // Relative to the polynomial's scale on [-1, 1] (its value at 1).
                let scale = gegenbauer_eval(spec, 1.0).abs().max(exact.abs());
                max_rel = max_rel.max((got - exact).abs() / scale);
            }
            assert!(max_rel <= 1e-11, "λ={lambda} d={d}: {max_rel:e}");
        }
    }
}

#[test]
fn hermite_recurrence_matches_explicit_sum() {
    for d in 0..=15 {
        for i in 0..100 {
            let x_q = rat(-300 + 6 * i + 3, 100);
            let x = x_q.to_f64().unwrap();
            let exact = hermite_exact(d, &x_q).to_f64().unwrap();
            let got = hermite_eval(HermiteSpec::new(d), x);
            let scale = hermite_eval(HermiteSpec::new(d), 3.0).abs().max(1.0);
            assert!((got - exact).abs() <= 1e-11 * scale, "d={d} x={x}");
        }
    }
}

#[test]
fn scaled_evaluation_converges_to_hermite() {
    for d in 0..=8 {
        for i in 0..=12 {
            let s = -3.0 + 0.5 * i as f64;
            let h = hermite_eval(HermiteSpec::new(d), s);
            let gaps: Vec<f64> = [1e1, 1e2, 1e3, 1e4]
                .iter()
                .map(|&lambda| {
                    let spec = GegenbauerSpec::new(lambda, d).unwrap();
                    (gegenbauer_eval_scaled(spec, s) - h).abs()
                })
                .collect();
            for w in gaps.windows(2) {
                assert!(w[1] <= w[0] + 1e-12, "d={d} s={s}: {gaps:?}");
            }
            assert!(gaps[3] < 1e-2 * (1.0 + h.abs()), "d={d} s={s}: {gaps:?}");
        }
    }
    let spec = GegenbauerSpec::new(1e8, 2).unwrap();
    assert!((gegenbauer_eval_scaled(spec, 2.0) - 3.0).abs() < 1e-7);
}

#[test]
fn scaled_evaluation_stays_finite_at_scale() {
    let spec = GegenbauerSpec::new(1e4, 100).unwrap();
    let edge = (2.0f64 * 1e4).sqrt();
    for s in [0.0, 1.0, 10.0, edge] {
        assert!(gegenbauer_eval_scaled(spec, s).is_finite());
    }
}

const LOG_GAMMA_REFERENCE: &[(f64, f64)] = &[
    (0.001, 6.9071788853838536617),
    (0.01, 4.5994798780420217016),
    (0.1, 2.252712651734205902),
    (0.5, 0.57236494292470008707),
    (0.75, 0.20328095143129537148),
    (0.999, 0.00057803853289138023817),
    (1.001, -0.00057639359828330615152),
    (1.5, -0.12078223763524522235),
    (1.999, -0.00042246180069210728418),
    (2.001, 0.00042310673480011699119),
    (2.5, 0.28468287047291915963),
    (3.7, 1.4280723266653881292),
    (10.0, 12.801827480081469611),
    (33.3, 82.603723581654943008),
    (100.5, 361.43554046777762156),
    (1234.5, 7550.5509010778948957),
    (1e5, 1051287.7089736568949),
    (1e6, 12815504.56914761166),
];

#[test]
fn log_gamma_relative_accuracy() {
    for &(x, expected) in LOG_GAMMA_REFERENCE {
        let got = log_gamma(x).unwrap();
        let rel = (got - expected).abs() / expected.abs();
        assert!(rel <= 1e-13, "x={x}: got {got}, rel {rel:e}");
    }
    assert_eq!(log_gamma(1.0).unwrap(), 0.0);
}

#[test]
fn log_beta_identities() {
    assert_eq!(log_beta(1.0, 1.0).unwrap(), 0.0);
    assert!((log_beta(0.5, 0.5).unwrap() - std::f64::consts::PI.ln()).abs() < 1e-15);
    // B(2, 2) = 1/6, B(1, d) = 1/d.
    assert!((log_beta(2.0, 2.0).unwrap() + 6f64.ln()).abs() < 1e-15);
    for d in 1..50 {
        assert!((log_beta(1.0, d as f64).unwrap() + (d as f64).ln()).abs() < 1e-13);
    }
    assert!(log_beta(-1.0, 2.0).is_err());
}

#[test]
fn c_lambda_normalizes_the_weight() {
    for lambda in [0.5, 1.0, 1.5, 2.0, 6.0, 24.5] {
        let c = c_lambda(lambda).unwrap();
        let res = integrate_piecewise(
            |t: f64| c * (1.0 - t * t).powf(lambda - 0.5),
            &[],
            (-1.0, 1.0),
            1e-12,
        )
        .unwrap();
        assert!(res.converged);
        assert!((res.value - 1.0).abs() < 1e-10, "λ={lambda}: {}", res.value);
    }
}
