use super::{log_gamma, GegenbauerSpec, HermiteSpec};

/// `C_d^(λ)(x)` by the recurrence
/// `(k+1) C_{k+1} = 2(k+λ) x C_k - (k+2λ-1) C_{k-1}`.
pub fn gegenbauer_eval(spec: GegenbauerSpec, x: f64) -> f64 {
    let lambda = spec.lambda();
    let d = spec.degree();
    if d == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = 2.0 * lambda * x;
    for k in 1..d {
        let kf = k as f64;
        let next = (2.0 * (kf + lambda) * x * cur - (kf + 2.0 * lambda - 1.0) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// `d/dx C_d^(λ)(x) = 2λ C_{d-1}^(λ+1)(x)`.
pub fn gegenbauer_derivative(spec: GegenbauerSpec, x: f64) -> f64 {
    let d = spec.degree();
    if d == 0 {
        return 0.0;
    }
    let lambda = spec.lambda();
    let shifted = GegenbauerSpec::new(lambda + 1.0, d - 1).expect("lambda + 1 > 0");
    2.0 * lambda * gegenbauer_eval(shifted, x)
}

/// `S_d(s) = d! / (2λ)^(d/2) · C_d^(λ)(s / sqrt(2λ))`.
///
/// The prefactor is folded into the recurrence:
/// `S_{k+1} = ((k+λ)/λ) s S_k - k(k+2λ-1)/(2λ) S_{k-1}`, with `S_0 = 1`,
/// `S_1 = s`. As `λ → ∞` this becomes the Hermite recurrence.
pub fn gegenbauer_eval_scaled(spec: GegenbauerSpec, s: f64) -> f64 {
    let lambda = spec.lambda();
    let d = spec.degree();
    if d == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = s;
    for k in 1..d {
        let kf = k as f64;
        let next = (kf + lambda) / lambda * s * cur
            - kf * (kf + 2.0 * lambda - 1.0) / (2.0 * lambda) * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `ln |C_d^(λ)(x)|`, finite for degrees and indices where the raw value
/// would overflow. Returns `-inf` at a root.
pub fn gegenbauer_log_abs(spec: GegenbauerSpec, x: f64) -> f64 {
    let lambda = spec.lambda();
    let d = spec.degree() as f64;
    let scale = libm::sqrt(2.0 * lambda);
    let s = gegenbauer_eval_scaled(spec, scale * x);
    libm::log(libm::fabs(s)) + 0.5 * d * libm::log(2.0 * lambda)
        - log_gamma(d + 1.0).expect("d + 1 > 0")
}

/// `h_d(x)` by `h_{k+1} = x h_k - k h_{k-1}`.
pub fn hermite_eval(spec: HermiteSpec, x: f64) -> f64 {
    let d = spec.degree;
    if d == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = x;
    for k in 1..d {
        let next = x * cur - k as f64 * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `h_d(x) / sqrt(d!)`, orthonormal under the standard Gaussian measure.
pub fn hermite_eval_normalized(spec: HermiteSpec, x: f64) -> f64 {
    let d = spec.degree;
    if d == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = x;
    for k in 1..d {
        let kf = k as f64;
        let next = (x * cur - libm::sqrt(kf) * prev) / libm::sqrt(kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}
