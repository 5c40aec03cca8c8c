use crate::{Error, Result};

/// `ln Γ(x)` for `x > 0`.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || x.is_infinite() {
        return Err(Error::invalid("log_gamma argument", x));
    }
    Ok(libm::lgamma_r(x).0)
}

/// `ln B(a, b) = ln Γ(a) + ln Γ(b) - ln Γ(a + b)`.
pub fn log_beta(a: f64, b: f64) -> Result<f64> {
    if !(a > 0.0) || a.is_infinite() {
        return Err(Error::invalid("log_beta argument a", a));
    }
    if !(b > 0.0) || b.is_infinite() {
        return Err(Error::invalid("log_beta argument b", b));
    }
    Ok(log_gamma(a)? + log_gamma(b)? - log_gamma(a + b)?)
}

/// `ln c_λ` where `c_λ = Γ(λ+1) / (Γ(1/2) Γ(λ+1/2))` normalizes the weight
/// `(1 - t²)^(λ - 1/2)` on `[-1, 1]` to a probability measure.
pub fn log_c_lambda(lambda: f64) -> Result<f64> {
    if !(lambda > 0.0) || lambda.is_infinite() {
        return Err(Error::invalid("lambda", lambda));
    }
    Ok(-log_beta(0.5, lambda + 0.5)?)
}

pub fn c_lambda(lambda: f64) -> Result<f64> {
    log_c_lambda(lambda).map(libm::exp)
}
