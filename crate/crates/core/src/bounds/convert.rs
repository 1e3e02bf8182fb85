//! Conversions between rapidity and `T`, `R`, `N`.
//!
//! `theta = sech^-1 sqrt(T) = tanh^-1 sqrt(R) = sinh^-1 sqrt(N)`. All three
//! inverses go through `asinh` of `sqrt(N)`, with `N = (1 - T)/T = R/(1 - R)`,
//! which stays accurate at both ends of the range.

use crate::error::{domain, Result};

pub fn theta_from_t(t: f64) -> Result<f64> {
    if !(t > 0.0 && t <= 1.0) {
        return Err(domain(format!("transmission must lie in (0, 1], got {t}")));
    }
    Ok(((1.0 - t) / t).sqrt().asinh())
}

pub fn theta_from_r(r: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&r) {
        return Err(domain(format!("reflection must lie in [0, 1), got {r}")));
    }
    Ok((r / (1.0 - r)).sqrt().asinh())
}

pub fn theta_from_n(n: f64) -> Result<f64> {
    if !(n >= 0.0 && n.is_finite()) {
        return Err(domain(format!(
            "particle number must be finite and non-negative, got {n}"
        )));
    }
    Ok(n.sqrt().asinh())
}

/// `sech^2 theta`.
pub fn t_from_theta(theta: f64) -> f64 {
    let c = theta.cosh();
    1.0 / (c * c)
}

/// `tanh^2 theta`.
pub fn r_from_theta(theta: f64) -> f64 {
    theta.tanh().powi(2)
}

/// `sinh^2 theta`.
pub fn n_from_theta(theta: f64) -> f64 {
    theta.sinh().powi(2)
}
