//! Resonance and particle-production criteria.

use super::convert::{n_from_theta, t_from_theta, theta_from_n};
use super::{b_n_closed, s_n, RapiditySequence};
use crate::error::{domain, Result};

/// Product of the individual transmissions (particle picture, no interference).
pub fn classical_transmission(ts: &[f64]) -> Result<f64> {
    if let Some(bad) = ts.iter().find(|t| !(0.0..=1.0).contains(*t)) {
        return Err(domain(format!(
            "transmission must lie in [0, 1], got {bad}"
        )));
    }
    Ok(ts.iter().product())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResonanceCheck {
    /// A perfect transmission resonance is not excluded.
    pub possible: bool,
    /// `T_peak - sech^2(S_n / 2)`; non-negative exactly when `possible`.
    pub margin: f64,
    /// Transmission of the most opaque barrier, `sech^2 theta_peak`.
    pub t_peak: f64,
    /// `sech^2 S_n`.
    pub t_min: f64,
    /// Half-angle form of `sech^2(S_n / 2)`: `2 sqrt(T_min) / (1 + sqrt(T_min))`.
    pub threshold: f64,
}

/// Necessary condition for a perfect resonance `T = 1` of the compound barrier.
///
/// `T = 1` needs `B_n = 0`, i.e. `2 theta_peak <= S_n`, which in terms of
/// transmissions is `T_peak >= 2 sqrt(T_min) / (1 + sqrt(T_min))`.
/// The decision is taken in rapidity space so it matches `B_n == 0` exactly.
pub fn resonance_possible(ts: &[f64]) -> Result<ResonanceCheck> {
    let seq = RapiditySequence::from_transmissions(ts)?;
    let b = b_n_closed(&seq)?;
    let s = s_n(&seq);
    let t_peak = t_from_theta(seq.peak());
    let t_min = t_from_theta(s);
    let root = t_min.sqrt();
    Ok(ResonanceCheck {
        possible: b == 0.0,
        margin: t_peak - t_from_theta(0.5 * s),
        t_peak,
        t_min,
        threshold: 2.0 * root / (1.0 + root),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProductionCheck {
    /// Some net production survives for every choice of phases.
    pub guaranteed: bool,
    /// `sinh^2 B_n`.
    pub n_min: f64,
    /// `sinh^2 S_n`.
    pub n_max: f64,
    /// Production of the strongest episode, `sinh^2 theta_peak`.
    pub n_peak: f64,
    /// `(sqrt(N_max + 1) - 1) / 2`; production is guaranteed when `N_peak` exceeds it.
    pub threshold: f64,
}

/// Sufficient condition `N_peak > (sqrt(N_max + 1) - 1)/2` for `N_min > 0`.
///
/// Equivalent to `B_n > 0`; evaluated in rapidity space.
pub fn production_guaranteed(ns: &[f64]) -> Result<ProductionCheck> {
    let seq = RapiditySequence::new(ns.iter().map(|&n| theta_from_n(n)).collect::<Result<_>>()?)?;
    let b = b_n_closed(&seq)?;
    let n_max = n_from_theta(s_n(&seq));
    Ok(ProductionCheck {
        guaranteed: b > 0.0,
        n_min: n_from_theta(b),
        n_max,
        n_peak: n_from_theta(seq.peak()),
        threshold: ((n_max + 1.0).sqrt() - 1.0) / 2.0,
    })
}
