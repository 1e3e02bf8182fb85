//! Phase-independent bounds on compound barriers.
//!
//! Everything here works on rapidities `theta_i = acosh|alpha_i|`. Given only
//! the individual rapidities, the compound rapidity is confined to
//! `[B_n, S_n]` with `S_n = sum theta_i` and
//! `B_n = max(2 theta_peak - S_n, 0)`. Transmission, reflection and particle
//! number envelopes follow by mapping that interval through `sech^2`, `tanh^2`
//! and `sinh^2`.

mod convert;
mod criteria;
pub mod identities;
mod pair;

pub use convert::{
    n_from_theta, r_from_theta, t_from_theta, theta_from_n, theta_from_r, theta_from_t,
};
pub use criteria::{
    classical_transmission, production_guaranteed, resonance_possible, ProductionCheck,
    ResonanceCheck,
};
pub use pair::{
    two_barrier_n_bounds, two_barrier_n_bounds_rational, two_barrier_r_bounds,
    two_barrier_r_bounds_rational, two_barrier_t_bounds, two_barrier_t_bounds_rational,
};

use crate::error::{domain, Error, Result};
use crate::transfer::{TransferMatrix, THETA_LIMIT};

/// Closed interval `[low, high]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub low: f64,
    pub high: f64,
}

impl Interval {
    pub fn new(low: f64, high: f64) -> Self {
        debug_assert!(low <= high, "interval [{low}, {high}] is reversed");
        Self { low, high }
    }

    pub fn contains(&self, x: f64, tol: f64) -> bool {
        x >= self.low - tol && x <= self.high + tol
    }

    pub fn width(&self) -> f64 {
        self.high - self.low
    }
}

/// Non-negative finite rapidities, one per barrier or excitation episode.
#[derive(Debug, Clone, PartialEq)]
pub struct RapiditySequence {
    thetas: Vec<f64>,
}

impl RapiditySequence {
    pub fn new(thetas: Vec<f64>) -> Result<Self> {
        if let Some(bad) = thetas.iter().find(|t| !(t.is_finite() && **t >= 0.0)) {
            return Err(domain(format!(
                "rapidities must be finite and non-negative, got {bad}"
            )));
        }
        Ok(Self { thetas })
    }

    pub fn from_transmissions(ts: &[f64]) -> Result<Self> {
        Self::new(ts.iter().map(|&t| theta_from_t(t)).collect::<Result<_>>()?)
    }

    pub fn from_reflections(rs: &[f64]) -> Result<Self> {
        Self::new(rs.iter().map(|&r| theta_from_r(r)).collect::<Result<_>>()?)
    }

    pub fn from_particle_numbers(ns: &[f64]) -> Result<Self> {
        Self::new(ns.iter().map(|&n| theta_from_n(n)).collect::<Result<_>>()?)
    }

    pub fn from_matrices(ms: &[TransferMatrix]) -> Self {
        Self {
            thetas: ms.iter().map(TransferMatrix::rapidity).collect(),
        }
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.thetas
    }

    pub fn len(&self) -> usize {
        self.thetas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.thetas.is_empty()
    }

    /// Largest rapidity, 0 for an empty sequence.
    pub fn peak(&self) -> f64 {
        self.thetas.iter().copied().fold(0.0, f64::max)
    }
}

/// `S_n`, the sum of all rapidities.
pub fn s_n(seq: &RapiditySequence) -> f64 {
    seq.thetas.iter().sum()
}

/// `B_n` by the step recursion
/// `B_{m+1} = (theta_{m+1} - S_m) H(theta_{m+1} - S_m) + (B_m - theta_{m+1}) H(B_m - theta_{m+1})`.
pub fn b_n_iterative(seq: &RapiditySequence) -> Result<f64> {
    let (&first, rest) = seq.thetas.split_first().ok_or(Error::EmptySequence)?;
    let heaviside_ramp = |x: f64| if x > 0.0 { x } else { 0.0 };
    let (mut b, mut s) = (first, first);
    for &theta in rest {
        b = heaviside_ramp(theta - s) + heaviside_ramp(b - theta);
        s += theta;
    }
    Ok(b)
}

/// `B_n = max(2 theta_peak - S_n, 0)`.
pub fn b_n_closed(seq: &RapiditySequence) -> Result<f64> {
    if seq.is_empty() {
        return Err(Error::EmptySequence);
    }
    Ok((2.0 * seq.peak() - s_n(seq)).max(0.0))
}

/// Envelope of every quantity the compound barrier can reach over all phases.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundsReport {
    pub s_n: f64,
    pub b_n: f64,
    pub theta_peak: f64,
    pub theta_off_peak: f64,
    /// `[sech^2 S_n, sech^2 B_n]`; the low edge is `T_min`.
    pub t_interval: Interval,
    /// `[tanh^2 B_n, tanh^2 S_n]`; the high edge is `R_max`.
    pub r_interval: Interval,
    /// `[sinh^2 B_n, sinh^2 S_n]`; the high edge is `N_max`.
    pub n_interval: Interval,
    pub alpha_mod_interval: Interval,
    pub beta_mod_interval: Interval,
}

impl BoundsReport {
    pub fn theta_interval(&self) -> Interval {
        Interval::new(self.b_n, self.s_n)
    }

    /// Single-barrier and otherwise degenerate envelopes have `B_n = S_n`.
    pub fn is_degenerate(&self) -> bool {
        self.b_n == self.s_n
    }
}

pub fn bounds_report(seq: &RapiditySequence) -> Result<BoundsReport> {
    let b = b_n_closed(seq)?;
    let s = s_n(seq);
    if s > THETA_LIMIT {
        return Err(Error::Overflow {
            theta: s,
            limit: THETA_LIMIT,
        });
    }
    let peak = seq.peak();
    Ok(BoundsReport {
        s_n: s,
        b_n: b,
        theta_peak: peak,
        theta_off_peak: s - peak,
        t_interval: Interval::new(t_from_theta(s), t_from_theta(b)),
        r_interval: Interval::new(r_from_theta(b), r_from_theta(s)),
        n_interval: Interval::new(n_from_theta(b), n_from_theta(s)),
        alpha_mod_interval: Interval::new(b.cosh(), s.cosh()),
        beta_mod_interval: Interval::new(b.sinh(), s.sinh()),
    })
}
