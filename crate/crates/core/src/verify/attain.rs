use super::PhaseAssignment;
use crate::bounds::{b_n_closed, s_n, RapiditySequence};
use crate::error::{Error, Result};
use crate::transfer::{wrap_phase, HyperbolicParams, TransferMatrix};

const EDGE_SLACK: f64 = 1e-12;

/// Phases that make the compound rapidity of `seq` equal `target`.
///
/// Barriers are added left to right. With running rapidity `a`, the next
/// barrier `b` and relative phase `phi`,
/// `cosh 2x = cosh 2a cosh 2b + sinh 2a sinh 2b cos phi`, so any
/// `x` in `[|a - b|, a + b]` is reachable. Each step picks the `x` closest to
/// the target among those from which the remaining barriers can still land
/// exactly on it; the final step then hits the target.
pub fn attain(seq: &RapiditySequence, target: f64) -> Result<PhaseAssignment> {
    let thetas = seq.as_slice();
    if thetas.is_empty() {
        return Err(Error::EmptySequence);
    }
    let low = b_n_closed(seq)?;
    let high = s_n(seq);
    if !target.is_finite() || target < low - EDGE_SLACK || target > high + EDGE_SLACK {
        return Err(Error::TargetOutOfRange { target, low, high });
    }
    let target = target.clamp(low, high);

    let n = thetas.len();
    // rest_sum[m], rest_peak[m] describe barriers m+1..n
    let mut rest_sum = vec![0.0; n];
    let mut rest_peak = vec![0.0f64; n];
    for m in (0..n - 1).rev() {
        rest_sum[m] = rest_sum[m + 1] + thetas[m + 1];
        rest_peak[m] = rest_peak[m + 1].max(thetas[m + 1]);
    }

    let mut phases = Vec::with_capacity(n);
    phases.push((0.0, 0.0));
    let mut current = TransferMatrix::from_polar(HyperbolicParams::new(thetas[0], 0.0, 0.0)?)?;
    let mut a = thetas[0];
    for m in 1..n {
        let b = thetas[m];
        let (r_sum, r_peak) = (rest_sum[m], rest_peak[m]);
        // target stays reachable from x iff B({x} + rest) <= target <= x + rest_sum
        let feasible_lo = (target - r_sum).max(2.0 * r_peak - r_sum - target);
        let feasible_hi = target + r_sum;
        let lo = (a - b).abs().max(feasible_lo);
        let hi = (a + b).min(feasible_hi);
        let x = if lo <= hi {
            target.clamp(lo, hi)
        } else {
            0.5 * (lo + hi)
        };

        let denom = (2.0 * a).sinh() * (2.0 * b).sinh();
        let phi = if denom > 0.0 {
            let cos_phi = ((2.0 * x).cosh() - (2.0 * a).cosh() * (2.0 * b).cosh()) / denom;
            cos_phi.clamp(-1.0, 1.0).acos()
        } else {
            0.0
        };
        // relative phase of the new term in alpha is phi_beta(current) - phi_alpha(current) - psi
        let polar = current.to_polar();
        let psi = wrap_phase(polar.phi_beta() - polar.phi_alpha() - phi);
        phases.push((0.0, psi));
        current = current.compose(&TransferMatrix::from_polar(HyperbolicParams::new(
            b, 0.0, psi,
        )?)?)?;
        a = x;
    }
    Ok(PhaseAssignment::new(phases))
}
