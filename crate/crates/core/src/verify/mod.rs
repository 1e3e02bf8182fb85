//! Independent checks of the bounds against exact phase-resolved composition.
//!
//! Every random draw uses `ChaCha8Rng`. Samples are split into fixed-size
//! chunks; chunk `c` draws from stream `c` of the generator seeded with the
//! caller's seed, so results do not depend on how many threads run the chunks.

mod attain;
mod audit;

pub use attain::attain;
pub use audit::{
    equivalence_audit, scenario_containment_audit, spacing_scan, ContainmentAudit, ContainmentRow,
    EquivalenceAudit, EquivalenceRow, SpacingScan,
};

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bounds::{b_n_closed, s_n, RapiditySequence};
use crate::error::{domain, Error, Result};
use crate::transfer::{HyperbolicParams, TransferMatrix};

/// Hard containment band for sampled and constructed compositions.
pub const CONTAINMENT_TOL: f64 = 1e-10;
/// Accuracy of [`attain`] after recomposition.
pub const ATTAIN_TOL: f64 = 1e-8;
/// Containment band for physical scenarios.
pub const SCENARIO_TOL: f64 = 1e-9;
/// Largest sequence [`extremal_phase_search`] accepts.
pub const MAX_GRID_DIMENSION: usize = 4;

pub const GENERATOR: &str = "ChaCha8Rng (stream = chunk index, 1024 samples per chunk)";
const CHUNK: usize = 1024;

pub(crate) fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Per-barrier `(phi_alpha, phi_beta)` pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseAssignment {
    pub phases: Vec<(f64, f64)>,
}

impl PhaseAssignment {
    pub fn new(phases: Vec<(f64, f64)>) -> Self {
        Self { phases }
    }

    pub fn len(&self) -> usize {
        self.phases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phases.is_empty()
    }

    /// Compose the barriers of `seq` dressed with these phases.
    pub fn compose(&self, seq: &RapiditySequence) -> Result<TransferMatrix> {
        if self.phases.len() != seq.len() {
            return Err(domain(format!(
                "{} phase pairs for {} rapidities",
                self.phases.len(),
                seq.len()
            )));
        }
        compose_dressed(seq.as_slice(), &self.phases)
    }
}

fn compose_dressed(thetas: &[f64], phases: &[(f64, f64)]) -> Result<TransferMatrix> {
    let mut acc: Option<TransferMatrix> = None;
    for (&theta, &(pa, pb)) in thetas.iter().zip(phases) {
        let m = TransferMatrix::from_polar(HyperbolicParams::new(theta, pa, pb)?)?;
        acc = Some(match acc {
            None => m,
            Some(a) => a.compose(&m)?,
        });
    }
    acc.ok_or(Error::EmptySequence)
}

/// Extremes of the compound rapidity over a set of phase assignments.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub theta_min_observed: f64,
    pub theta_max_observed: f64,
    pub argmin: PhaseAssignment,
    pub argmax: PhaseAssignment,
    pub sample_count: usize,
    pub seed: u64,
    pub generator: &'static str,
}

#[derive(Debug, Clone)]
struct Extremes {
    min: (f64, usize, Vec<(f64, f64)>),
    max: (f64, usize, Vec<(f64, f64)>),
}

impl Extremes {
    fn single(theta: f64, index: usize, phases: Vec<(f64, f64)>) -> Self {
        Self {
            min: (theta, index, phases.clone()),
            max: (theta, index, phases),
        }
    }

    // ties go to the lower sample index so the reduction order is irrelevant
    fn merge(self, other: Self) -> Self {
        let pick_min = |a: (f64, usize, Vec<(f64, f64)>), b: (f64, usize, Vec<(f64, f64)>)| {
            if b.0 < a.0 || (b.0 == a.0 && b.1 < a.1) {
                b
            } else {
                a
            }
        };
        let pick_max = |a: (f64, usize, Vec<(f64, f64)>), b: (f64, usize, Vec<(f64, f64)>)| {
            if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) {
                b
            } else {
                a
            }
        };
        Self {
            min: pick_min(self.min, other.min),
            max: pick_max(self.max, other.max),
        }
    }

    fn into_result(self, sample_count: usize, seed: u64, generator: &'static str) -> SweepResult {
        SweepResult {
            theta_min_observed: self.min.0,
            theta_max_observed: self.max.0,
            argmin: PhaseAssignment::new(self.min.2),
            argmax: PhaseAssignment::new(self.max.2),
            sample_count,
            seed,
            generator,
        }
    }
}

fn check_band(theta: f64, low: f64, high: f64) -> Result<()> {
    if theta < low - CONTAINMENT_TOL || theta > high + CONTAINMENT_TOL || !theta.is_finite() {
        return Err(Error::BoundViolation { theta, low, high });
    }
    Ok(())
}

/// Compose `seq` with `samples` uniformly random phase assignments and record
/// the extreme compound rapidities. Any sample outside `[B_n, S_n]` (beyond
/// [`CONTAINMENT_TOL`]) aborts with [`Error::BoundViolation`].
pub fn random_phase_sweep(
    seq: &RapiditySequence,
    samples: usize,
    seed: u64,
) -> Result<SweepResult> {
    if samples == 0 {
        return Err(domain("at least one sample is required"));
    }
    let low = b_n_closed(seq)?;
    let high = s_n(seq);
    let n = seq.len();
    let chunks = samples.div_ceil(CHUNK);
    let best = (0..chunks)
        .into_par_iter()
        .map(|chunk| -> Result<Extremes> {
            let mut rng = rng_for(seed, chunk as u64);
            let start = chunk * CHUNK;
            let end = (start + CHUNK).min(samples);
            let mut acc: Option<Extremes> = None;
            for index in start..end {
                let phases: Vec<(f64, f64)> = (0..n)
                    .map(|_| {
                        (
                            PI - 2.0 * PI * rng.gen::<f64>(),
                            PI - 2.0 * PI * rng.gen::<f64>(),
                        )
                    })
                    .collect();
                let theta = compose_dressed(seq.as_slice(), &phases)?.rapidity();
                check_band(theta, low, high)?;
                let here = Extremes::single(theta, index, phases);
                acc = Some(match acc {
                    None => here,
                    Some(a) => a.merge(here),
                });
            }
            Ok(acc.expect("chunks are non-empty"))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .reduce(Extremes::merge)
        .expect("at least one chunk");
    Ok(best.into_result(samples, seed, GENERATOR))
}

/// Compass search on the free `phi_beta` (entries `1..`) starting from `start`,
/// minimising `sign * theta`. Steps halve from `step` down to `1e-12`.
fn polish(
    thetas: &[f64],
    start: Vec<(f64, f64)>,
    sign: f64,
    step: f64,
) -> Result<(f64, Vec<(f64, f64)>)> {
    let mut best = start;
    let mut value = sign * compose_dressed(thetas, &best)?.rapidity();
    let mut h = step;
    while h > 1e-12 {
        let mut improved = false;
        for i in 1..best.len() {
            for dir in [1.0, -1.0] {
                let mut trial = best.clone();
                trial[i].1 += dir * h;
                let v = sign * compose_dressed(thetas, &trial)?.rapidity();
                if v < value {
                    (value, best, improved) = (v, trial, true);
                }
            }
        }
        if !improved {
            h *= 0.5;
        }
    }
    Ok((sign * value, best))
}

/// Exhaustive grid over the reduced phase gauge, then a local polish.
///
/// All `phi_alpha` are fixed to zero and the first `phi_beta` is fixed by the
/// overall phase freedom, leaving `n - 1` phases on a grid of
/// `grid_points_per_phase` equally spaced values in `[0, 2 pi)`. Moduli of the
/// product do not depend on the removed phases.
///
/// An interior minimum (compound rapidity zero) is an isolated point of phase
/// space and generally falls between grid nodes, where the grid value is off
/// by an amount linear in the spacing. The best grid nodes are therefore
/// refined by a deterministic compass search; `sample_count` reports the grid
/// size only.
pub fn extremal_phase_search(
    seq: &RapiditySequence,
    grid_points_per_phase: usize,
) -> Result<SweepResult> {
    let n = seq.len();
    if n == 0 {
        return Err(Error::EmptySequence);
    }
    if n > MAX_GRID_DIMENSION {
        return Err(Error::Dimension {
            n,
            max: MAX_GRID_DIMENSION,
        });
    }
    if grid_points_per_phase == 0 {
        return Err(domain("grid needs at least one point per phase"));
    }
    let g = grid_points_per_phase;
    let free = n - 1;
    let total = g.pow(free as u32);
    let step = 2.0 * PI / g as f64;
    let best = (0..total)
        .into_par_iter()
        .map(|index| -> Result<Extremes> {
            let mut rest = index;
            let phases: Vec<(f64, f64)> = (0..n)
                .map(|i| {
                    if i == 0 {
                        (0.0, 0.0)
                    } else {
                        let j = rest % g;
                        rest /= g;
                        (0.0, j as f64 * step)
                    }
                })
                .collect();
            let theta = compose_dressed(seq.as_slice(), &phases)?.rapidity();
            Ok(Extremes::single(theta, index, phases))
        })
        .try_reduce_with(|a, b| Ok(a.merge(b)))
        .expect("grid is non-empty")?;
    let mut best = best;
    if free > 0 {
        let (lo, lo_phases) = polish(seq.as_slice(), best.min.2.clone(), 1.0, step)?;
        if lo < best.min.0 {
            best.min = (lo, best.min.1, lo_phases);
        }
        let (hi, hi_phases) = polish(seq.as_slice(), best.max.2.clone(), -1.0, step)?;
        if hi > best.max.0 {
            best.max = (hi, best.max.1, hi_phases);
        }
    }
    Ok(best.into_result(total, 0, "grid + compass polish"))
}
