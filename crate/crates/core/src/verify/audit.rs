use rand::seq::SliceRandom;
use rand::Rng;

use super::{rng_for, SCENARIO_TOL};
use crate::barrier::{check_layout, scenario_transfer, transfer_of, BarrierSpec, WaveContext};
use crate::bounds::{
    b_n_closed, b_n_iterative, bounds_report, two_barrier_t_bounds, BoundsReport, Interval,
    RapiditySequence,
};
use crate::error::{domain, Result};
use crate::table::{Cell, Table};
use crate::transfer::compose_sequence;

const EQUIVALENCE_TOL: f64 = 1e-12;
const SHUFFLES: usize = 5;

#[derive(Debug, Clone, PartialEq)]
pub struct EquivalenceRow {
    pub n: usize,
    pub trials: usize,
    /// Trials where iterative and closed-form `B_n` agree.
    pub agree: usize,
    /// Trials where `B_n` survived every random shuffle.
    pub symmetric: usize,
    pub max_abs_diff: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EquivalenceAudit {
    pub seed: u64,
    pub rows: Vec<EquivalenceRow>,
}

impl EquivalenceAudit {
    pub fn passed(&self) -> bool {
        self.rows
            .iter()
            .all(|r| r.agree == r.trials && r.symmetric == r.trials)
    }

    pub fn to_table(&self) -> Table {
        let mut t = Table::new([
            "n",
            "trials",
            "agree",
            "symmetric",
            "max_abs_diff",
            "passed",
        ]);
        t.meta("seed", self.seed.to_string());
        for r in &self.rows {
            t.push(vec![
                Cell::Int(r.n as i64),
                Cell::Int(r.trials as i64),
                Cell::Int(r.agree as i64),
                Cell::Int(r.symmetric as i64),
                Cell::Float(r.max_abs_diff),
                Cell::Bool(r.agree == r.trials && r.symmetric == r.trials),
            ]);
        }
        t
    }
}

/// Compare iterative and closed-form `B_n` and their permutation symmetry on
/// random sequences of every length `2..=n_max`.
///
/// Half of the sequences get one inflated entry so that both `B_n = 0` and
/// `B_n > 0` are exercised.
pub fn equivalence_audit(n_max: usize, trials: usize, seed: u64) -> Result<EquivalenceAudit> {
    if n_max < 2 {
        return Err(domain("equivalence audit needs n_max >= 2"));
    }
    let mut rows = Vec::with_capacity(n_max - 1);
    for n in 2..=n_max {
        let mut rng = rng_for(seed, n as u64);
        let mut row = EquivalenceRow {
            n,
            trials,
            agree: 0,
            symmetric: 0,
            max_abs_diff: 0.0,
        };
        for _ in 0..trials {
            let mut thetas: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..4.0)).collect();
            if rng.gen_bool(0.5) {
                let i = rng.gen_range(0..n);
                thetas[i] += rng.gen_range(0.0..4.0 * n as f64);
            }
            let seq = RapiditySequence::new(thetas.clone())?;
            let closed = b_n_closed(&seq)?;
            let diff = (b_n_iterative(&seq)? - closed).abs();
            row.max_abs_diff = row.max_abs_diff.max(diff);
            if diff <= EQUIVALENCE_TOL {
                row.agree += 1;
            }
            let mut symmetric = true;
            for _ in 0..SHUFFLES {
                thetas.shuffle(&mut rng);
                let shuffled = RapiditySequence::new(thetas.clone())?;
                symmetric &= (b_n_closed(&shuffled)? - closed).abs() <= EQUIVALENCE_TOL
                    && (b_n_iterative(&shuffled)? - closed).abs() <= EQUIVALENCE_TOL;
            }
            if symmetric {
                row.symmetric += 1;
            }
        }
        rows.push(row);
    }
    Ok(EquivalenceAudit { seed, rows })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ContainmentRow {
    pub k: f64,
    /// Individual barrier transmissions.
    pub transmissions: Vec<f64>,
    pub t_exact: f64,
    pub r_exact: f64,
    pub n_exact: f64,
    pub report: BoundsReport,
    /// Smallest distance to an envelope edge (negative when outside), per quantity.
    pub t_margin: f64,
    pub r_margin: f64,
    pub n_margin: f64,
    pub contained: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ContainmentAudit {
    pub rows: Vec<ContainmentRow>,
    pub worst_t_margin: f64,
    pub worst_r_margin: f64,
    pub worst_n_margin: f64,
    pub max_t: f64,
    pub k_at_max_t: f64,
    pub min_t: f64,
    pub k_at_min_t: f64,
    pub violations: usize,
}

impl ContainmentAudit {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }

    pub fn to_table(&self) -> Table {
        let mut t = Table::new([
            "k",
            "T_exact",
            "R_exact",
            "N_exact",
            "T_min",
            "T_upper",
            "R_low",
            "R_high",
            "N_low",
            "N_high",
            "contained",
        ]);
        t.meta("containment_tolerance", SCENARIO_TOL.to_string());
        for r in &self.rows {
            t.push(vec![
                Cell::Float(r.k),
                Cell::Float(r.t_exact),
                Cell::Float(r.r_exact),
                Cell::Float(r.n_exact),
                Cell::Float(r.report.t_interval.low),
                Cell::Float(r.report.t_interval.high),
                Cell::Float(r.report.r_interval.low),
                Cell::Float(r.report.r_interval.high),
                Cell::Float(r.report.n_interval.low),
                Cell::Float(r.report.n_interval.high),
                Cell::Bool(r.contained),
            ]);
        }
        t
    }
}

fn margin(x: f64, iv: Interval) -> f64 {
    (x - iv.low).min(iv.high - x)
}

/// Exact compound `T`, `R`, `N` of a physical scenario against the envelopes
/// built from the individual barriers, at every wavenumber.
pub fn scenario_containment_audit(
    specs: &[BarrierSpec],
    k_sweep: &[f64],
) -> Result<ContainmentAudit> {
    check_layout(specs)?;
    if specs.is_empty() {
        return Err(crate::error::Error::EmptySequence);
    }
    let mut rows = Vec::with_capacity(k_sweep.len());
    for &k in k_sweep {
        let ctx = WaveContext::new(k)?;
        let ms = specs
            .iter()
            .map(|s| transfer_of(s, ctx))
            .collect::<Result<Vec<_>>>()?;
        let report = bounds_report(&RapiditySequence::from_matrices(&ms))?;
        let total = compose_sequence(&ms)?;
        let (t, r, n) = (
            total.transmission(),
            total.reflection(),
            total.particle_number(),
        );
        let n_scale = report.n_interval.high.max(1.0);
        let t_margin = margin(t, report.t_interval);
        let r_margin = margin(r, report.r_interval);
        let n_margin = margin(n, report.n_interval) / n_scale;
        let contained =
            t_margin >= -SCENARIO_TOL && r_margin >= -SCENARIO_TOL && n_margin >= -SCENARIO_TOL;
        rows.push(ContainmentRow {
            k,
            transmissions: ms.iter().map(|m| m.transmission()).collect(),
            t_exact: t,
            r_exact: r,
            n_exact: n,
            report,
            t_margin,
            r_margin,
            n_margin,
            contained,
        });
    }
    let fold_min = |f: fn(&ContainmentRow) -> f64| rows.iter().map(f).fold(f64::INFINITY, f64::min);
    let (mut max_t, mut k_at_max_t) = (f64::NEG_INFINITY, f64::NAN);
    let (mut min_t, mut k_at_min_t) = (f64::INFINITY, f64::NAN);
    for r in &rows {
        if r.t_exact > max_t {
            (max_t, k_at_max_t) = (r.t_exact, r.k);
        }
        if r.t_exact < min_t {
            (min_t, k_at_min_t) = (r.t_exact, r.k);
        }
    }
    Ok(ContainmentAudit {
        worst_t_margin: fold_min(|r| r.t_margin),
        worst_r_margin: fold_min(|r| r.r_margin),
        worst_n_margin: fold_min(|r| r.n_margin),
        max_t,
        k_at_max_t,
        min_t,
        k_at_min_t,
        violations: rows.iter().filter(|r| !r.contained).count(),
        rows,
    })
}

/// Compound transmission of two barriers as their edge-to-edge gap varies at fixed `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpacingScan {
    pub t1: f64,
    pub t2: f64,
    /// Two-barrier envelope `[T_min, T_upper]`.
    pub bounds: Interval,
    pub max_t: f64,
    pub gap_at_max: f64,
    pub min_t: f64,
    pub gap_at_min: f64,
    pub violations: usize,
}

pub fn spacing_scan(
    first: &BarrierSpec,
    second: &BarrierSpec,
    k: f64,
    gaps: &[f64],
) -> Result<SpacingScan> {
    let ctx = WaveContext::new(k)?;
    if gaps.is_empty() {
        return Err(domain("spacing scan needs at least one gap"));
    }
    let left = BarrierSpec {
        position: 0.0,
        ..first.clone()
    };
    let t1 = transfer_of(&left, ctx)?.transmission();
    let t2 = transfer_of(second, ctx)?.transmission();
    let bounds = two_barrier_t_bounds(t1, t2)?;
    let mut scan = SpacingScan {
        t1,
        t2,
        bounds,
        max_t: f64::NEG_INFINITY,
        gap_at_max: f64::NAN,
        min_t: f64::INFINITY,
        gap_at_min: f64::NAN,
        violations: 0,
    };
    for &gap in gaps {
        if !(gap.is_finite() && gap > 0.0) {
            return Err(domain(format!("gap must be positive, got {gap}")));
        }
        let right = BarrierSpec {
            position: 0.5 * left.width() + gap + 0.5 * second.width(),
            ..second.clone()
        };
        let t = scenario_transfer(&[left.clone(), right], ctx)?.transmission();
        if !bounds.contains(t, SCENARIO_TOL) {
            scan.violations += 1;
        }
        if t > scan.max_t {
            (scan.max_t, scan.gap_at_max) = (t, gap);
        }
        if t < scan.min_t {
            (scan.min_t, scan.gap_at_min) = (t, gap);
        }
    }
    Ok(scan)
}
