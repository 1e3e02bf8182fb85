//! Scenario analyses rendered as tables.
//!
//! Each `run_*` function returns a [`Report`]: a CSV-ready table plus a
//! verdict. Only the sweep and verify analyses can fail; bounds and resonance
//! tables are informational.

use crate::barrier::{transfer_of, WaveContext};
use crate::bounds::{
    bounds_report, classical_transmission, production_guaranteed, resonance_possible, BoundsReport,
    RapiditySequence,
};
use crate::error::{Error, Result};
use crate::scenario::{Analysis, Mode, Scenario};
use crate::table::{Cell, Table};
use crate::transfer::TransferMatrix;
use crate::verify::{
    equivalence_audit, random_phase_sweep, scenario_containment_audit, CONTAINMENT_TOL, GENERATOR,
    SCENARIO_TOL,
};

pub const UNITS: &str = "hbar = 2m = 1, E = k^2";
/// Largest sequence length and trial count of the equivalence audit run by `verify`.
pub const AUDIT_N_MAX: usize = 12;
pub const AUDIT_TRIALS: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunOptions {
    pub seed: u64,
    /// Random phase assignments per sequence.
    pub samples: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self {
            seed: 0,
            samples: 4096,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub analysis: Analysis,
    pub table: Table,
    pub passed: bool,
}

fn header(
    columns: Vec<String>,
    s: &Scenario,
    analysis: Analysis,
    opts: &RunOptions,
    random: bool,
) -> Table {
    let mut t = Table::new(columns);
    t.meta("tool", concat!("cbounds ", env!("CARGO_PKG_VERSION")));
    t.meta("units", UNITS);
    t.meta("analysis", analysis.to_string());
    t.meta("mode", s.mode.to_string());
    if random {
        t.meta("seed", opts.seed.to_string());
        t.meta("samples", opts.samples.to_string());
        t.meta("generator", GENERATOR);
    }
    t
}

fn numbered(prefix: &str, n: usize) -> impl Iterator<Item = String> + '_ {
    (1..=n).map(move |i| format!("{prefix}_{i}"))
}

fn cols(parts: &[&str]) -> Vec<String> {
    parts.iter().map(|s| s.to_string()).collect()
}

fn envelope_cells(r: &BoundsReport) -> Vec<Cell> {
    vec![
        Cell::Float(r.t_interval.low),
        Cell::Float(r.t_interval.high),
        Cell::Float(r.r_interval.low),
        Cell::Float(r.r_interval.high),
        Cell::Float(r.n_interval.low),
        Cell::Float(r.n_interval.high),
    ]
}

const ENVELOPE: [&str; 6] = ["T_min", "T_upper", "R_low", "R_high", "N_low", "N_high"];

fn matrices_at(s: &Scenario, k: f64) -> Result<Vec<TransferMatrix>> {
    let ctx = WaveContext::new(k)?;
    s.barriers.iter().map(|b| transfer_of(b, ctx)).collect()
}

fn episode_sequence(s: &Scenario) -> Result<RapiditySequence> {
    RapiditySequence::from_particle_numbers(&s.episodes)
}

/// Envelopes from the individual barriers (or episodes).
pub fn run_bounds(s: &Scenario, opts: &RunOptions) -> Result<Report> {
    let table = match s.mode {
        Mode::Scattering => {
            let n = s.barriers.len();
            let mut columns = vec!["k".to_string()];
            columns.extend(numbered("T", n));
            columns.extend(cols(&ENVELOPE));
            columns.extend(cols(&["T_classical", "resonance_possible"]));
            let mut t = header(columns, s, Analysis::Bounds, opts, false);
            for k in s.k_values() {
                let ms = matrices_at(s, k)?;
                let ts: Vec<f64> = ms.iter().map(TransferMatrix::transmission).collect();
                let report = bounds_report(&RapiditySequence::from_matrices(&ms))?;
                let mut row = vec![Cell::Float(k)];
                row.extend(ts.iter().map(|&x| Cell::Float(x)));
                row.extend(envelope_cells(&report));
                row.push(Cell::Float(classical_transmission(&ts)?));
                row.push(Cell::Bool(report.b_n == 0.0));
                t.push(row);
            }
            t
        }
        Mode::Production => {
            let n = s.episodes.len();
            let mut columns: Vec<String> = numbered("N", n).collect();
            columns.extend(cols(&ENVELOPE));
            columns.push("production_guaranteed".to_string());
            let mut t = header(columns, s, Analysis::Bounds, opts, false);
            let report = bounds_report(&episode_sequence(s)?)?;
            let check = production_guaranteed(&s.episodes)?;
            let mut row: Vec<Cell> = s.episodes.iter().map(|&x| Cell::Float(x)).collect();
            row.extend(envelope_cells(&report));
            row.push(Cell::Bool(check.guaranteed));
            t.push(row);
            t
        }
    };
    Ok(Report {
        analysis: Analysis::Bounds,
        table,
        passed: true,
    })
}

/// Exact compound values beside the envelopes.
///
/// Scattering scenarios use the exact transfer matrices at each `k`. Production
/// scenarios have no spatial model, so the exact values are replaced by the
/// extremes of a random phase sweep over the episodes.
pub fn run_sweep(s: &Scenario, opts: &RunOptions) -> Result<Report> {
    match s.mode {
        Mode::Scattering => {
            let audit = scenario_containment_audit(&s.barriers, &s.k_values())?;
            let inner = audit.to_table();
            let mut t = header(inner.columns().to_vec(), s, Analysis::Sweep, opts, false);
            for (k, v) in inner.metadata() {
                t.meta(k.clone(), v.clone());
            }
            t.rows = inner.rows;
            Ok(Report {
                analysis: Analysis::Sweep,
                table: t,
                passed: audit.violations == 0,
            })
        }
        Mode::Production => {
            let seq = episode_sequence(s)?;
            let report = bounds_report(&seq)?;
            let mut t = header(
                cols(&[
                    "samples",
                    "N_min_observed",
                    "N_max_observed",
                    "N_low",
                    "N_high",
                    "contained",
                ]),
                s,
                Analysis::Sweep,
                opts,
                true,
            );
            t.meta("containment_tolerance", CONTAINMENT_TOL.to_string());
            let (lo, hi, contained) = match random_phase_sweep(&seq, opts.samples, opts.seed) {
                Ok(r) => (
                    Cell::Float(r.theta_min_observed.sinh().powi(2)),
                    Cell::Float(r.theta_max_observed.sinh().powi(2)),
                    true,
                ),
                Err(Error::BoundViolation { theta, .. }) => {
                    let n = Cell::Float(theta.sinh().powi(2));
                    (n.clone(), n, false)
                }
                Err(e) => return Err(e),
            };
            t.push(vec![
                Cell::Int(opts.samples as i64),
                lo,
                hi,
                Cell::Float(report.n_interval.low),
                Cell::Float(report.n_interval.high),
                Cell::Bool(contained),
            ]);
            Ok(Report {
                analysis: Analysis::Sweep,
                table: t,
                passed: contained,
            })
        }
    }
}

const VERIFY_COLUMNS: [&str; 10] = [
    "check",
    "k",
    "n",
    "samples",
    "observed_low",
    "observed_high",
    "bound_low",
    "bound_high",
    "max_deviation",
    "passed",
];

fn phase_sweep_row(
    k: Option<f64>,
    seq: &RapiditySequence,
    opts: &RunOptions,
) -> Result<(Vec<Cell>, bool)> {
    let report = bounds_report(seq)?;
    let (low, high) = (report.b_n, report.s_n);
    let (obs_lo, obs_hi) = match random_phase_sweep(seq, opts.samples, opts.seed) {
        Ok(r) => (r.theta_min_observed, r.theta_max_observed),
        Err(Error::BoundViolation { theta, .. }) => (theta, theta),
        Err(e) => return Err(e),
    };
    let deviation = (low - obs_lo).max(obs_hi - high).max(0.0);
    let ok = deviation <= CONTAINMENT_TOL;
    let row = vec![
        Cell::Text("phase_sweep".into()),
        k.map_or(Cell::Empty, Cell::Float),
        Cell::Int(seq.len() as i64),
        Cell::Int(opts.samples as i64),
        Cell::Float(obs_lo),
        Cell::Float(obs_hi),
        Cell::Float(low),
        Cell::Float(high),
        Cell::Float(deviation),
        Cell::Bool(ok),
    ];
    Ok((row, ok))
}

/// Run the verification audits against the scenario.
///
/// Rows:
/// * `equivalence`: iterative against closed-form lower bound and shuffle
///   symmetry on random sequences, one row per length;
/// * `phase_sweep`: random phase compositions of the scenario's rapidities
///   (per `k`, or once for production), in rapidity units;
/// * `containment`: exact compound `T` against `[T_min, T_upper]` per `k`.
pub fn run_verify(s: &Scenario, opts: &RunOptions) -> Result<Report> {
    let mut t = header(cols(&VERIFY_COLUMNS), s, Analysis::Verify, opts, true);
    t.meta("containment_tolerance", CONTAINMENT_TOL.to_string());
    t.meta("scenario_tolerance", SCENARIO_TOL.to_string());
    let mut passed = true;

    let audit = equivalence_audit(AUDIT_N_MAX, AUDIT_TRIALS, opts.seed)?;
    for row in &audit.rows {
        let ok = row.agree == row.trials && row.symmetric == row.trials;
        passed &= ok;
        t.push(vec![
            Cell::Text("equivalence".into()),
            Cell::Empty,
            Cell::Int(row.n as i64),
            Cell::Int(row.trials as i64),
            Cell::Empty,
            Cell::Empty,
            Cell::Empty,
            Cell::Empty,
            Cell::Float(row.max_abs_diff),
            Cell::Bool(ok),
        ]);
    }

    match s.mode {
        Mode::Scattering => {
            let ks = s.k_values();
            for &k in &ks {
                let seq = RapiditySequence::from_matrices(&matrices_at(s, k)?);
                let (row, ok) = phase_sweep_row(Some(k), &seq, opts)?;
                passed &= ok;
                t.push(row);
            }
            let containment = scenario_containment_audit(&s.barriers, &ks)?;
            for r in &containment.rows {
                passed &= r.contained;
                let deviation = (-r.t_margin).max(-r.r_margin).max(-r.n_margin).max(0.0);
                t.push(vec![
                    Cell::Text("containment".into()),
                    Cell::Float(r.k),
                    Cell::Int(s.barriers.len() as i64),
                    Cell::Empty,
                    Cell::Float(r.t_exact),
                    Cell::Float(r.t_exact),
                    Cell::Float(r.report.t_interval.low),
                    Cell::Float(r.report.t_interval.high),
                    Cell::Float(deviation),
                    Cell::Bool(r.contained),
                ]);
            }
        }
        Mode::Production => {
            let (row, ok) = phase_sweep_row(None, &episode_sequence(s)?, opts)?;
            passed &= ok;
            t.push(row);
        }
    }
    Ok(Report {
        analysis: Analysis::Verify,
        table: t,
        passed,
    })
}

/// Resonance (scattering) or guaranteed-production (production) criteria.
pub fn run_resonance(s: &Scenario, opts: &RunOptions) -> Result<Report> {
    let table = match s.mode {
        Mode::Scattering => {
            let mut t = header(
                cols(&[
                    "k",
                    "T_peak",
                    "T_min_single",
                    "threshold",
                    "margin",
                    "resonance_possible",
                ]),
                s,
                Analysis::Resonance,
                opts,
                false,
            );
            for k in s.k_values() {
                let ts: Vec<f64> = matrices_at(s, k)?
                    .iter()
                    .map(TransferMatrix::transmission)
                    .collect();
                let c = resonance_possible(&ts)?;
                t.push(vec![
                    Cell::Float(k),
                    Cell::Float(c.t_peak),
                    Cell::Float(c.t_min),
                    Cell::Float(c.threshold),
                    Cell::Float(c.margin),
                    Cell::Bool(c.possible),
                ]);
            }
            t
        }
        Mode::Production => {
            let mut t = header(
                cols(&[
                    "N_peak",
                    "N_max",
                    "threshold",
                    "N_min",
                    "production_guaranteed",
                ]),
                s,
                Analysis::Resonance,
                opts,
                false,
            );
            let c = production_guaranteed(&s.episodes)?;
            t.push(vec![
                Cell::Float(c.n_peak),
                Cell::Float(c.n_max),
                Cell::Float(c.threshold),
                Cell::Float(c.n_min),
                Cell::Bool(c.guaranteed),
            ]);
            t
        }
    };
    Ok(Report {
        analysis: Analysis::Resonance,
        table,
        passed: true,
    })
}

pub fn run(s: &Scenario, analysis: Analysis, opts: &RunOptions) -> Result<Report> {
    match analysis {
        Analysis::Bounds => run_bounds(s, opts),
        Analysis::Sweep => run_sweep(s, opts),
        Analysis::Verify => run_verify(s, opts),
        Analysis::Resonance => run_resonance(s, opts),
    }
}
