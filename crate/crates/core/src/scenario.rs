//! Scenario documents.
//!
//! A scenario is a small TOML file:
//!
//! ```toml
//! mode = "scattering"            # or "production"
//! analyses = ["bounds", "sweep"] # optional; default is all four
//!
//! [k_sweep]                      # either start/stop/steps ...
//! start = 0.5
//! stop = 3.0
//! steps = 100                    # number of points, endpoints included
//! # values = [0.5, 1.0, 2.0]     # ... or an explicit list
//!
//! [[barrier]]
//! kind = "rectangular"           # height, width
//! height = 2.0
//! width = 1.0
//! position = 0.0
//!
//! [[barrier]]
//! kind = "delta"                 # strength
//! strength = 2.0
//! position = 3.0
//!
//! [[barrier]]
//! kind = "slabs"                 # [height, width] pairs, left to right
//! slabs = [[1.0, 0.5], [2.0, 0.3]]
//! position = 6.0
//! ```
//!
//! Production scenarios list per-episode particle numbers instead of barriers:
//! `episodes = [1.0, 1.0]`; `k_sweep` is then ignored.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Deserialize;

use crate::barrier::{check_layout, BarrierSpec, Slab};
use crate::error::{domain, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Scattering,
    Production,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Scattering => "scattering",
            Mode::Production => "production",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Analysis {
    Bounds,
    Sweep,
    Verify,
    Resonance,
}

impl Analysis {
    pub const ALL: [Analysis; 4] = [
        Analysis::Bounds,
        Analysis::Sweep,
        Analysis::Verify,
        Analysis::Resonance,
    ];
}

impl fmt::Display for Analysis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Analysis::Bounds => "bounds",
            Analysis::Sweep => "sweep",
            Analysis::Verify => "verify",
            Analysis::Resonance => "resonance",
        })
    }
}

impl FromStr for Analysis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bounds" => Ok(Analysis::Bounds),
            "sweep" => Ok(Analysis::Sweep),
            "verify" => Ok(Analysis::Verify),
            "resonance" => Ok(Analysis::Resonance),
            other => Err(domain(format!(
                "unknown analysis '{other}' (expected bounds, sweep, verify or resonance)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum KSweep {
    /// `steps` evenly spaced points from `start` to `stop` inclusive.
    Range {
        start: f64,
        stop: f64,
        steps: usize,
    },
    List(Vec<f64>),
}

impl KSweep {
    pub fn values(&self) -> Vec<f64> {
        match self {
            KSweep::Range { start, stop, steps } => {
                if *steps == 1 {
                    return vec![*start];
                }
                let h = (stop - start) / (*steps - 1) as f64;
                (0..*steps).map(|i| start + h * i as f64).collect()
            }
            KSweep::List(v) => v.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub mode: Mode,
    /// Position-sorted, non-overlapping.
    pub barriers: Vec<BarrierSpec>,
    /// Per-episode particle numbers (production mode).
    pub episodes: Vec<f64>,
    pub k_sweep: Option<KSweep>,
    pub analyses: BTreeSet<Analysis>,
}

impl Scenario {
    pub fn k_values(&self) -> Vec<f64> {
        self.k_sweep
            .as_ref()
            .map(KSweep::values)
            .unwrap_or_default()
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    mode: Option<Mode>,
    analyses: Option<Vec<Analysis>>,
    k_sweep: Option<RawSweep>,
    #[serde(default)]
    barrier: Vec<RawBarrier>,
    #[serde(default)]
    episodes: Vec<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSweep {
    start: Option<f64>,
    stop: Option<f64>,
    steps: Option<i64>,
    values: Option<Vec<f64>>,
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum RawBarrier {
    Rectangular {
        height: f64,
        width: f64,
        position: f64,
    },
    Delta {
        strength: f64,
        position: f64,
    },
    Slabs {
        slabs: Vec<[f64; 2]>,
        position: f64,
    },
}

impl From<RawBarrier> for BarrierSpec {
    fn from(raw: RawBarrier) -> Self {
        match raw {
            RawBarrier::Rectangular {
                height,
                width,
                position,
            } => BarrierSpec::rectangular(height, width, position),
            RawBarrier::Delta { strength, position } => BarrierSpec::delta(strength, position),
            RawBarrier::Slabs { slabs, position } => BarrierSpec::slabs(
                slabs
                    .into_iter()
                    .map(|[height, width]| Slab { height, width })
                    .collect(),
                position,
            ),
        }
    }
}

fn parse_error(text: &str, err: toml::de::Error) -> Error {
    let line = err
        .span()
        .map(|span| text[..span.start.min(text.len())].matches('\n').count() + 1);
    Error::Parse {
        line,
        message: err.message().trim().to_string(),
    }
}

fn field_error(field: &str, message: impl fmt::Display) -> Error {
    Error::Parse {
        line: None,
        message: format!("{field}: {message}"),
    }
}

fn parse_sweep(raw: RawSweep) -> Result<KSweep> {
    let sweep = match (raw.values, raw.start, raw.stop, raw.steps) {
        (Some(values), None, None, None) => {
            if values.is_empty() {
                return Err(field_error("k_sweep.values", "must not be empty"));
            }
            KSweep::List(values)
        }
        (None, Some(start), Some(stop), Some(steps)) => {
            if steps < 1 {
                return Err(domain(format!("k_sweep.steps must be >= 1, got {steps}")));
            }
            KSweep::Range {
                start,
                stop,
                steps: steps as usize,
            }
        }
        _ => {
            return Err(field_error(
                "k_sweep",
                "give either `values` or all of `start`, `stop`, `steps`",
            ))
        }
    };
    if let Some(bad) = sweep
        .values()
        .into_iter()
        .find(|k| !(k.is_finite() && *k > 0.0))
    {
        return Err(domain(format!(
            "k_sweep: wavenumbers must be positive, got {bad}"
        )));
    }
    Ok(sweep)
}

/// Parse and validate a scenario document.
pub fn parse_scenario(text: &str) -> Result<Scenario> {
    let raw: RawScenario = toml::from_str(text).map_err(|e| parse_error(text, e))?;
    let mode = raw.mode.unwrap_or(Mode::Scattering);
    let analyses = raw
        .analyses
        .map(|v| v.into_iter().collect())
        .unwrap_or_else(|| Analysis::ALL.into_iter().collect::<BTreeSet<_>>());
    if analyses.is_empty() {
        return Err(field_error("analyses", "must not be empty"));
    }
    let k_sweep = raw.k_sweep.map(parse_sweep).transpose()?;

    let mut barriers: Vec<BarrierSpec> = raw.barrier.into_iter().map(Into::into).collect();
    for (i, b) in barriers.iter().enumerate() {
        b.validate().map_err(|e| match e {
            Error::Domain(msg) => domain(format!("barrier[{i}]: {msg}")),
            other => other,
        })?;
    }
    barriers.sort_by(|a, b| a.position.total_cmp(&b.position));
    check_layout(&barriers)?;

    for (i, n) in raw.episodes.iter().enumerate() {
        if !(n.is_finite() && *n >= 0.0) {
            return Err(domain(format!(
                "episodes[{i}]: particle number must be non-negative, got {n}"
            )));
        }
    }

    match mode {
        Mode::Scattering => {
            if barriers.is_empty() {
                return Err(field_error(
                    "barrier",
                    "a scattering scenario needs at least one barrier",
                ));
            }
            if k_sweep.is_none() {
                return Err(field_error(
                    "k_sweep",
                    "a scattering scenario needs a wavenumber sweep",
                ));
            }
        }
        Mode::Production => {
            if raw.episodes.is_empty() {
                return Err(field_error(
                    "episodes",
                    "a production scenario needs at least one episode",
                ));
            }
        }
    }

    Ok(Scenario {
        mode,
        barriers,
        episodes: raw.episodes,
        k_sweep,
        analyses,
    })
}
