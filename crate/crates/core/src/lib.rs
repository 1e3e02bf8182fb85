//! Phase-independent bounds for compound one-dimensional barriers.
//!
//! A barrier is summarised by its transfer matrix
//! `[[alpha, beta], [conj(beta), conj(alpha)]]` with `|alpha|^2 - |beta|^2 = 1`,
//! or just by its rapidity `theta = acosh|alpha|`. Knowing only the rapidities
//! of the pieces, the compound rapidity lies in `[B_n, S_n]`, which bounds the
//! compound transmission, reflection and particle number without any
//! knowledge of relative phases.
//!
//! ```
//! use compound_bounds::{bounds_report, RapiditySequence};
//!
//! let seq = RapiditySequence::from_transmissions(&[0.5, 0.5]).unwrap();
//! let r = bounds_report(&seq).unwrap();
//! assert!((r.t_interval.low - 1.0 / 9.0).abs() < 1e-12);
//! assert!((r.t_interval.high - 1.0).abs() < 1e-12);
//! ```

// reference values in tests carry every digit of the high-precision source
#![cfg_attr(test, allow(clippy::excessive_precision))]

pub mod barrier;
pub mod bounds;
pub mod error;
pub mod harness;
pub mod scenario;
pub mod table;
pub mod transfer;
pub mod verify;

pub use barrier::{scenario_transfer, transfer_of, BarrierKind, BarrierSpec, Slab, WaveContext};
pub use bounds::{
    b_n_closed, b_n_iterative, bounds_report, s_n, BoundsReport, Interval, RapiditySequence,
};
pub use error::{Error, Result};
pub use scenario::{parse_scenario, Analysis, Mode, Scenario};
pub use transfer::{
    compose_sequence, make_transfer, HyperbolicParams, ScatteringAmplitudes, TransferMatrix,
};
