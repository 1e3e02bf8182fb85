//! Exact transfer matrices of concrete barriers.
//!
//! Units are `hbar = 2m = 1`, so the stationary equation reads
//! `psi'' = (V(x) - E) psi` with `E = k^2`.
//!
//! Outside a barrier the wave is `psi = A e^{-ikx} + B e^{ikx}` and the
//! transfer matrix maps the amplitude vector `(A, B)` on the right of the
//! barrier to the one on its left. With this ordering the compound matrix of
//! barriers in spatial order is the left-to-right product, and translating a
//! barrier by `a` multiplies `beta` by `e^{2ika}` exactly as
//! [`TransferMatrix::shift`] does.
//!
//! For a wave incident from the left the physical amplitudes are
//! `t = 1/conj(alpha)` and `r = beta/conj(alpha)`. Their moduli agree with
//! [`TransferMatrix::amplitudes`]; the phases differ (`t` is conjugated and
//! `r` picks up `e^{2i phi_alpha}`).

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::transfer::{compose_sequence, TransferMatrix};

/// One constant-potential layer of a piecewise-constant barrier.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Slab {
    pub height: f64,
    pub width: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum BarrierKind {
    Rectangular {
        height: f64,
        width: f64,
    },
    /// `V(x) = strength * delta(x - position)`.
    Delta {
        strength: f64,
    },
    /// Layers listed left to right, centred as a block on the position.
    PiecewiseConstant(Vec<Slab>),
}

/// A barrier centred on `position`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BarrierSpec {
    pub kind: BarrierKind,
    pub position: f64,
}

impl BarrierSpec {
    pub fn rectangular(height: f64, width: f64, position: f64) -> Self {
        Self {
            kind: BarrierKind::Rectangular { height, width },
            position,
        }
    }

    pub fn delta(strength: f64, position: f64) -> Self {
        Self {
            kind: BarrierKind::Delta { strength },
            position,
        }
    }

    pub fn slabs(slabs: Vec<Slab>, position: f64) -> Self {
        Self {
            kind: BarrierKind::PiecewiseConstant(slabs),
            position,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.position.is_finite() {
            return Err(domain("barrier position must be finite"));
        }
        match &self.kind {
            BarrierKind::Rectangular { height, width } => check_slab(*height, *width),
            BarrierKind::Delta { strength } => {
                if strength.is_finite() {
                    Ok(())
                } else {
                    Err(domain("delta strength must be finite"))
                }
            }
            BarrierKind::PiecewiseConstant(slabs) => {
                if slabs.is_empty() {
                    return Err(domain("piecewise-constant barrier needs at least one slab"));
                }
                slabs.iter().try_for_each(|s| check_slab(s.height, s.width))
            }
        }
    }

    pub fn width(&self) -> f64 {
        match &self.kind {
            BarrierKind::Rectangular { width, .. } => *width,
            BarrierKind::Delta { .. } => 0.0,
            BarrierKind::PiecewiseConstant(slabs) => slabs.iter().map(|s| s.width).sum(),
        }
    }

    /// Closed support `[left, right]`.
    pub fn support(&self) -> (f64, f64) {
        let half = 0.5 * self.width();
        (self.position - half, self.position + half)
    }
}

fn check_slab(height: f64, width: f64) -> Result<()> {
    if !height.is_finite() {
        return Err(domain("slab height must be finite"));
    }
    if !(width.is_finite() && width > 0.0) {
        return Err(domain(format!("slab width must be positive, got {width}")));
    }
    Ok(())
}

/// Wavenumber of the free wave outside the barriers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveContext {
    k: f64,
}

impl WaveContext {
    pub fn new(k: f64) -> Result<Self> {
        if !(k.is_finite() && k > 0.0) {
            return Err(domain(format!(
                "wavenumber must be positive and finite, got {k}"
            )));
        }
        Ok(Self { k })
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn energy(&self) -> f64 {
        self.k * self.k
    }
}

/// Real 2x2 map of `(psi, psi')` across a region, row major.
type Propagator = [[f64; 2]; 2];

fn mul(a: &Propagator, b: &Propagator) -> Propagator {
    [
        [
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
        ],
        [
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        ],
    ]
}

/// Propagator across a slab of constant `height` and `width` at energy `energy`.
fn slab_propagator(height: f64, width: f64, energy: f64) -> Propagator {
    let q2 = energy - height;
    if q2 > 0.0 {
        let q = q2.sqrt();
        let (s, c) = (q * width).sin_cos();
        [[c, s / q], [-q * s, c]]
    } else if q2 < 0.0 {
        let kappa = (-q2).sqrt();
        let (s, c) = ((kappa * width).sinh(), (kappa * width).cosh());
        [[c, s / kappa], [kappa * s, c]]
    } else {
        // E = V: limit of sinh(kappa w)/kappa -> w
        [[1.0, width], [0.0, 1.0]]
    }
}

fn propagator(kind: &BarrierKind, energy: f64) -> Propagator {
    match kind {
        BarrierKind::Rectangular { height, width } => slab_propagator(*height, *width, energy),
        BarrierKind::Delta { strength } => [[1.0, 0.0], [*strength, 1.0]],
        BarrierKind::PiecewiseConstant(slabs) => {
            slabs.iter().fold([[1.0, 0.0], [0.0, 1.0]], |acc, s| {
                mul(&slab_propagator(s.height, s.width, energy), &acc)
            })
        }
    }
}

/// Transfer matrix of the barrier centred at the origin.
fn transfer_at_origin(kind: &BarrierKind, k: f64) -> Result<TransferMatrix> {
    let p = propagator(kind, k * k);
    if p.iter().flatten().any(|x| !x.is_finite()) {
        return Err(Error::Overflow {
            theta: f64::INFINITY,
            limit: crate::transfer::THETA_LIMIT,
        });
    }
    let half = 0.5
        * match kind {
            BarrierKind::Rectangular { width, .. } => *width,
            BarrierKind::Delta { .. } => 0.0,
            BarrierKind::PiecewiseConstant(slabs) => slabs.iter().map(|s| s.width).sum(),
        };
    // (psi, psi')(x) = W(x) (A, B) with W(x) = [[e^{-ikx}, e^{ikx}], [-ik e^{-ikx}, ik e^{ikx}]].
    // (psi, psi')(right) = P (psi, psi')(left)  =>  v_left = W(-half)^{-1} P^{-1} W(half) v_right.
    let pinv = [[p[1][1], -p[0][1]], [-p[1][0], p[0][0]]];
    let ik = Complex64::new(0.0, k);
    let er = Complex64::from_polar(1.0, k * half); // e^{ik half}
    let w_right = [[er.conj(), er], [-ik * er.conj(), ik * er]];
    // W(-half)^{-1} = 1/(2ik) [[ik e^{-ik half}, -e^{-ik half}], [ik e^{ik half}, e^{ik half}]]
    let el = er.conj();
    let inv_det = (2.0 * ik).inv();
    let w_left_inv = [
        [ik * el * inv_det, -el * inv_det],
        [ik * er * inv_det, er * inv_det],
    ];
    let mid = [
        [
            w_right[0][0] * pinv[0][0] + w_right[1][0] * pinv[0][1],
            w_right[0][1] * pinv[0][0] + w_right[1][1] * pinv[0][1],
        ],
        [
            w_right[0][0] * pinv[1][0] + w_right[1][0] * pinv[1][1],
            w_right[0][1] * pinv[1][0] + w_right[1][1] * pinv[1][1],
        ],
    ];
    let alpha = w_left_inv[0][0] * mid[0][0] + w_left_inv[0][1] * mid[1][0];
    let beta = w_left_inv[0][0] * mid[0][1] + w_left_inv[0][1] * mid[1][1];
    TransferMatrix::new(alpha, beta)
}

/// Exact transfer matrix of one barrier at its position.
pub fn transfer_of(spec: &BarrierSpec, ctx: WaveContext) -> Result<TransferMatrix> {
    spec.validate()?;
    transfer_at_origin(&spec.kind, ctx.k)?.shift(ctx.k, spec.position)
}

/// Check that barriers are sorted by position and have disjoint closed supports.
pub fn check_layout(specs: &[BarrierSpec]) -> Result<()> {
    for s in specs {
        s.validate()?;
    }
    for (i, pair) in specs.windows(2).enumerate() {
        if pair[1].position < pair[0].position {
            return Err(domain(format!(
                "barriers must be sorted by position (barrier {} precedes barrier {})",
                i + 1,
                i
            )));
        }
        if pair[1].support().0 <= pair[0].support().1 {
            return Err(Error::Overlap {
                first: i,
                second: i + 1,
            });
        }
    }
    Ok(())
}

/// Compound matrix of a barrier list in spatial order.
pub fn scenario_transfer(specs: &[BarrierSpec], ctx: WaveContext) -> Result<TransferMatrix> {
    check_layout(specs)?;
    let ms = specs
        .iter()
        .map(|s| transfer_of(s, ctx))
        .collect::<Result<Vec<_>>>()?;
    compose_sequence(&ms)
}
