#![allow(dead_code)]

pub mod dd;

use compound_bounds::{BarrierKind, BarrierSpec, Slab};
use num_complex::Complex64;
use rand::Rng;

/// Left-incident amplitudes `(t, r)` by direct RK4 integration of
/// `psi'' = (V - k^2) psi` from the right edge (pure transmitted wave
/// `e^{ikx}`) to the left edge, with `psi'` jumping by `lambda psi` at deltas.
pub fn ode_amplitudes(
    specs: &[BarrierSpec],
    k: f64,
    steps_per_unit: f64,
) -> (Complex64, Complex64) {
    enum Piece {
        Flat { left: f64, right: f64, v: f64 },
        Spike { x: f64, lambda: f64 },
    }
    let mut pieces = Vec::new();
    for s in specs {
        let (left, right) = s.support();
        match &s.kind {
            BarrierKind::Rectangular { height, .. } => pieces.push(Piece::Flat {
                left,
                right,
                v: *height,
            }),
            BarrierKind::Delta { strength } => pieces.push(Piece::Spike {
                x: s.position,
                lambda: *strength,
            }),
            BarrierKind::PiecewiseConstant(slabs) => {
                let mut x = left;
                for sl in slabs {
                    pieces.push(Piece::Flat {
                        left: x,
                        right: x + sl.width,
                        v: sl.height,
                    });
                    x += sl.width;
                }
            }
        }
    }
    let x_left = specs.first().unwrap().support().0;
    let x_right = specs.last().unwrap().support().1;
    let ik = Complex64::new(0.0, k);
    let e = |x: f64| Complex64::from_polar(1.0, k * x);
    let mut psi = e(x_right);
    let mut dpsi = ik * e(x_right);
    let mut x = x_right;

    let integrate = |psi: &mut Complex64, dpsi: &mut Complex64, from: f64, to: f64, v: f64| {
        let len = from - to;
        if len <= 0.0 {
            return;
        }
        let n = ((len * steps_per_unit).ceil() as usize).max(1);
        let h = -len / n as f64;
        let c = v - k * k;
        let f = |p: Complex64, d: Complex64| (d, p * c);
        for _ in 0..n {
            let (k1p, k1d) = f(*psi, *dpsi);
            let (k2p, k2d) = f(*psi + k1p * (h / 2.0), *dpsi + k1d * (h / 2.0));
            let (k3p, k3d) = f(*psi + k2p * (h / 2.0), *dpsi + k2d * (h / 2.0));
            let (k4p, k4d) = f(*psi + k3p * h, *dpsi + k3d * h);
            *psi += (k1p + k2p * 2.0 + k3p * 2.0 + k4p) * (h / 6.0);
            *dpsi += (k1d + k2d * 2.0 + k3d * 2.0 + k4d) * (h / 6.0);
        }
    };

    for piece in pieces.iter().rev() {
        match *piece {
            Piece::Flat { left, right, v } => {
                integrate(&mut psi, &mut dpsi, x, right, 0.0);
                integrate(&mut psi, &mut dpsi, right, left, v);
                x = left;
            }
            Piece::Spike { x: at, lambda } => {
                integrate(&mut psi, &mut dpsi, x, at, 0.0);
                dpsi -= psi * lambda;
                x = at;
            }
        }
    }
    integrate(&mut psi, &mut dpsi, x, x_left, 0.0);

    // psi = a_in e^{ikx} + a_out e^{-ikx} at the left edge
    let a_in = (ik * psi + dpsi) / (2.0 * ik) * e(x_left).conj();
    let a_out = (ik * psi - dpsi) / (2.0 * ik) * e(x_left);
    (a_in.inv(), a_out / a_in)
}

pub fn random_kind<R: Rng>(rng: &mut R) -> BarrierKind {
    match rng.gen_range(0..3) {
        0 => BarrierKind::Rectangular {
            height: rng.gen_range(-1.0..4.0),
            width: rng.gen_range(0.1..1.5),
        },
        1 => BarrierKind::Delta {
            strength: rng.gen_range(-3.0..3.0),
        },
        _ => BarrierKind::PiecewiseConstant(
            (0..rng.gen_range(1..4))
                .map(|_| Slab {
                    height: rng.gen_range(-1.0..4.0),
                    width: rng.gen_range(0.1..0.8),
                })
                .collect(),
        ),
    }
}

/// `n` random barriers laid out left to right with random gaps.
pub fn random_layout<R: Rng>(rng: &mut R, n: usize) -> Vec<BarrierSpec> {
    let mut out = Vec::with_capacity(n);
    let mut edge = rng.gen_range(-2.0..0.0);
    for _ in 0..n {
        let kind = random_kind(rng);
        let mut spec = BarrierSpec {
            kind,
            position: 0.0,
        };
        let half = 0.5 * spec.width();
        edge += rng.gen_range(0.05..2.0);
        spec.position = edge + half;
        edge += 2.0 * half;
        out.push(spec);
    }
    out
}

pub fn rel_diff(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs())
    }
}
