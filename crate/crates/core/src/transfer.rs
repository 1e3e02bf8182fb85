//! Exact transfer-matrix algebra.
//!
//! A transfer matrix of a lossless, time-reversal symmetric 1D scatterer has
//! the form
//!
//! ```text
//! M = | alpha   beta  |      |alpha|^2 - |beta|^2 = 1
//!     | beta*   alpha*|
//! ```
//!
//! so it is fully described by the Bogoliubov pair `(alpha, beta)`. The polar
//! form `alpha = cosh(theta) e^{i phi_alpha}`, `beta = sinh(theta) e^{i phi_beta}`
//! exposes the rapidity `theta`, which is the quantity all bounds work with.
//!
//! Matrices compose left to right in spatial order: for barriers
//! `M_1, ..., M_n` (leftmost first) the compound matrix is `M_1 M_2 ... M_n`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{domain, Error, Result};

/// Absolute tolerance on `|alpha|^2 - |beta|^2 - 1`, scaled by `max(1, |alpha|^2)`.
pub const NORM_TOLERANCE: f64 = 1e-10;

/// Largest rapidity the exact algebra accepts. `cosh` overflows an `f64` near 710.
pub const THETA_LIMIT: f64 = 350.0;

/// Wrap an angle into `(-pi, pi]`.
pub fn wrap_phase(phi: f64) -> f64 {
    let mut w = phi.rem_euclid(2.0 * PI);
    if w > PI {
        w -= 2.0 * PI;
    }
    // rem_euclid can return exactly 2*pi for tiny negative inputs
    if w <= -PI {
        w += 2.0 * PI;
    }
    w
}

/// `acosh` for `x >= 1` without the precision loss of `ln(x + sqrt(x^2 - 1))`
/// near `x = 1`. Inputs below one are clamped.
pub(crate) fn acosh_clamped(x: f64) -> f64 {
    let d = (x - 1.0).max(0.0);
    if d > 1.0 {
        return x.acosh();
    }
    (d + (d * (x.max(1.0) + 1.0)).sqrt()).ln_1p()
}

fn arg_or_zero(z: Complex64) -> f64 {
    if z.re == 0.0 && z.im == 0.0 {
        0.0
    } else {
        wrap_phase(z.im.atan2(z.re))
    }
}

/// Polar (hyperbolic) parameters of a transfer matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HyperbolicParams {
    theta: f64,
    phi_alpha: f64,
    phi_beta: f64,
}

impl HyperbolicParams {
    /// Phases are wrapped into `(-pi, pi]`.
    pub fn new(theta: f64, phi_alpha: f64, phi_beta: f64) -> Result<Self> {
        if !theta.is_finite() || !phi_alpha.is_finite() || !phi_beta.is_finite() {
            return Err(domain("hyperbolic parameters must be finite"));
        }
        if theta < 0.0 {
            return Err(domain(format!(
                "rapidity must be non-negative, got {theta}"
            )));
        }
        Ok(Self {
            theta,
            phi_alpha: wrap_phase(phi_alpha),
            phi_beta: wrap_phase(phi_beta),
        })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi_alpha(&self) -> f64 {
        self.phi_alpha
    }

    pub fn phi_beta(&self) -> f64 {
        self.phi_beta
    }
}

/// Transmission and reflection amplitudes, `t = 1/alpha`, `r = beta/alpha`.
///
/// In polar form `t = sech(theta) e^{-i phi_alpha}` and
/// `r = tanh(theta) e^{-i (phi_alpha - phi_beta)}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatteringAmplitudes {
    pub t: Complex64,
    pub r: Complex64,
}

impl ScatteringAmplitudes {
    pub fn transmission(&self) -> f64 {
        self.t.norm_sqr()
    }

    pub fn reflection(&self) -> f64 {
        self.r.norm_sqr()
    }
}

/// A validated Bogoliubov pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransferMatrix {
    alpha: Complex64,
    beta: Complex64,
}

impl TransferMatrix {
    pub const IDENTITY: TransferMatrix = TransferMatrix {
        alpha: Complex64::new(1.0, 0.0),
        beta: Complex64::new(0.0, 0.0),
    };

    /// Build a matrix from its Bogoliubov coefficients, checking normalization.
    pub fn new(alpha: Complex64, beta: Complex64) -> Result<Self> {
        if !(alpha.re.is_finite()
            && alpha.im.is_finite()
            && beta.re.is_finite()
            && beta.im.is_finite())
        {
            return Err(domain("Bogoliubov coefficients must be finite"));
        }
        let m = Self { alpha, beta };
        let tolerance = NORM_TOLERANCE * alpha.norm_sqr().max(1.0);
        let defect = m.normalization_defect();
        if defect.abs() > tolerance {
            return Err(Error::Normalization { defect, tolerance });
        }
        m.check_overflow()?;
        Ok(m)
    }

    /// Real hyperbolic rotation `(cosh theta, sinh theta)`.
    pub fn boost(theta: f64) -> Result<Self> {
        Self::from_polar(HyperbolicParams::new(
            theta.abs(),
            0.0,
            if theta < 0.0 { PI } else { 0.0 },
        )?)
    }

    pub fn from_polar(p: HyperbolicParams) -> Result<Self> {
        if p.theta > THETA_LIMIT {
            return Err(Error::Overflow {
                theta: p.theta,
                limit: THETA_LIMIT,
            });
        }
        Ok(Self {
            alpha: Complex64::from_polar(p.theta.cosh(), p.phi_alpha),
            beta: Complex64::from_polar(p.theta.sinh(), p.phi_beta),
        })
    }

    /// Polar form; the phase of a zero `beta` is 0.
    pub fn to_polar(&self) -> HyperbolicParams {
        HyperbolicParams {
            theta: self.rapidity(),
            phi_alpha: arg_or_zero(self.alpha),
            phi_beta: arg_or_zero(self.beta),
        }
    }

    /// `acosh|alpha|`, evaluated as `asinh|beta|` below `|beta| = 1` where
    /// `|alpha|` has lost the digits that distinguish it from one.
    pub fn rapidity(&self) -> f64 {
        let b = self.beta.norm();
        if b < 1.0 {
            b.asinh()
        } else {
            acosh_clamped(self.alpha.norm())
        }
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    pub fn beta(&self) -> Complex64 {
        self.beta
    }

    /// The full 2x2 matrix, row major.
    pub fn to_array(&self) -> [[Complex64; 2]; 2] {
        [
            [self.alpha, self.beta],
            [self.beta.conj(), self.alpha.conj()],
        ]
    }

    /// `|alpha|^2 - |beta|^2 - 1`.
    pub fn normalization_defect(&self) -> f64 {
        let a = self.alpha.norm();
        let b = self.beta.norm();
        (a - b) * (a + b) - 1.0
    }

    /// `self` followed (to the right) by `next`:
    /// `alpha = a1 a2 + b1 b2*`, `beta = a1 b2 + b1 a2*`.
    pub fn compose(&self, next: &TransferMatrix) -> Result<TransferMatrix> {
        let (a1, b1) = (self.alpha, self.beta);
        let (a2, b2) = (next.alpha, next.beta);
        let out = TransferMatrix {
            alpha: a1 * a2 + b1 * b2.conj(),
            beta: a1 * b2 + b1 * a2.conj(),
        };
        out.check_overflow()?;
        // rounding error of the products scales with the largest possible result
        let scale = a1.norm() * a2.norm() + b1.norm() * b2.norm();
        let tolerance = 10.0 * NORM_TOLERANCE * scale * scale;
        let defect = out.normalization_defect();
        if defect.abs() > tolerance {
            return Err(Error::Normalization { defect, tolerance });
        }
        Ok(out)
    }

    /// Translate the scatterer by `a` at wavenumber `k`: `beta -> beta e^{2ika}`.
    pub fn shift(&self, k: f64, a: f64) -> Result<TransferMatrix> {
        if !(k.is_finite() && k > 0.0) {
            return Err(domain(format!(
                "wavenumber must be positive and finite, got {k}"
            )));
        }
        if !a.is_finite() {
            return Err(domain("displacement must be finite"));
        }
        if a == 0.0 {
            return Ok(*self);
        }
        Ok(TransferMatrix {
            alpha: self.alpha,
            beta: self.beta * Complex64::from_polar(1.0, 2.0 * k * a),
        })
    }

    pub fn amplitudes(&self) -> ScatteringAmplitudes {
        let inv_alpha = self.alpha.inv();
        ScatteringAmplitudes {
            t: inv_alpha,
            r: self.beta * inv_alpha,
        }
    }

    /// `T = 1/|alpha|^2`.
    pub fn transmission(&self) -> f64 {
        1.0 / self.alpha.norm_sqr()
    }

    /// `R = |beta|^2/|alpha|^2`.
    pub fn reflection(&self) -> f64 {
        self.beta.norm_sqr() / self.alpha.norm_sqr()
    }

    /// `N = |beta|^2`.
    pub fn particle_number(&self) -> f64 {
        self.beta.norm_sqr()
    }

    fn check_overflow(&self) -> Result<()> {
        let theta = self.rapidity();
        if !theta.is_finite() || theta > THETA_LIMIT {
            return Err(Error::Overflow {
                theta,
                limit: THETA_LIMIT,
            });
        }
        Ok(())
    }
}

impl Default for TransferMatrix {
    fn default() -> Self {
        Self::IDENTITY
    }
}

/// Same as [`TransferMatrix::new`].
pub fn make_transfer(alpha: Complex64, beta: Complex64) -> Result<TransferMatrix> {
    TransferMatrix::new(alpha, beta)
}

/// Left-to-right product `M_1 M_2 ... M_n`.
pub fn compose_sequence(ms: &[TransferMatrix]) -> Result<TransferMatrix> {
    let (first, rest) = ms.split_first().ok_or(Error::EmptySequence)?;
    rest.iter().try_fold(*first, |acc, m| acc.compose(m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol * (1.0 + a.norm().max(b.norm()))
    }

    #[test]
    fn identity_is_valid() {
        let m = make_transfer(c(1.0, 0.0), c(0.0, 0.0)).unwrap();
        assert_eq!(m, TransferMatrix::IDENTITY);
        assert_eq!(m.to_polar(), HyperbolicParams::new(0.0, 0.0, 0.0).unwrap());
    }

    #[test]
    fn polar_pair_is_valid() {
        let alpha = Complex64::from_polar(1f64.cosh(), 0.3);
        let beta = Complex64::from_polar(1f64.sinh(), 1.1);
        let m = make_transfer(alpha, beta).unwrap();
        assert_relative_eq!(m.rapidity(), 1.0, epsilon = 1e-14);
    }

    #[test]
    fn unnormalized_pair_is_rejected() {
        let err = make_transfer(c(1.0, 0.0), c(1.0, 0.0)).unwrap_err();
        assert!(matches!(err, Error::Normalization { .. }));
        assert!(make_transfer(c(f64::NAN, 0.0), c(0.0, 0.0)).is_err());
    }

    #[test]
    fn from_polar_asinh_one() {
        let theta = (1.0 + 2f64.sqrt()).ln();
        let m =
            TransferMatrix::from_polar(HyperbolicParams::new(theta, 0.0, 0.0).unwrap()).unwrap();
        // cosh(asinh 1) = sqrt 2, sinh(asinh 1) = 1
        assert_relative_eq!(m.alpha().re, std::f64::consts::SQRT_2, epsilon = 1e-15);
        assert_relative_eq!(m.beta().re, 1.0, epsilon = 1e-15);
        assert_eq!(m.alpha().im, 0.0);
    }

    #[test]
    fn from_polar_rejects_bad_input() {
        assert!(HyperbolicParams::new(-0.1, 0.0, 0.0).is_err());
        assert!(HyperbolicParams::new(f64::INFINITY, 0.0, 0.0).is_err());
        let p = HyperbolicParams::new(400.0, 0.0, 0.0).unwrap();
        assert!(matches!(
            TransferMatrix::from_polar(p),
            Err(Error::Overflow { .. })
        ));
    }

    #[test]
    fn polar_round_trip() {
        let p = HyperbolicParams::new(1.7, -2.0, 3.0).unwrap();
        let q = TransferMatrix::from_polar(p).unwrap().to_polar();
        assert_relative_eq!(q.theta(), 1.7, epsilon = 1e-14);
        assert_relative_eq!(q.phi_alpha(), -2.0, epsilon = 1e-14);
        assert_relative_eq!(q.phi_beta(), 3.0, epsilon = 1e-14);
    }

    #[test]
    fn sub_unit_alpha_clamps_to_zero_rapidity() {
        let m = make_transfer(c(1.0 - 1e-14, 0.0), c(0.0, 0.0)).unwrap();
        let p = m.to_polar();
        assert_eq!(p.theta(), 0.0);
        assert_eq!(p.phi_beta(), 0.0);
    }

    #[test]
    fn compose_with_identity() {
        let m = TransferMatrix::from_polar(HyperbolicParams::new(0.8, 0.4, -1.3).unwrap()).unwrap();
        let left = TransferMatrix::IDENTITY.compose(&m).unwrap();
        let right = m.compose(&TransferMatrix::IDENTITY).unwrap();
        assert_eq!(left, m);
        assert_eq!(right, m);
    }

    #[test]
    fn boosts_add() {
        let m = TransferMatrix::boost(0.7)
            .unwrap()
            .compose(&TransferMatrix::boost(1.2).unwrap())
            .unwrap();
        assert_relative_eq!(m.rapidity(), 1.9, epsilon = 1e-14);
        assert!(m.beta().im.abs() < 1e-15);
        let back = m.compose(&TransferMatrix::boost(-1.9).unwrap()).unwrap();
        assert!(back.rapidity() < 1e-7);
    }

    #[test]
    fn destructive_phase_condition_cancels_beta() {
        // phi_b1 - phi_b2 - phi_a1 - phi_a2 = pi with equal rapidities
        let (pa1, pa2, pb1) = (0.4, -0.9, 1.3);
        let pb2 = pb1 - pa1 - pa2 - PI;
        let m1 = TransferMatrix::from_polar(HyperbolicParams::new(1.0, pa1, pb1).unwrap()).unwrap();
        let m2 = TransferMatrix::from_polar(HyperbolicParams::new(1.0, pa2, pb2).unwrap()).unwrap();
        let m = m1.compose(&m2).unwrap();
        assert!(m.beta().norm() < 1e-14);
        assert_relative_eq!(m.alpha().norm(), 1.0, epsilon = 1e-14);
    }

    #[test]
    fn composition_is_not_commutative() {
        let a = TransferMatrix::from_polar(HyperbolicParams::new(0.5, 0.2, 1.0).unwrap()).unwrap();
        let b = TransferMatrix::from_polar(HyperbolicParams::new(1.5, -0.7, 2.5).unwrap()).unwrap();
        let ab = a.compose(&b).unwrap();
        let ba = b.compose(&a).unwrap();
        assert!(!close(ab.beta(), ba.beta(), 1e-6));
        // alpha of a 2-product is symmetric: a1 a2 + b1 b2* vs a2 a1 + b2 b1*
        assert!(ab.rapidity() >= 1.0 - 1e-12 && ab.rapidity() <= 2.0 + 1e-12);
        assert!(ba.rapidity() >= 1.0 - 1e-12 && ba.rapidity() <= 2.0 + 1e-12);
    }

    #[test]
    fn sequence_fold() {
        assert_eq!(compose_sequence(&[]), Err(Error::EmptySequence));
        let m = TransferMatrix::boost(0.3).unwrap();
        assert_eq!(compose_sequence(&[m]).unwrap(), m);
        let five = compose_sequence(&[m; 5]).unwrap();
        assert_relative_eq!(five.rapidity(), 1.5, epsilon = 1e-14);
    }

    #[test]
    fn sequence_matches_manual_matrix_product() {
        let ms: Vec<_> = [(0.3, 0.1, 2.0), (1.1, -1.0, 0.5), (0.6, 2.2, -2.9)]
            .iter()
            .map(|&(t, a, b)| {
                TransferMatrix::from_polar(HyperbolicParams::new(t, a, b).unwrap()).unwrap()
            })
            .collect();
        let mul = |x: [[Complex64; 2]; 2], y: [[Complex64; 2]; 2]| {
            let mut z = [[Complex64::new(0.0, 0.0); 2]; 2];
            for i in 0..2 {
                for j in 0..2 {
                    z[i][j] = x[i][0] * y[0][j] + x[i][1] * y[1][j];
                }
            }
            z
        };
        let full = mul(mul(ms[0].to_array(), ms[1].to_array()), ms[2].to_array());
        let got = compose_sequence(&ms).unwrap().to_array();
        for i in 0..2 {
            for j in 0..2 {
                assert!(close(full[i][j], got[i][j], 1e-14));
            }
        }
    }

    #[test]
    fn shift_behaviour() {
        let m = TransferMatrix::from_polar(HyperbolicParams::new(0.9, 0.2, 0.7).unwrap()).unwrap();
        assert_eq!(m.shift(2.0, 0.0).unwrap(), m);
        let s = m.shift(1.3, 0.77).unwrap();
        assert_eq!(s.to_polar().theta(), m.to_polar().theta());
        assert_relative_eq!(
            s.to_polar().phi_beta(),
            wrap_phase(0.7 + 2.0 * 1.3 * 0.77),
            epsilon = 1e-14
        );
        let full_turn = m.shift(1.0, PI).unwrap();
        assert!(close(full_turn.beta(), m.beta(), 1e-15));
        assert!(matches!(m.shift(0.0, 1.0), Err(Error::Domain(_))));
        assert!(matches!(m.shift(-1.0, 1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn amplitudes_and_probabilities() {
        let id = TransferMatrix::IDENTITY.amplitudes();
        assert_eq!(id.t, c(1.0, 0.0));
        assert_eq!(id.r, c(0.0, 0.0));

        let m = TransferMatrix::boost(1f64.asinh()).unwrap();
        assert_relative_eq!(m.transmission(), 0.5, epsilon = 1e-15);
        assert_relative_eq!(m.reflection(), 0.5, epsilon = 1e-15);
        assert_relative_eq!(m.particle_number(), 1.0, epsilon = 1e-15);

        let p = HyperbolicParams::new(1.3, 0.6, -2.1).unwrap();
        let a = TransferMatrix::from_polar(p).unwrap().amplitudes();
        let sech = 1.0 / 1.3f64.cosh();
        assert!(close(a.t, Complex64::from_polar(sech, -0.6), 1e-15));
        assert!(close(
            a.r,
            Complex64::from_polar(1.3f64.tanh(), -(0.6 + 2.1)),
            1e-15
        ));
        assert_relative_eq!(a.transmission() + a.reflection(), 1.0, epsilon = 1e-14);
    }

    #[test]
    fn wrap_phase_range() {
        assert_eq!(wrap_phase(PI), PI);
        assert_eq!(wrap_phase(-PI), PI);
        assert_relative_eq!(wrap_phase(3.0 * PI / 2.0), -PI / 2.0, epsilon = 1e-15);
        for x in [-10.0, -3.2, 0.0, 1.0, 7.5, 100.0] {
            let w = wrap_phase(x);
            assert!(w > -PI && w <= PI);
        }
    }
}
