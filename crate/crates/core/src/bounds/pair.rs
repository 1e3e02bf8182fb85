//! Two-barrier bounds in hyperbolic and rational-algebraic form.
//!
//! The hyperbolic forms are canonical. The rational forms are kept as an
//! independent cross-check; their differences `1 - xy` are rewritten as
//! cancellation-free quotients so both routes stay accurate over the whole
//! domain.

use super::convert::{
    n_from_theta, r_from_theta, t_from_theta, theta_from_n, theta_from_r, theta_from_t,
};
use super::Interval;
use crate::error::{domain, Result};

/// `|asinh x - asinh y|` for `x, y >= 0`, given `x^2 - y^2` separately.
///
/// Evaluated as `ln((x + sqrt(1 + x^2)) / (y + sqrt(1 + y^2)))` with the ratio
/// minus one written over the difference of squares, so nearly equal
/// rapidities keep full relative accuracy when the caller can supply the
/// difference of squares without cancellation.
fn rapidity_gap(x: f64, y: f64, squares_diff: f64) -> f64 {
    if squares_diff == 0.0 {
        return 0.0;
    }
    let (x, y, diff) = if squares_diff > 0.0 {
        (x, y, squares_diff)
    } else {
        (y, x, -squares_diff)
    };
    let (cx, cy) = (x.hypot(1.0), y.hypot(1.0));
    let ratio_minus_one = diff * ((x + y).recip() + (cx + cy).recip()) / (y + cy);
    ratio_minus_one.ln_1p()
}

/// `[sech^2(th1 + th2), sech^2|th1 - th2|]`.
pub fn two_barrier_t_bounds(t1: f64, t2: f64) -> Result<Interval> {
    let (a, b) = (theta_from_t(t1)?, theta_from_t(t2)?);
    // sinh^2 theta = 1/T - 1
    let gap = rapidity_gap(
        ((1.0 - t1) / t1).sqrt(),
        ((1.0 - t2) / t2).sqrt(),
        (t2 - t1) / (t1 * t2),
    );
    Ok(Interval::new(
        t_from_theta(a + b),
        t_from_theta(gap.min(a + b)),
    ))
}

/// `[tanh^2|th1 - th2|, tanh^2(th1 + th2)]`.
pub fn two_barrier_r_bounds(r1: f64, r2: f64) -> Result<Interval> {
    let (a, b) = (theta_from_r(r1)?, theta_from_r(r2)?);
    // sinh^2 theta = R / (1 - R)
    let gap = rapidity_gap(
        (r1 / (1.0 - r1)).sqrt(),
        (r2 / (1.0 - r2)).sqrt(),
        (r1 - r2) / ((1.0 - r1) * (1.0 - r2)),
    );
    Ok(Interval::new(
        r_from_theta(gap.min(a + b)),
        r_from_theta(a + b),
    ))
}

/// `[sinh^2|th1 - th2|, sinh^2(th1 + th2)]`.
pub fn two_barrier_n_bounds(n1: f64, n2: f64) -> Result<Interval> {
    let (a, b) = (theta_from_n(n1)?, theta_from_n(n2)?);
    let gap = rapidity_gap(n1.sqrt(), n2.sqrt(), n1 - n2);
    Ok(Interval::new(
        n_from_theta(gap.min(a + b)),
        n_from_theta(a + b),
    ))
}

fn check_t(t: f64) -> Result<()> {
    if t > 0.0 && t <= 1.0 {
        Ok(())
    } else {
        Err(domain(format!("transmission must lie in (0, 1], got {t}")))
    }
}

fn check_r(r: f64) -> Result<()> {
    if (0.0..1.0).contains(&r) {
        Ok(())
    } else {
        Err(domain(format!("reflection must lie in [0, 1), got {r}")))
    }
}

/// `T1 T2 / (1 +- sqrt(1-T1) sqrt(1-T2))^2`, upper edge capped at 1.
pub fn two_barrier_t_bounds_rational(t1: f64, t2: f64) -> Result<Interval> {
    check_t(t1)?;
    check_t(t2)?;
    let ab = ((1.0 - t1) * (1.0 - t2)).sqrt();
    let low = t1 * t2 / (1.0 + ab).powi(2);
    if ab == 0.0 {
        return Ok(Interval::new(low, low));
    }
    if t1 == t2 {
        return Ok(Interval::new(low, 1.0));
    }
    // 1 - ab = (1 - (1-T1)(1-T2)) / (1 + ab)
    let one_minus_ab = (t1 + t2 - t1 * t2) / (1.0 + ab);
    let high = (t1 * t2 / (one_minus_ab * one_minus_ab)).min(1.0);
    Ok(Interval::new(low, high))
}

/// `((sqrt R1 -+ sqrt R2) / (1 -+ sqrt R1 sqrt R2))^2`.
pub fn two_barrier_r_bounds_rational(r1: f64, r2: f64) -> Result<Interval> {
    check_r(r1)?;
    check_r(r2)?;
    let (x, y) = (r1.sqrt(), r2.sqrt());
    let xy = (r1 * r2).sqrt();
    let high = ((x + y) / (1.0 + xy)).powi(2);
    if xy == 0.0 {
        return Ok(Interval::new(high, high));
    }
    if r1 == r2 {
        return Ok(Interval::new(0.0, high));
    }
    // x - y = (R1 - R2)/(x + y);  1 - xy = ((1 - R1) + R1 (1 - R2)) / (1 + xy)
    let diff = (r1 - r2) / (x + y);
    let one_minus_xy = ((1.0 - r1) + r1 * (1.0 - r2)) / (1.0 + xy);
    let low = (diff / one_minus_xy).powi(2);
    Ok(Interval::new(low, high))
}

/// `(sqrt(N1 (N2 + 1)) -+ sqrt(N2 (N1 + 1)))^2`.
pub fn two_barrier_n_bounds_rational(n1: f64, n2: f64) -> Result<Interval> {
    for n in [n1, n2] {
        if !(n >= 0.0 && n.is_finite()) {
            return Err(domain(format!(
                "particle number must be finite and non-negative, got {n}"
            )));
        }
    }
    let u = (n1 * (n2 + 1.0)).sqrt();
    let v = (n2 * (n1 + 1.0)).sqrt();
    // (u + v)^2 expanded so that integer inputs stay exact
    let high = n1 * (n2 + 1.0)
        + n2 * (n1 + 1.0)
        + 2.0 * (n1 * n2).sqrt() * ((n1 + 1.0) * (n2 + 1.0)).sqrt();
    let sum = u + v;
    if n1 * n2 == 0.0 {
        return Ok(Interval::new(high, high));
    }
    // u - v = (u^2 - v^2)/(u + v) = (N1 - N2)/(u + v)
    let low = if sum == 0.0 {
        0.0
    } else {
        ((n1 - n2) / sum).powi(2)
    };
    Ok(Interval::new(low, high))
}
