//! Landau-type tunneling through the parabolic-coordinate barrier.
//!
//! In the low-field limit the outer coordinate `y` sees
//!
//! ```text
//! U(y) = −(1/4)(2/y + εy − 1/p² + p(2−p)/y²)
//! ```
//!
//! with `U > 0` on the forbidden interval between the turning points. The
//! turning points are the positive roots of `g(y) = εy³ − y²/p² + 2y + p(2−p)`,
//! since `U = −g/(4y²)`.

use serde::Serialize;
use thiserror::Error;

use crate::quad::{integrate, QuadConfig, QuadError};
use crate::resum::ResonancePoint;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WkbError {
    #[error("{0}")]
    DomainError(&'static str),
    #[error("no barrier at p = {p}, field = {field}")]
    NoBarrier { p: f64, field: f64 },
    #[error("no reference point with a decay rate above 1e-30")]
    NoReference,
    #[error(transparent)]
    Quadrature(#[from] QuadError),
}

fn check_p(p: f64) -> Result<(), WkbError> {
    if p.is_finite() && p > 0.0 && p < 2.0 {
        Ok(())
    } else {
        Err(WkbError::DomainError("p must lie in (0, 2)"))
    }
}

fn check_field(field: f64) -> Result<(), WkbError> {
    if field.is_finite() && field > 0.0 {
        Ok(())
    } else {
        Err(WkbError::DomainError("field must be finite and positive"))
    }
}

/// `U(y)`; positive inside the barrier.
pub fn barrier_potential(p: f64, field: f64, y: f64) -> Result<f64, WkbError> {
    if !(y.is_finite() && y > 0.0) {
        return Err(WkbError::DomainError("y must be positive"));
    }
    Ok(-0.25 * (2.0 / y + field * y - 1.0 / (p * p) + p * (2.0 - p) / (y * y)))
}

fn cubic(p: f64, field: f64, y: f64) -> f64 {
    ((field * y - 1.0 / (p * p)) * y + 2.0) * y + p * (2.0 - p)
}

/// Bisect to adjacent doubles; `g(lo)` and `g(hi)` must differ in sign.
fn bisect(g: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let lo_sign = g(lo) > 0.0;
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let v = g(mid);
        if v == 0.0 {
            return mid;
        }
        if (v > 0.0) == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if g(lo).abs() <= g(hi).abs() {
        lo
    } else {
        hi
    }
}

/// Inner and outer turning points `y₁ < y₂`.
pub fn turning_points(p: f64, field: f64) -> Result<(f64, f64), WkbError> {
    check_p(p)?;
    check_field(field)?;
    let g = |y| cubic(p, field, y);
    // g'(y) = 3εy² − 2y/p² + 2
    let b = 1.0 / (p * p);
    let disc = b * b - 6.0 * field;
    if disc <= 0.0 {
        return Err(WkbError::NoBarrier { p, field });
    }
    let root = disc.sqrt();
    let y_max = 2.0 / (b + root);
    let y_min = (b + root) / (3.0 * field);
    if g(y_min) >= 0.0 {
        return Err(WkbError::NoBarrier { p, field });
    }
    let y1 = bisect(g, y_max, y_min);
    let mut hi = 2.0 * y_min;
    while g(hi) <= 0.0 {
        hi *= 2.0;
    }
    let y2 = bisect(g, y_min, hi);
    Ok((y1, y2))
}

/// Barrier geometry and WKB transmittance at one field.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BarrierModel {
    pub p: f64,
    pub field: f64,
    pub y1: f64,
    pub y2: f64,
    /// `ln T = −2∫√U dy`
    pub log_transmittance: f64,
    pub transmittance: f64,
}

/// Solve the barrier and integrate `√U` across it.
///
/// With `y = m − h cos θ` and the third root `y₃ < 0` of the cubic, the
/// integrand becomes `h² sin²θ √(ε(y − y₃)) / (2y)` on `[0, π]`, which is
/// smooth.
pub fn barrier_model(p: f64, field: f64) -> Result<BarrierModel, WkbError> {
    let (y1, y2) = turning_points(p, field)?;
    let y3 = -p * (2.0 - p) / (field * y1 * y2);
    let m = 0.5 * (y1 + y2);
    let h = 0.5 * (y2 - y1);
    let integrand = |theta: f64| {
        let y = m - h * theta.cos();
        let s = theta.sin();
        h * h * s * s * (field * (y - y3)).sqrt() / (2.0 * y)
    };
    let config = QuadConfig { abs_tol: 1e-12, rel_tol: 1e-14, max_intervals: 4000 };
    let action = integrate(integrand, 0.0, std::f64::consts::PI, config)?;
    let log_transmittance = -2.0 * action.value;
    Ok(BarrierModel { p, field, y1, y2, log_transmittance, transmittance: log_transmittance.exp() })
}

/// `T = exp(−2∫_{y₁}^{y₂} √U dy)`.
pub fn wkb_transmittance(p: f64, field: f64) -> Result<f64, WkbError> {
    barrier_model(p, field).map(|b| b.transmittance)
}

/// Zero-field inner turning point `p² + p√(2p)`.
pub fn zero_field_inner_point(p: f64) -> f64 {
    p * p + p * (2.0 * p).sqrt()
}

/// Natural log of [`landau_closed_form`].
pub fn landau_log(p: f64, field: f64) -> Result<f64, WkbError> {
    check_p(p)?;
    check_field(field)?;
    let y1 = zero_field_inner_point(p);
    Ok(p * (4.0 / (p * p * field * y1)).ln() - landau_exponent(p) / field + y1 / p)
}

/// `T ≈ (4/(p²εy₁))^p exp(−2/(3p³ε)) e^{y₁/p}`.
pub fn landau_closed_form(p: f64, field: f64) -> Result<f64, WkbError> {
    landau_log(p, field).map(f64::exp)
}

/// Field-scaled exponent `2/(3p³)` of the closed form.
pub fn landau_exponent(p: f64) -> f64 {
    2.0 / (3.0 * p * p * p)
}

/// Keldysh exponent `2(2I_p)^{3/2}/3`.
pub fn keldysh_exponent(ip: f64) -> f64 {
    2.0 * (2.0 * ip).powf(1.5) / 3.0
}

/// Closed form scaled by a single constant so that it equals the resummed
/// rate at the lowest reference field with `Γ > 1e-30`.
pub fn landau_calibrated_rate(
    p: f64,
    fields: &[f64],
    reference: &[ResonancePoint],
) -> Result<Vec<(f64, f64)>, WkbError> {
    let anchor = reference
        .iter()
        .filter(|r| r.field > 0.0 && r.gamma > 1e-30)
        .min_by(|a, b| a.field.total_cmp(&b.field))
        .ok_or(WkbError::NoReference)?;
    let log_c = anchor.gamma.ln() - landau_log(p, anchor.field)?;
    fields.iter().map(|&f| Ok((f, (log_c + landau_log(p, f)?).exp()))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn potential_inside_barrier() {
        let u = barrier_potential(1.0, 0.05, 8.0).unwrap();
        assert!((u - 0.083_593_75).abs() < 1e-15);
        assert!(barrier_potential(1.0, 0.05, 1e6).unwrap() < 0.0);
        assert!(barrier_potential(1.0, 0.05, 1e-6).unwrap() < 0.0);
        assert!(barrier_potential(1.0, 0.05, 0.0).is_err());
    }

    #[test]
    fn turning_points_known_case() {
        let (y1, y2) = turning_points(1.0, 0.05).unwrap();
        assert!((y1 - 2.74).abs() < 0.01 && (y2 - 17.7).abs() < 0.05, "{y1} {y2}");
        for y in [y1, y2] {
            assert!(barrier_potential(1.0, 0.05, y).unwrap().abs() < 1e-10);
        }
        assert!(barrier_potential(1.0, 0.05, 0.5 * (y1 + y2)).unwrap() > 0.0);
        assert!(matches!(turning_points(1.0, 10.0), Err(WkbError::NoBarrier { .. })));
    }

    #[test]
    fn weak_field_limit_of_inner_point() {
        let (y1, _) = turning_points(1.0, 1e-7).unwrap();
        assert!((y1 - (1.0 + 2f64.sqrt())).abs() < 1e-5);
        assert_eq!(zero_field_inner_point(1.0), 1.0 + 2f64.sqrt());
    }

    #[test]
    fn transmittance_grows_with_field() {
        let t: Vec<f64> = [0.01, 0.02, 0.05, 0.1].iter().map(|&f| wkb_transmittance(1.0, f).unwrap()).collect();
        assert!(t.windows(2).all(|w| w[0] < w[1]), "{t:?}");
        assert!(t.iter().all(|&v| v > 0.0 && v <= 1.0));
    }

    #[test]
    fn exponent_approaches_landau() {
        let fields = [0.05, 0.01, 0.005, 0.001];
        for p in [1.0, 0.5] {
            let numeric: Vec<f64> = fields.iter().map(|&f| barrier_model(p, f).unwrap().log_transmittance).collect();
            let ratio: Vec<f64> = numeric.iter().zip(&fields).map(|(t, f)| t / (-landau_exponent(p) / f)).collect();
            assert!(ratio.windows(2).all(|w| (w[1] - 1.0).abs() < (w[0] - 1.0).abs()), "{ratio:?}");
            assert!((ratio[3] - 1.0).abs() < 0.1);
            // Closed form and quadrature differ by a constant at weak field.
            let offset: Vec<f64> = numeric.iter().zip(&fields).map(|(t, &f)| landau_log(p, f).unwrap() - t).collect();
            assert!((offset[3] - offset[2]).abs() < 0.05, "{offset:?}");
        }
    }

    #[test]
    fn keldysh_identity() {
        for p in [0.25, 0.5, 0.75, 1.0] {
            let ip = 1.0 / (2.0 * p * p);
            assert!((keldysh_exponent(ip) - landau_exponent(p)).abs() < 1e-14 * landau_exponent(p));
        }
    }

    #[test]
    fn closed_form_field_reduction() {
        let f = 0.3;
        let d = landau_log(0.25, f).unwrap() - landau_log(1.0, f).unwrap();
        let y = |p: f64| zero_field_inner_point(p);
        let pre = 0.25 * (4.0 / (0.0625 * f * y(0.25))).ln() + y(0.25) / 0.25 - ((4.0 / (f * y(1.0))).ln() + y(1.0));
        assert!((d - pre + (2.0 / (3.0 * f)) * 63.0).abs() < 1e-9);
        assert!(landau_closed_form(1.0, -1.0).is_err());
        assert!(landau_closed_form(0.0, 1.0).is_err());
    }

    #[test]
    fn calibration_anchor_is_exact() {
        let r = |field: f64, gamma: f64| ResonancePoint {
            field,
            energy: Complex64::new(-0.5, -gamma / 2.0),
            delta: -0.5,
            gamma,
        };
        let refs = [r(0.0, 0.0), r(0.02, 1e-40), r(0.05, 3e-6), r(0.1, 1e-3)];
        let curve = landau_calibrated_rate(1.0, &[0.05, 0.1], &refs).unwrap();
        assert!((curve[0].1 - 3e-6).abs() < 1e-12 * 3e-6);
        assert!(matches!(landau_calibrated_rate(1.0, &[0.1], &refs[..2]), Err(WkbError::NoReference)));
    }
}
