use num_complex::Complex64;

use super::{HypModel, ResumError};
use crate::coeffs::{EnergySeries, ToF64};
use crate::specfun::complex_gamma;

pub const DEFAULT_L: f64 = 30.0;

/// Match the model to `E₂..E₈` of a series of order at least 4.
pub fn fit_model<T: ToF64>(series: &EnergySeries<T>, l: f64) -> Result<HypModel, ResumError> {
    if series.order < 4 || series.e_coeffs.len() < 5 {
        return Err(ResumError::InsufficientOrder(series.order));
    }
    let e = series.e_f64();
    let coeffs = [e[1], e[2], e[3], e[4]];
    fit_coefficients(series.params.e0, &coeffs, l, series.params.alpha)
}

/// Closed-form fit from raw coefficients `[E₂, E₄, E₆, E₈]`.
///
/// With `t_k = E_{2(k+1)} 16^{k+1}/E₀` and `ρ_k = t_{k+1}/t_k`, the matching
/// conditions are linear in `(h₃P, h₃S, h₃)` where `S = h₁ + h₂`, `P = h₁h₂`.
pub fn fit_coefficients(e0: f64, coeffs: &[f64; 4], l: f64, alpha: f64) -> Result<HypModel, ResumError> {
    if !(l.is_finite() && l > 4.0) {
        return Err(ResumError::InvalidL(l));
    }
    if !(e0.is_finite() && e0 != 0.0) {
        return Err(ResumError::DegenerateSeries("E0 must be finite and nonzero"));
    }
    let mut t = [0.0; 4];
    let mut scale = 1.0;
    for (k, &c) in coeffs.iter().enumerate() {
        scale *= 16.0;
        t[k] = c * scale / e0;
        if t[k] == 0.0 || !t[k].is_finite() {
            return Err(ResumError::DegenerateSeries("a matched coefficient vanishes"));
        }
    }
    let r0 = t[1] / t[0] * (l - 1.0);
    let r1 = 2.0 * t[2] / t[1] * (l - 2.0);
    let r2 = 3.0 * t[3] / t[2] * (l - 3.0);
    let h3 = 0.5 * (r0 - 2.0 * r1 + r2);
    let size = r0.abs().max(r1.abs()).max(r2.abs());
    if h3.abs() < 1e-14 * size {
        return Err(ResumError::DegenerateSeries("linear system is singular"));
    }
    let prod = r0 / h3;
    let sum = (r1 - r0) / h3 - 1.0;
    let (h1, h2) = quadratic_roots(sum, prod);
    let h4 = t[0] / complex_gamma(Complex64::new(l, 0.0))?.re;
    Ok(HypModel { h1, h2, h3: Complex64::new(h3, 0.0), h4: Complex64::new(h4, 0.0), l, e0, alpha })
}

/// Roots of `x² − Sx + P`, ordered by `(Re, Im)`. Complex roots are exact
/// conjugates.
fn quadratic_roots(s: f64, p: f64) -> (Complex64, Complex64) {
    let disc = s * s - 4.0 * p;
    if disc < 0.0 {
        let re = 0.5 * s;
        let im = 0.5 * (-disc).sqrt();
        return (Complex64::new(re, -im), Complex64::new(re, im));
    }
    // Avoid cancellation in the smaller root.
    let q = 0.5 * (s + s.signum() * disc.sqrt());
    let (a, b) = if q == 0.0 { (0.0, 0.0) } else { (q, p / q) };
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    (Complex64::new(lo, 0.0), Complex64::new(hi, 0.0))
}
