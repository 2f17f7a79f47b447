//! Hypergeometric resummation of the weak-field series.
//!
//! The model is
//!
//! ```text
//! E(ε) = E₀ {1 + h₄ z Γ(l+h₁)Γ(l+h₂)/Γ(l+h₁+h₂) ₂F₁(h₁, h₂; h₁+h₂+l; 1 + h₃z)},   z = (ε/4)²
//! ```
//!
//! whose argument sits on the branch cut of `₂F₁` for real fields, so a real
//! series resums to a complex resonance `E = Δ − iΓ/2`.

mod fit;
mod tail;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::coeffs::CoeffError;
use crate::specfun::{shifted_kernel, CutSide, SpecfunError};

pub use fit::{fit_coefficients, fit_model, DEFAULT_L};
pub use tail::{critical_field, linear_fit, slope_exponent, CriticalField, LinearFit, WINDOW_FRACTIONS};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ResumError {
    #[error("branch parameter must satisfy l > 4, got {0}")]
    InvalidL(f64),
    #[error("series is degenerate: {0}")]
    DegenerateSeries(&'static str),
    #[error("fit needs E_2..E_8, series has order {0}")]
    InsufficientOrder(usize),
    #[error("field must be finite and nonnegative, got {0}")]
    InvalidField(f64),
    #[error("invalid field grid: {0}")]
    InvalidGrid(&'static str),
    #[error("no ionization: every decay rate is below 1e-15")]
    NoIonization,
    #[error("high-field decay rate is not linear (best R^2 = {r_squared})")]
    NonlinearTail { r_squared: f64 },
    #[error("insufficient data: need {needed}, got {got}")]
    InsufficientData { needed: usize, got: usize },
    #[error("slope must be positive, got {0}")]
    NonPositiveSlope(f64),
    #[error(transparent)]
    Specfun(#[from] SpecfunError),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
}

/// Fitted continuation parameters.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct HypModel {
    pub h1: Complex64,
    pub h2: Complex64,
    pub h3: Complex64,
    pub h4: Complex64,
    pub l: f64,
    pub e0: f64,
    pub alpha: f64,
}

impl HypModel {
    /// Taylor coefficients `E₂, E₄, …, E_{2n}` of the model about `ε = 0`.
    pub fn taylor_coefficients(&self, n: usize) -> Result<Vec<Complex64>, ResumError> {
        let mut out = Vec::with_capacity(n);
        // Γ(l − k) (h₁)_k (h₂)_k h₃^k / (k! 16^{k+1})
        let mut gamma_lk = crate::specfun::complex_gamma(Complex64::new(self.l, 0.0))?;
        let mut running = Complex64::new(1.0 / 16.0, 0.0);
        for k in 0..n {
            out.push(self.e0 * self.h4 * running * gamma_lk);
            let kf = k as f64;
            running *= (self.h1 + kf) * (self.h2 + kf) * self.h3 / ((kf + 1.0) * 16.0);
            gamma_lk /= self.l - kf - 1.0;
        }
        Ok(out)
    }
}

/// Complex energy at one field strength.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ResonancePoint {
    pub field: f64,
    pub energy: Complex64,
    /// `Re E`
    pub delta: f64,
    /// `−2 Im E`
    pub gamma: f64,
}

impl ResonancePoint {
    fn new(field: f64, energy: Complex64) -> Self {
        Self { field, energy, delta: energy.re, gamma: 0.0 - 2.0 * energy.im }
    }
}

/// Evaluate the model at field `ε`, on the side of the cut with `Im E ≤ 0`.
pub fn resonance(model: &HypModel, field: f64) -> Result<ResonancePoint, ResumError> {
    let above = resonance_on_side(model, field, CutSide::Above)?;
    if above.energy.im > 0.0 {
        return resonance_on_side(model, field, CutSide::Below);
    }
    Ok(above)
}

/// Evaluate the model at field `ε` on a fixed side of the cut. Unlike
/// [`resonance`] this is one analytic continuation for every field, and its
/// decay rate changes sign where `Im G` does at very strong fields.
pub fn resonance_on_side(model: &HypModel, field: f64, side: CutSide) -> Result<ResonancePoint, ResumError> {
    if !(field.is_finite() && field >= 0.0) {
        return Err(ResumError::InvalidField(field));
    }
    if field == 0.0 {
        return Ok(ResonancePoint::new(0.0, Complex64::new(model.e0, 0.0)));
    }
    let z = (field / 4.0).powi(2);
    let g = shifted_kernel(model.h1, model.h2, model.l, model.h3 * z, side)?;
    Ok(ResonancePoint::new(field, model.e0 * (1.0 + model.h4 * z * g)))
}

/// `resonance` over a nonempty, nonnegative, strictly increasing grid.
pub fn sweep(model: &HypModel, fields: &[f64]) -> Result<Vec<ResonancePoint>, ResumError> {
    validate_grid(fields)?;
    fields.par_iter().map(|&f| resonance(model, f)).collect()
}

pub(crate) fn validate_grid(fields: &[f64]) -> Result<(), ResumError> {
    if fields.is_empty() {
        return Err(ResumError::InvalidGrid("empty"));
    }
    if fields.iter().any(|f| !(f.is_finite() && *f >= 0.0)) {
        return Err(ResumError::InvalidGrid("fields must be finite and nonnegative"));
    }
    if fields.windows(2).any(|w| w[1] <= w[0]) {
        return Err(ResumError::InvalidGrid("fields must be strictly increasing"));
    }
    Ok(())
}
