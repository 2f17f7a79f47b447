//! Dispersion-relation check of the resummed decay rates.
//!
//! For `n ≥ 2` the weak-field coefficients follow from the decay rate alone,
//!
//! ```text
//! E_{2n} = −(1/π) ∫₀^∞ Γ(ε) / ε^{2n+1} dε,
//! ```
//!
//! which is evaluated here in `u = ln ε`.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::coeffs::{EnergySeries, ToF64};
use crate::quad::{integrate, QuadConfig};
use crate::resum::{resonance, HypModel, ResumError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ValidateError {
    #[error("the dispersion relation holds only for n >= 2, got n = {0}")]
    NotValid(usize),
    #[error("dispersion report needs a series of order >= 4, got {0}")]
    OrderTooSmall(usize),
    #[error("integration failed: {0}")]
    IntegrationFailure(String),
    #[error(transparent)]
    Resum(#[from] ResumError),
}

#[derive(Clone, Copy, Debug)]
pub struct DispersionConfig {
    /// Relative tolerance on the integral.
    pub rel_tol: f64,
    /// Integrand cut below this fraction of its peak on the weak-field side.
    pub lower_fraction: f64,
    /// Bound on the neglected strong-field tail, relative to the integral.
    pub tail_fraction: f64,
    /// Scan grid in `ln ε`.
    pub scan_start: f64,
    pub scan_stop: f64,
    pub scan_step: f64,
}

impl Default for DispersionConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            lower_fraction: 1e-25,
            tail_fraction: 1e-10,
            scan_start: (1e-3f64).ln(),
            scan_stop: (1e6f64).ln(),
            scan_step: 0.05,
        }
    }
}

/// Value and bookkeeping of one dispersion integral.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DispersionIntegral {
    pub n: usize,
    pub value: f64,
    pub error: f64,
    pub lower_cutoff: f64,
    pub upper_cutoff: f64,
    pub evaluations: usize,
}

fn log_integrand(model: &HypModel, n: usize, u: f64) -> Result<f64, ResumError> {
    let eps = u.exp();
    let gamma = resonance(model, eps)?.gamma;
    Ok(gamma * (-2.0 * n as f64 * u).exp())
}

/// `−(1/π)∫ Γ/ε^{2n+1} dε` with full metadata.
pub fn dispersion_integral(
    model: &HypModel,
    n: usize,
    config: &DispersionConfig,
) -> Result<DispersionIntegral, ValidateError> {
    if n < 2 {
        return Err(ValidateError::NotValid(n));
    }
    let steps = ((config.scan_stop - config.scan_start) / config.scan_step).ceil() as usize;
    let grid: Vec<f64> = (0..=steps).map(|i| config.scan_start + i as f64 * config.scan_step).collect();
    let values: Vec<f64> = grid.par_iter().map(|&u| log_integrand(model, n, u)).collect::<Result<_, _>>()?;
    let (peak_index, peak) = values
        .iter()
        .copied()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .filter(|(_, v)| *v > 0.0)
        .ok_or_else(|| ValidateError::IntegrationFailure("decay rate vanishes on the scan".into()))?;

    let lower_index = (0..peak_index).rev().find(|&i| values[i] < config.lower_fraction * peak).unwrap_or(0);
    let rough: f64 = values.iter().sum::<f64>() * config.scan_step;
    // The model's rate grows like ε^{2−2Re h} at strong field, so past u the
    // tail is at most Γ(ε)/((2n−2) ε^{2n}) under a quadratic-growth bound.
    let tail = |i: usize| values[i] / (2.0 * n as f64 - 2.0);
    let upper_index = (peak_index..grid.len())
        .find(|&i| tail(i) < config.tail_fraction * rough)
        .ok_or_else(|| ValidateError::IntegrationFailure("tail does not decay on the scan".into()))?;

    let (lo, hi) = (grid[lower_index], grid[upper_index]);
    let quad = QuadConfig { abs_tol: config.rel_tol * rough, rel_tol: config.rel_tol, max_intervals: 4000 };
    let mut failure = None;
    let result = integrate(
        |u| match log_integrand(model, n, u) {
            Ok(v) => v,
            Err(e) => {
                failure.get_or_insert(e);
                f64::NAN
            }
        },
        lo,
        hi,
        quad,
    );
    if let Some(e) = failure {
        return Err(e.into());
    }
    let r = result.map_err(|e| ValidateError::IntegrationFailure(e.to_string()))?;
    let scale = -1.0 / std::f64::consts::PI;
    Ok(DispersionIntegral {
        n,
        value: scale * r.value,
        error: r.error / std::f64::consts::PI,
        lower_cutoff: lo.exp(),
        upper_cutoff: hi.exp(),
        evaluations: r.evaluations + grid.len(),
    })
}

/// `E_{2n}` reconstructed from the decay rate.
pub fn dispersion_coefficient(model: &HypModel, n: usize) -> Result<f64, ValidateError> {
    dispersion_integral(model, n, &DispersionConfig::default()).map(|d| d.value)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DispersionEntry {
    pub n: usize,
    pub series: f64,
    pub integral: DispersionIntegral,
    pub relative_error: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DispersionReport {
    pub alpha: f64,
    pub entries: Vec<DispersionEntry>,
}

/// Compare `E_4 … E_{2·min(4, order)}` with their dispersion integrals.
pub fn dispersion_report<T: ToF64>(
    model: &HypModel,
    series: &EnergySeries<T>,
) -> Result<DispersionReport, ValidateError> {
    if series.order < 4 {
        return Err(ValidateError::OrderTooSmall(series.order));
    }
    let e = series.e_f64();
    let config = DispersionConfig::default();
    let entries = (2..=series.order.min(4))
        .map(|n| {
            let integral = dispersion_integral(model, n, &config)?;
            let relative_error = (integral.value - e[n]).abs() / e[n].abs();
            Ok(DispersionEntry { n, series: e[n], integral, relative_error })
        })
        .collect::<Result<_, ValidateError>>()?;
    Ok(DispersionReport { alpha: series.params.alpha, entries })
}
