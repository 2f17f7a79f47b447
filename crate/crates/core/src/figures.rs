//! Datasets behind the three figures: the 3D resonance, the four-dimension
//! sweeps with their linear high-field fits, and the Landau comparison.

use serde::Serialize;
use thiserror::Error;

use crate::coeffs::{energy_series, CoeffError, DimensionParams};
use crate::resum::{
    critical_field, fit_model, slope_exponent, sweep, CriticalField, HypModel, ResonancePoint, ResumError,
};
use crate::wkb::{landau_calibrated_rate, landau_log, WkbError};

/// Dimension and upper end of its field sweep.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FigureCase {
    pub alpha: f64,
    pub field_max: f64,
}

pub const FIGURE_CASES: [FigureCase; 4] = [
    FigureCase { alpha: 3.0, field_max: 1.0 },
    FigureCase { alpha: 2.5, field_max: 2.0 },
    FigureCase { alpha: 2.0, field_max: 5.0 },
    FigureCase { alpha: 1.5, field_max: 20.0 },
];

/// Critical fields quoted for the four cases, in the order of [`FIGURE_CASES`].
pub const QUOTED_CRITICAL_FIELDS: [f64; 4] = [0.12, 0.33, 1.3, 10.2];

pub const SWEEP_POINTS: usize = 101;
pub const LANDAU_POINTS: usize = 41;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FigureError {
    #[error("grid needs start < stop and at least 2 points")]
    InvalidGrid,
    #[error(transparent)]
    Coeff(#[from] CoeffError),
    #[error(transparent)]
    Resum(#[from] ResumError),
    #[error(transparent)]
    Wkb(#[from] WkbError),
}

/// `count` evenly spaced points from `start` to `stop` inclusive.
pub fn linear_grid(start: f64, stop: f64, count: usize) -> Result<Vec<f64>, FigureError> {
    if count < 2 || !(start < stop) || !start.is_finite() || !stop.is_finite() {
        return Err(FigureError::InvalidGrid);
    }
    let step = (stop - start) / (count - 1) as f64;
    Ok((0..count).map(|i| if i + 1 == count { stop } else { start + i as f64 * step }).collect())
}

/// `count` logarithmically spaced points from `start` to `stop` inclusive.
pub fn log_grid(start: f64, stop: f64, count: usize) -> Result<Vec<f64>, FigureError> {
    if !(start > 0.0) {
        return Err(FigureError::InvalidGrid);
    }
    let exps = linear_grid(start.ln(), stop.ln(), count)?;
    let n = exps.len();
    Ok(exps
        .into_iter()
        .enumerate()
        .map(|(i, e)| match i {
            0 => start,
            _ if i + 1 == n => stop,
            _ => e.exp(),
        })
        .collect())
}

/// Fitted model for a dimension at branch parameter `l`.
pub fn dimension_model(alpha: f64, l: f64) -> Result<HypModel, FigureError> {
    Ok(fit_model(&energy_series(alpha, 4)?, l)?)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Figure1 {
    pub model: HypModel,
    pub points: Vec<ResonancePoint>,
    /// Grid field where `Δ` is smallest.
    pub delta_minimum: f64,
}

pub fn figure1(l: f64) -> Result<Figure1, FigureError> {
    let case = FIGURE_CASES[0];
    let model = dimension_model(case.alpha, l)?;
    let points = sweep(&model, &linear_grid(0.0, case.field_max, SWEEP_POINTS)?)?;
    let delta_minimum =
        points.iter().min_by(|a, b| a.delta.total_cmp(&b.delta)).map(|p| p.field).expect("nonempty sweep");
    Ok(Figure1 { model, points, delta_minimum })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Figure2Panel {
    pub case: FigureCase,
    pub p: f64,
    pub model: HypModel,
    pub points: Vec<ResonancePoint>,
    pub critical: CriticalField,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Figure2 {
    pub panels: Vec<Figure2Panel>,
    /// `γ` in `slope ∝ p^γ`.
    pub slope_exponent: f64,
}

pub fn figure2(l: f64) -> Result<Figure2, FigureError> {
    let panels = FIGURE_CASES
        .iter()
        .map(|&case| {
            let params = DimensionParams::new(case.alpha)?;
            let model = dimension_model(case.alpha, l)?;
            let points = sweep(&model, &linear_grid(0.0, case.field_max, SWEEP_POINTS)?)?;
            let critical = critical_field(&points)?;
            Ok(Figure2Panel { case, p: params.p, model, points, critical })
        })
        .collect::<Result<Vec<_>, FigureError>>()?;
    let pairs: Vec<(f64, f64)> = panels.iter().map(|p| (p.p, p.critical.fit.slope)).collect();
    let slope_exponent = slope_exponent(&pairs)?;
    Ok(Figure2 { panels, slope_exponent })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LandauRow {
    pub field: f64,
    pub gamma: f64,
    pub gamma_landau: f64,
    pub log_closed_form: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Figure3Panel {
    pub case: FigureCase,
    pub p: f64,
    /// Quoted critical field that centres the window.
    pub window_critical_field: f64,
    pub calibration_field: f64,
    pub rows: Vec<LandauRow>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Figure3 {
    pub panels: Vec<Figure3Panel>,
}

/// Field window `[ε_c/4, 2ε_c]` around a critical field.
pub fn landau_window(critical_field: f64) -> (f64, f64) {
    (0.25 * critical_field, 2.0 * critical_field)
}

/// Resummed and calibrated Landau rates over `[ε_c/4, 2ε_c]` for each case,
/// with `ε_c` from [`QUOTED_CRITICAL_FIELDS`].
pub fn figure3(l: f64) -> Result<Figure3, FigureError> {
    let panels = FIGURE_CASES
        .iter()
        .zip(QUOTED_CRITICAL_FIELDS)
        .map(|(&case, critical)| {
            let p = DimensionParams::new(case.alpha)?.p;
            let model = dimension_model(case.alpha, l)?;
            let (lo, hi) = landau_window(critical);
            let grid = linear_grid(lo, hi, LANDAU_POINTS)?;
            let reference = sweep(&model, &grid)?;
            let landau = landau_calibrated_rate(p, &grid, &reference)?;
            let calibration_field =
                reference.iter().find(|r| r.gamma > 1e-30).map(|r| r.field).ok_or(WkbError::NoReference)?;
            let rows = reference
                .iter()
                .zip(&landau)
                .map(|(r, &(field, gamma_landau))| {
                    Ok(LandauRow { field, gamma: r.gamma, gamma_landau, log_closed_form: landau_log(p, field)? })
                })
                .collect::<Result<Vec<_>, FigureError>>()?;
            Ok(Figure3Panel { case, p, window_critical_field: critical, calibration_field, rows })
        })
        .collect::<Result<Vec<_>, FigureError>>()?;
    Ok(Figure3 { panels })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids() {
        let g = linear_grid(0.0, 1.0, 101).unwrap();
        assert_eq!(g.len(), 101);
        assert_eq!((g[0], g[100]), (0.0, 1.0));
        assert!((g[37] - 0.37).abs() < 1e-15);
        let g = log_grid(0.01, 1.0, 3).unwrap();
        assert_eq!(g[0], 0.01);
        assert_eq!(g[2], 1.0);
        assert!((g[1] - 0.1).abs() < 1e-15);
        assert!(linear_grid(1.0, 1.0, 5).is_err());
        assert!(linear_grid(0.0, 1.0, 1).is_err());
        assert!(log_grid(0.0, 1.0, 4).is_err());
    }

    #[test]
    fn figure1_minimum() {
        let f = figure1(30.0).unwrap();
        assert_eq!(f.points.len(), SWEEP_POINTS);
        assert!((f.delta_minimum - 0.7).abs() <= 0.1);
    }
}
