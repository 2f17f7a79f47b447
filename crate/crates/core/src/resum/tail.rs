use serde::Serialize;

use super::{ResonancePoint, ResumError};

/// Candidate fractions of the swept field range, counted from the top.
pub const WINDOW_FRACTIONS: [f64; 4] = [0.2, 0.3, 0.4, 0.5];
const DEFAULT_FRACTION: f64 = 0.3;
const MIN_R_SQUARED: f64 = 0.99;
const MIN_POINTS: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

/// Ordinary least squares `y ≈ slope·x + intercept`.
pub fn linear_fit(x: &[f64], y: &[f64]) -> Option<LinearFit> {
    let n = x.len();
    if n < 2 || y.len() != n {
        return None;
    }
    let nf = n as f64;
    let mx = x.iter().sum::<f64>() / nf;
    let my = y.iter().sum::<f64>() / nf;
    let sxx: f64 = x.iter().map(|v| (v - mx).powi(2)).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let syy: f64 = y.iter().map(|v| (v - my).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_res: f64 = x.iter().zip(y).map(|(a, b)| (b - slope * a - intercept).powi(2)).sum();
    let r_squared = if syy == 0.0 { 1.0 } else { 1.0 - ss_res / syy };
    Some(LinearFit { slope, intercept, r_squared })
}

/// Linear high-field fit of `Γ(ε)` and its field-axis intercept.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CriticalField {
    pub field: f64,
    pub fit: LinearFit,
    /// Fraction of the swept range, counted from the top, that was fitted.
    pub window_fraction: f64,
    /// Lowest field inside the window.
    pub window_start: f64,
    pub window_points: usize,
}

fn fit_window(points: &[ResonancePoint], fraction: f64) -> Option<(LinearFit, f64, usize)> {
    let lo = points.first()?.field;
    let hi = points.last()?.field;
    let cut = hi - fraction * (hi - lo);
    let window: Vec<&ResonancePoint> = points.iter().filter(|p| p.field >= cut - 1e-12 * hi.abs()).collect();
    if window.len() < 3 {
        return None;
    }
    let x: Vec<f64> = window.iter().map(|p| p.field).collect();
    let y: Vec<f64> = window.iter().map(|p| p.gamma).collect();
    linear_fit(&x, &y).map(|f| (f, x[0], x.len()))
}

/// Intercept of the linear fit to the upper part of a sweep.
///
/// The top 30% of the field range is tried first; if its `R²` is below 0.99,
/// every window in [`WINDOW_FRACTIONS`] is fitted and the best one kept.
pub fn critical_field(points: &[ResonancePoint]) -> Result<CriticalField, ResumError> {
    if points.len() < MIN_POINTS {
        return Err(ResumError::InsufficientData { needed: MIN_POINTS, got: points.len() });
    }
    if points.windows(2).any(|w| w[1].field <= w[0].field) {
        return Err(ResumError::InvalidGrid("fields must be strictly increasing"));
    }
    if points.iter().all(|p| p.gamma.abs() < 1e-15) {
        return Err(ResumError::NoIonization);
    }
    let mut best = fit_window(points, DEFAULT_FRACTION).map(|f| (DEFAULT_FRACTION, f));
    if best.is_none_or(|(_, (f, _, _))| f.r_squared < MIN_R_SQUARED) {
        for &fraction in &WINDOW_FRACTIONS {
            if let Some(candidate) = fit_window(points, fraction) {
                if best.is_none_or(|(_, (f, _, _))| candidate.0.r_squared > f.r_squared) {
                    best = Some((fraction, candidate));
                }
            }
        }
    }
    let (window_fraction, (fit, window_start, window_points)) =
        best.ok_or(ResumError::InsufficientData { needed: 3, got: 0 })?;
    if fit.r_squared < MIN_R_SQUARED {
        return Err(ResumError::NonlinearTail { r_squared: fit.r_squared });
    }
    if fit.slope <= 0.0 {
        return Err(ResumError::NonPositiveSlope(fit.slope));
    }
    Ok(CriticalField { field: -fit.intercept / fit.slope, fit, window_fraction, window_start, window_points })
}

/// Exponent `γ` of `slope ∝ p^γ` from `(p, slope)` pairs, by least squares
/// in log-log form.
pub fn slope_exponent(pairs: &[(f64, f64)]) -> Result<f64, ResumError> {
    if pairs.len() < 3 {
        return Err(ResumError::InsufficientData { needed: 3, got: pairs.len() });
    }
    if let Some(&(_, s)) = pairs.iter().find(|(_, s)| !(*s > 0.0)) {
        return Err(ResumError::NonPositiveSlope(s));
    }
    let mut ps: Vec<f64> = pairs.iter().map(|(p, _)| *p).collect();
    ps.sort_by(f64::total_cmp);
    if ps[0] <= 0.0 || ps.windows(2).any(|w| w[0] == w[1]) {
        return Err(ResumError::InsufficientData { needed: 3, got: ps.iter().filter(|p| **p > 0.0).count() });
    }
    let x: Vec<f64> = pairs.iter().map(|(p, _)| p.ln()).collect();
    let y: Vec<f64> = pairs.iter().map(|(_, s)| s.ln()).collect();
    Ok(linear_fit(&x, &y).expect("distinct abscissae").slope)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn points(f: impl Fn(f64) -> f64, top: f64, n: usize) -> Vec<ResonancePoint> {
        (0..n)
            .map(|i| {
                let e = top * i as f64 / (n - 1) as f64;
                let g = f(e);
                ResonancePoint { field: e, energy: Complex64::new(-0.5, -g / 2.0), delta: -0.5, gamma: g }
            })
            .collect()
    }

    #[test]
    fn linear_tail_intercept() {
        let pts = points(|e| (2.0 * (e - 0.25)).max(0.0), 1.0, 101);
        let c = critical_field(&pts).unwrap();
        assert!((c.field - 0.25).abs() < 1e-12);
        assert_eq!(c.window_fraction, 0.3);
        assert_eq!(c.window_points, 31);
    }

    #[test]
    fn window_widens_or_narrows() {
        // Smooth onset that is linear only near the top.
        let pts = points(|e| (e - 0.6).max(0.0).powi(2) + 1e-3 * e, 1.0, 101);
        match critical_field(&pts) {
            Ok(c) => assert!(WINDOW_FRACTIONS.contains(&c.window_fraction)),
            Err(ResumError::NonlinearTail { .. }) => {}
            Err(e) => panic!("{e}"),
        }
    }

    #[test]
    fn critical_field_errors() {
        assert!(matches!(critical_field(&points(|_| 0.0, 1.0, 20)), Err(ResumError::NoIonization)));
        assert!(matches!(critical_field(&points(|e| e, 1.0, 5)), Err(ResumError::InsufficientData { .. })));
        assert!(matches!(critical_field(&points(|e| 1.0 - e, 1.0, 30)), Err(ResumError::NonPositiveSlope(_))));
    }

    #[test]
    fn exponent_of_exact_power_law() {
        let pairs: Vec<(f64, f64)> = [1.0, 0.75, 0.5, 0.25].iter().map(|&p: &f64| (p, 3.0 * p.powf(1.4))).collect();
        assert!((slope_exponent(&pairs).unwrap() - 1.4).abs() < 1e-12);
        assert!(matches!(slope_exponent(&pairs[..1]), Err(ResumError::InsufficientData { .. })));
        assert!(matches!(
            slope_exponent(&[(1.0, 1.0), (1.0, 2.0), (0.5, 1.0)]),
            Err(ResumError::InsufficientData { .. })
        ));
        assert!(matches!(slope_exponent(&[(1.0, 1.0), (0.7, -2.0), (0.5, 1.0)]), Err(ResumError::NonPositiveSlope(_))));
    }
}
