//! Adaptive Gauss–Kronrod quadrature (7-point Gauss, 15-point Kronrod).

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use thiserror::Error;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] =
    [0.129_484_966_168_869_7, 0.279_705_391_489_276_7, 0.381_830_050_505_118_9, 0.417_959_183_673_469_4];

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QuadError {
    #[error("integrand is not finite at x = {0}")]
    NonFinite(f64),
    #[error("tolerance not met after {intervals} intervals (error estimate {error:e})")]
    Tolerance { intervals: usize, error: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct QuadResult {
    pub value: f64,
    pub error: f64,
    pub evaluations: usize,
    pub intervals: usize,
}

#[derive(Clone, Copy, Debug)]
pub struct QuadConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_intervals: usize,
}

impl Default for QuadConfig {
    fn default() -> Self {
        Self { abs_tol: 1e-12, rel_tol: 1e-12, max_intervals: 2000 }
    }
}

struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Segment {}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Segment {
    // Largest error first; ties broken by position for a deterministic order.
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error).then_with(|| other.a.total_cmp(&self.a))
    }
}

fn kronrod<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> Result<Segment, QuadError> {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let eval = |f: &mut F, x: f64| {
        let v = f(x);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(QuadError::NonFinite(x))
        }
    };
    let fc = eval(f, mid)?;
    let mut k = WGK[7] * fc;
    let mut g = WG[3] * fc;
    for j in 0..7 {
        let dx = half * XGK[j];
        let s = eval(f, mid - dx)? + eval(f, mid + dx)?;
        k += WGK[j] * s;
        if j % 2 == 1 {
            g += WG[j / 2] * s;
        }
    }
    Ok(Segment { a, b, value: k * half, error: ((k - g) * half).abs() })
}

/// Integrate `f` over `[a, b]` by repeated bisection of the interval with the
/// largest error estimate.
pub fn integrate<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, config: QuadConfig) -> Result<QuadResult, QuadError> {
    if a == b {
        return Ok(QuadResult { value: 0.0, error: 0.0, evaluations: 0, intervals: 0 });
    }
    let mut heap = BinaryHeap::new();
    let first = kronrod(&mut f, a, b)?;
    let (mut value, mut error) = (first.value, first.error);
    heap.push(first);
    let mut intervals = 1;
    loop {
        if error <= config.abs_tol.max(config.rel_tol * value.abs()) {
            break;
        }
        if intervals >= config.max_intervals {
            return Err(QuadError::Tolerance { intervals, error });
        }
        let worst = heap.pop().expect("heap holds every interval");
        let mid = 0.5 * (worst.a + worst.b);
        let left = kronrod(&mut f, worst.a, mid)?;
        let right = kronrod(&mut f, mid, worst.b)?;
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        intervals += 1;
    }
    // Resum from the pieces to drop the drift of the running updates.
    let mut pieces = heap.into_vec();
    pieces.sort_by(|x, y| x.a.total_cmp(&y.a));
    let value = pieces.iter().map(|s| s.value).sum();
    let error = pieces.iter().map(|s| s.error).sum();
    Ok(QuadResult { value, error, evaluations: 15 * (2 * intervals - 1), intervals })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_is_exact() {
        let r = integrate(|x| x.powi(5) - 3.0 * x * x, -1.0, 2.0, QuadConfig::default()).unwrap();
        assert!((r.value - (63.0 / 6.0 - 9.0)).abs() < 1e-14);
        assert_eq!(r.intervals, 1);
    }

    #[test]
    fn smooth_and_peaked() {
        let r = integrate(f64::exp, 0.0, 1.0, QuadConfig::default()).unwrap();
        assert!((r.value - (1f64.exp() - 1.0)).abs() < 1e-14);
        let r = integrate(|x| 1.0 / (1e-4 + x * x), -1.0, 1.0, QuadConfig::default()).unwrap();
        let exact = 2.0 * 100.0 * (100f64).atan();
        assert!((r.value - exact).abs() < 1e-10 * exact);
    }

    #[test]
    fn sqrt_endpoint() {
        let r = integrate(f64::sqrt, 0.0, 1.0, QuadConfig::default()).unwrap();
        assert!((r.value - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn failures_are_reported() {
        let r = integrate(|x| 1.0 / x, 0.0, 1.0, QuadConfig::default());
        assert!(matches!(r, Err(QuadError::Tolerance { .. }) | Err(QuadError::NonFinite(_))));
        let cfg = QuadConfig { max_intervals: 3, ..QuadConfig::default() };
        assert!(integrate(|x| (50.0 * x).sin(), 0.0, 10.0, cfg).is_err());
    }
}
