//! Gauss hypergeometric function `₂F₁(a, b; c; x)` on the principal branch.
//!
//! Region selection, with `y = x/(x−1)`:
//!
//! - `|x| ≤ 3/4`: defining series;
//! - `|y| ≤ 3/4`: Pfaff transformation, then the series in `y`;
//! - `|1−x| ≤ 1/2`: connection around `x = 1`, with the logarithmic form when
//!   `c − a − b` is an integer;
//! - `|1−x|` large: Pfaff, then the connection around `y = 1`;
//! - otherwise: Taylor integration of the hypergeometric equation inward along
//!   the ray from `x = 1`, started where the previous case is well conditioned.
//!
//! Every route carries `L = ln(1−x)` explicitly, so the side of the cut
//! `[1, ∞)` is fixed once at entry.

use num_complex::Complex64;

use super::gamma::{complex_gamma, digamma, digamma_int, is_nonpositive_integer, recip_gamma};
use super::SpecfunError;

pub(crate) const MAX_TERMS: usize = 500;
const SERIES_TOL: f64 = 1e-16;
const R_SERIES: f64 = 0.75;
const R_NEAR_UNIT: f64 = 0.5;

/// Which limit to take for arguments on the cut `[1, ∞)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum CutSide {
    /// `x + i0`
    Above,
    /// `x − i0`
    Below,
}

/// Accumulates a series until two consecutive terms fall below the relative
/// tolerance.
struct Accumulator {
    sum: Complex64,
    quiet: u8,
}

impl Accumulator {
    fn new(first: Complex64) -> Self {
        Self { sum: first, quiet: 0 }
    }

    /// Adds `term`; returns true once converged.
    fn push(&mut self, term: Complex64) -> bool {
        self.sum += term;
        if term.norm() <= SERIES_TOL * self.sum.norm() {
            self.quiet += 1;
        } else {
            self.quiet = 0;
        }
        self.quiet >= 2
    }
}

/// `₂F₁(a, b; c; x)` for `x` off the cut `[1, ∞)`.
pub fn gauss_2f1(a: Complex64, b: Complex64, c: Complex64, x: Complex64) -> Result<Complex64, SpecfunError> {
    if on_cut(x) {
        return Err(SpecfunError::OnBranchCut(x.re));
    }
    evaluate(a, b, c, None, x, None)
}

/// `₂F₁(a, b; c; x)`, taking the limit from `side` when `x` lies on the cut.
pub fn gauss_2f1_side(
    a: Complex64,
    b: Complex64,
    c: Complex64,
    x: Complex64,
    side: CutSide,
) -> Result<Complex64, SpecfunError> {
    evaluate(a, b, c, None, x, Some(side))
}

/// `₂F₁(a, b; a+b+l; x)` with the defect `c − a − b = l` known exactly, so an
/// integer `l` selects the logarithmic connection without rounding.
pub(crate) fn gauss_2f1_shifted(
    a: Complex64,
    b: Complex64,
    l: f64,
    x: Complex64,
    side: CutSide,
) -> Result<Complex64, SpecfunError> {
    evaluate(a, b, a + b + l, Some(Complex64::new(l, 0.0)), x, Some(side))
}

fn on_cut(x: Complex64) -> bool {
    x.im == 0.0 && x.re > 1.0
}

/// `ln(1−x)`, resolved by `side` on the cut.
fn log_one_minus(x: Complex64, side: Option<CutSide>) -> Complex64 {
    let t = Complex64::new(1.0, 0.0) - x;
    if on_cut(x) {
        let arg = match side {
            Some(CutSide::Below) => std::f64::consts::PI,
            _ => -std::f64::consts::PI,
        };
        return Complex64::new((-t.re).ln(), arg);
    }
    t.ln()
}

/// Snaps a defect within rounding of an integer onto it.
fn snap_defect(s: Complex64, a: Complex64, b: Complex64, c: Complex64) -> Complex64 {
    let scale = 1.0 + a.norm() + b.norm() + c.norm();
    let nearest = s.re.round();
    if (s - nearest).norm() <= 1e-13 * scale {
        Complex64::new(nearest, 0.0)
    } else {
        s
    }
}

fn evaluate(
    a: Complex64,
    b: Complex64,
    c: Complex64,
    s: Option<Complex64>,
    x: Complex64,
    side: Option<CutSide>,
) -> Result<Complex64, SpecfunError> {
    if is_nonpositive_integer(c) {
        return Err(SpecfunError::ParameterPole(c));
    }
    // Fixed parameter order makes the result exactly symmetric in (a, b).
    let (a, b) = if (a.re, a.im) <= (b.re, b.im) { (a, b) } else { (b, a) };
    if x == Complex64::new(0.0, 0.0) {
        return Ok(Complex64::new(1.0, 0.0));
    }
    if is_nonpositive_integer(a) || is_nonpositive_integer(b) {
        return polynomial(a, b, c, x);
    }
    let s = snap_defect(s.unwrap_or(c - a - b), a, b, c);
    if x == Complex64::new(1.0, 0.0) {
        return gauss_sum(a, b, c, s);
    }
    dispatch(a, b, c, s, x, log_one_minus(x, side))
}

fn dispatch(
    a: Complex64,
    b: Complex64,
    c: Complex64,
    s: Complex64,
    x: Complex64,
    log_t: Complex64,
) -> Result<Complex64, SpecfunError> {
    let one = Complex64::new(1.0, 0.0);
    let t = one - x;
    let y = x / (x - one);
    let (rx, ry, rt) = (x.norm(), y.norm(), t.norm());
    if rx <= R_SERIES && rx <= ry {
        return series(a, b, c, x);
    }
    if ry <= R_SERIES {
        return Ok((-a * log_t).exp() * series(a, c - b, c, y)?);
    }
    if rt <= R_NEAR_UNIT {
        return near_unit(a, b, c, s, t, log_t);
    }
    let rf = far_radius(a, b, c);
    if rt >= rf {
        return far(a, b, c, x, log_t);
    }
    let dir = (x - one) / rt;
    let xf = one + dir * rf;
    let log_tf = log_t + (rf / rt).ln();
    let f = far(a, b, c, xf, log_tf)?;
    let df = a * b / c * far(a + 1.0, b + 1.0, c + 1.0, xf, log_tf)?;
    integrate_ode(a, b, c, xf, f, df, x)
}

/// Beyond this distance from `x = 1` the expansion in `1/(1−x)` has no
/// parameter-driven growth.
fn far_radius(a: Complex64, b: Complex64, c: Complex64) -> f64 {
    let scale = [a, b, c, c - a, c - b].iter().map(|v| v.norm()).fold(1.0, f64::max);
    2.0 * scale
}

/// Pfaff to `y = x/(x−1)`, then the connection around `y = 1`; there
/// `ln(1−y) = −ln(1−x)`.
fn far(a: Complex64, b: Complex64, c: Complex64, x: Complex64, log_t: Complex64) -> Result<Complex64, SpecfunError> {
    let one = Complex64::new(1.0, 0.0);
    let ty = one / (one - x);
    let cb = c - b;
    let inner = if is_nonpositive_integer(cb) {
        polynomial(a, cb, c, x / (x - one))?
    } else {
        near_unit(a, cb, c, b - a, ty, -log_t)?
    };
    Ok((-a * log_t).exp() * inner)
}

/// Defining series, convergent for `|x| < 1`.
pub(crate) fn series(a: Complex64, b: Complex64, c: Complex64, x: Complex64) -> Result<Complex64, SpecfunError> {
    let mut term = Complex64::new(1.0, 0.0);
    let mut acc = Accumulator::new(term);
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        term *= (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)) * x;
        if term == Complex64::new(0.0, 0.0) || acc.push(term) {
            return Ok(acc.sum);
        }
    }
    Err(SpecfunError::NonConvergent { terms: MAX_TERMS })
}

/// Terminating series when `a` or `b` is a non-positive integer.
fn polynomial(a: Complex64, b: Complex64, c: Complex64, x: Complex64) -> Result<Complex64, SpecfunError> {
    let n = [a, b].iter().filter(|v| is_nonpositive_integer(**v)).map(|v| (-v.re) as usize).min().unwrap_or(0);
    if n > 10 * MAX_TERMS {
        return Err(SpecfunError::NonConvergent { terms: n });
    }
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    for k in 0..n {
        let kf = k as f64;
        term *= (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)) * x;
        sum += term;
    }
    Ok(sum)
}

/// Gauss summation at `x = 1`.
fn gauss_sum(a: Complex64, b: Complex64, c: Complex64, s: Complex64) -> Result<Complex64, SpecfunError> {
    if s.re <= 0.0 {
        return Err(SpecfunError::DivergentAtUnit);
    }
    Ok(complex_gamma(c)? * complex_gamma(s)? * recip_gamma(c - a) * recip_gamma(c - b))
}

fn as_integer(z: Complex64) -> Option<i64> {
    (z.im == 0.0 && z.re.fract() == 0.0 && z.re.abs() < 1e9).then_some(z.re as i64)
}

/// Connection around `x = 1` with `t = 1 − x`, `log_t = ln t` and the defect
/// `s = c − a − b`.
fn near_unit(
    a: Complex64,
    b: Complex64,
    c: Complex64,
    s: Complex64,
    t: Complex64,
    log_t: Complex64,
) -> Result<Complex64, SpecfunError> {
    match as_integer(s) {
        Some(m) if m < 0 => {
            // Euler: F(a,b;c;x) = (1−x)^{c−a−b} F(c−a, c−b; c; x)
            let (ea, eb) = (c - a, c - b);
            let inner = if is_nonpositive_integer(ea) || is_nonpositive_integer(eb) {
                polynomial(ea, eb, c, Complex64::new(1.0, 0.0) - t)?
            } else {
                near_unit_log(ea, eb, c, (-m) as usize, t, log_t)?
            };
            Ok((s * log_t).exp() * inner)
        }
        Some(m) => near_unit_log(a, b, c, m as usize, t, log_t),
        None => {
            let one = Complex64::new(1.0, 0.0);
            let gc = complex_gamma(c)?;
            let first = gc * complex_gamma(s)? * recip_gamma(c - a) * recip_gamma(c - b) * series(a, b, one - s, t)?;
            let second = (s * log_t).exp()
                * gc
                * complex_gamma(-s)?
                * recip_gamma(a)
                * recip_gamma(b)
                * series(c - a, c - b, one + s, t)?;
            Ok(first + second)
        }
    }
}

/// Logarithmic connection for `c = a + b + m`, `m ≥ 0`:
///
/// ```text
/// F/Γ(c) = Σ_{k<m} (a)_k (b)_k (m−k−1)!/k! (−t)^k / (Γ(a+m) Γ(b+m))
///        − (−t)^m/(Γ(a)Γ(b)) Σ_k (a+m)_k (b+m)_k t^k/(k!(k+m)!)
///              · [ln t − ψ(k+1) − ψ(k+m+1) + ψ(a+k+m) + ψ(b+k+m)]
/// ```
fn near_unit_log(
    a: Complex64,
    b: Complex64,
    c: Complex64,
    m: usize,
    t: Complex64,
    log_t: Complex64,
) -> Result<Complex64, SpecfunError> {
    let (finite, tail) = log_connection_parts(a, b, m, t, log_t)?;
    let gc = complex_gamma(c)?;
    let mf = m as f64;
    Ok(gc * (recip_gamma(a + mf) * recip_gamma(b + mf) * finite - recip_gamma(a) * recip_gamma(b) * tail))
}

/// The two sums of the logarithmic connection, with `(−t)^m` folded into the
/// second.
pub(crate) fn log_connection_parts(
    a: Complex64,
    b: Complex64,
    m: usize,
    t: Complex64,
    log_t: Complex64,
) -> Result<(Complex64, Complex64), SpecfunError> {
    let mf = m as f64;
    let mut finite = Complex64::new(0.0, 0.0);
    if m > 0 {
        let mut term = Complex64::new((1..m).map(|k| k as f64).product::<f64>(), 0.0);
        finite = term;
        for k in 1..m {
            let kf = k as f64;
            term *= (a + kf - 1.0) * (b + kf - 1.0) / (kf * (mf - kf)) * (-t);
            finite += term;
        }
    }

    let mut psi_a = digamma(a + mf)?;
    let mut psi_b = digamma(b + mf)?;
    let mut psi_k = digamma_int(0);
    let mut psi_km = digamma_int(m);
    let mut u = Complex64::new(1.0 / (1..=m).map(|k| k as f64).product::<f64>(), 0.0);
    let bracket = |pa: Complex64, pb: Complex64, pk: f64, pkm: f64| log_t - pk - pkm + pa + pb;
    let mut acc = Accumulator::new(u * bracket(psi_a, psi_b, psi_k, psi_km));
    let mut done = false;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        u *= (a + mf + kf) * (b + mf + kf) / ((kf + 1.0) * (kf + mf + 1.0)) * t;
        psi_a += (a + mf + kf).inv();
        psi_b += (b + mf + kf).inv();
        psi_k += 1.0 / (kf + 1.0);
        psi_km += 1.0 / (kf + mf + 1.0);
        let term = u * bracket(psi_a, psi_b, psi_k, psi_km);
        if term == Complex64::new(0.0, 0.0) || acc.push(term) {
            done = true;
            break;
        }
    }
    if !done {
        return Err(SpecfunError::NonConvergent { terms: MAX_TERMS });
    }
    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
    Ok((finite, sign * t.powu(m as u32) * acc.sum))
}

/// Taylor integration of `x(1−x)F'' + [c − (a+b+1)x]F' − abF = 0` on the
/// segment from `x0` to `x1`, with steps half the distance to the nearer
/// singular point.
pub(crate) fn integrate_ode(
    a: Complex64,
    b: Complex64,
    c: Complex64,
    x0: Complex64,
    f0: Complex64,
    df0: Complex64,
    x1: Complex64,
) -> Result<Complex64, SpecfunError> {
    let one = Complex64::new(1.0, 0.0);
    let (mut x, mut f, mut df) = (x0, f0, df0);
    let b1 = -(a + b + one);
    let c0 = -a * b;
    for _ in 0..10_000 {
        let remaining = x1 - x;
        let dist = remaining.norm();
        if dist <= 1e-15 * x1.norm().max(1.0) {
            return Ok(f);
        }
        let step = (0.5 * x.norm().min((x - one).norm())).min(dist);
        let h = remaining / dist * step;

        let a0 = x * (one - x);
        let a1 = one - 2.0 * x;
        let b0 = c - (a + b + one) * x;
        let (mut y0, mut y1) = (f, df);
        let mut hp = h;
        let mut acc_f = Accumulator::new(f + df * h);
        let mut acc_d = Accumulator::new(df);
        let mut converged = false;
        for n in 0..MAX_TERMS {
            let nf = n as f64;
            let y2 = -((a1 * nf + b0) * (nf + 1.0) * y1 + (-nf * (nf - 1.0) + b1 * nf + c0) * y0)
                / (a0 * ((nf + 1.0) * (nf + 2.0)));
            let tf = y2 * hp * h;
            let td = y2 * hp * (nf + 2.0);
            hp *= h;
            let cf = acc_f.push(tf);
            let cd = acc_d.push(td);
            if cf && cd {
                converged = true;
                break;
            }
            y0 = y1;
            y1 = y2;
        }
        if !converged {
            return Err(SpecfunError::NonConvergent { terms: MAX_TERMS });
        }
        x += h;
        f = acc_f.sum;
        df = acc_d.sum;
    }
    Err(SpecfunError::NonConvergent { terms: 10_000 })
}
