//! Expansion of the shifted hypergeometric function around unit argument.
//!
//! For `c = h₁ + h₂ + l` and `x = 1 + z`,
//!
//! ```text
//! Γ(l+h₁) Γ(l+h₂) 𝐅(h₁, h₂; c; 1+z) = F₀(z) + F_l(z)
//! F₀(z) = Σ_k (h₁)_k (h₂)_k Γ(l−k) z^k / k!
//! ```
//!
//! where `𝐅 = ₂F₁/Γ(c)` and `F_l` starts at `z^l`. For integer `l` the sum
//! in `F₀` stops at `k = l−1` and `F_l` carries the logarithmic terms.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::gamma::{complex_gamma, ln_gamma, recip_gamma};
use super::hyp::{gauss_2f1, gauss_2f1_shifted, gauss_2f1_side, log_connection_parts, CutSide};
use super::SpecfunError;

const PFAFF_KERNEL_W: f64 = 1.0;
const INVERSE_KERNEL_W: f64 = 1e3;

fn integer_l(l: f64) -> Option<usize> {
    (l.fract() == 0.0 && l > 0.0 && l < 1e6).then_some(l as usize)
}

fn check_l(l: f64) -> Result<(), SpecfunError> {
    if l.is_finite() && l > 0.0 {
        Ok(())
    } else {
        Err(SpecfunError::InvalidL(l))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct NearUnitExpansion {
    pub h1: Complex64,
    pub h2: Complex64,
    pub l: f64,
    /// `(h₁)_k (h₂)_k Γ(l−k) / k!` for `k = 0..=truncation_order`.
    pub f0_coeffs: Vec<Complex64>,
    pub fl_leading_power: f64,
    pub truncation_order: usize,
}

impl NearUnitExpansion {
    pub fn new(h1: Complex64, h2: Complex64, l: f64, order: usize) -> Result<Self, SpecfunError> {
        check_l(l)?;
        if integer_l(l).is_some_and(|m| order >= m) {
            return Err(SpecfunError::TruncationBeyondPole { order, l });
        }
        let mut coeff = complex_gamma(Complex64::new(l, 0.0))?;
        let mut f0_coeffs = vec![coeff];
        for k in 1..=order {
            let kf = k as f64;
            coeff *= (h1 + kf - 1.0) * (h2 + kf - 1.0) / (kf * (l - kf));
            f0_coeffs.push(coeff);
        }
        Ok(Self { h1, h2, l, f0_coeffs, fl_leading_power: l, truncation_order: order })
    }

    pub fn f0(&self, z: Complex64) -> Complex64 {
        self.f0_coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c)
    }

    /// The non-analytic remainder `F_l(z)`, on `side` when `z > 0`.
    pub fn fl(&self, z: Complex64, side: CutSide) -> Result<Complex64, SpecfunError> {
        fl_part(self.h1, self.h2, self.l, z, side)
    }
}

/// `F_l(z)`: for non-integer `l`,
/// `(−z)^l Γ(−l) (h₁)_l (h₂)_l ₂F₁(h₁+l, h₂+l; 1+l; −z)`; for integer `l`
/// the logarithmic tail of the degenerate connection.
fn fl_part(h1: Complex64, h2: Complex64, l: f64, z: Complex64, side: CutSide) -> Result<Complex64, SpecfunError> {
    let log_mz = log_minus(z, side);
    if let Some(m) = integer_l(l) {
        let (_, tail) = log_connection_parts(h1, h2, m, -z, log_mz)?;
        let poch = complex_gamma(h1 + l)? * complex_gamma(h2 + l)? * recip_gamma(h1) * recip_gamma(h2);
        return Ok(-poch * tail);
    }
    let lc = Complex64::new(l, 0.0);
    let poch =
        (ln_gamma(h1 + l)? + ln_gamma(h2 + l)? - ln_gamma(h1)? - ln_gamma(h2)? + ln_gamma(-lc)? + lc * log_mz).exp();
    let flipped = match side {
        CutSide::Above => CutSide::Below,
        CutSide::Below => CutSide::Above,
    };
    Ok(poch * gauss_2f1_side(h1 + l, h2 + l, lc + 1.0, -z, flipped)?)
}

/// `ln(−z)`, i.e. `ln(1−x)` for `x = 1 + z`, with the side fixed for `z > 0`.
fn log_minus(z: Complex64, side: CutSide) -> Complex64 {
    if z.im == 0.0 && z.re > 0.0 {
        let arg = match side {
            CutSide::Above => -PI,
            CutSide::Below => PI,
        };
        return Complex64::new(z.re.ln(), arg);
    }
    (-z).ln()
}

/// Partial sum of `F₀(z)` through `z^order`.
pub fn near_unit_f0(
    h1: Complex64,
    h2: Complex64,
    l: f64,
    z: Complex64,
    order: usize,
) -> Result<Complex64, SpecfunError> {
    Ok(NearUnitExpansion::new(h1, h2, l, order)?.f0(z))
}

/// `G(w) = Γ(l+h₁) Γ(l+h₂) 𝐅(h₁, h₂; h₁+h₂+l; 1+w)` on `side` of the cut.
///
/// When `h₁, h₂` are both real or a conjugate pair and `w` is real, the
/// imaginary part is taken from the discontinuity across the cut,
///
/// ```text
/// Im G = ±π (h₁)_l (h₂)_l w^l / Γ(l+1) · ₂F₁(h₁+l, h₂+l; l+1; −w),
/// ```
///
/// which stays accurate where it is many orders below the real part.
pub fn shifted_kernel(
    h1: Complex64,
    h2: Complex64,
    l: f64,
    w: Complex64,
    side: CutSide,
) -> Result<Complex64, SpecfunError> {
    check_l(l)?;
    let lc = Complex64::new(l, 0.0);
    if w == Complex64::new(0.0, 0.0) {
        return complex_gamma(lc);
    }
    let c = h1 + h2 + l;
    let x = w + 1.0;
    let prefactor = (ln_gamma(h1 + l)? + ln_gamma(h2 + l)?).exp() * recip_gamma(c);
    let real_pair = (h1.im == 0.0 && h2.im == 0.0) || h1 == h2.conj();
    if !(real_pair && w.im == 0.0) {
        return Ok(prefactor * gauss_2f1_shifted(h1, h2, l, x, side)?);
    }
    let re = (prefactor * gauss_2f1_shifted(h1, h2, l, x, CutSide::Above)?).re;
    if w.re < 0.0 {
        return Ok(Complex64::new(re, 0.0));
    }
    let log_coeff =
        ln_gamma(h1 + l)? + ln_gamma(h2 + l)? - ln_gamma(h1)? - ln_gamma(h2)? - ln_gamma(lc + 1.0)? + l * w.re.ln();
    let disc = if w.re <= PFAFF_KERNEL_W {
        log_coeff.exp() * gauss_2f1_side(h1 + l, h2 + l, lc + 1.0, -w, CutSide::Above)?
    } else if w.re > INVERSE_KERNEL_W && h1 != h2 {
        // Connection to 1/w: each term is w^{−h} Γ(h'−h) / (Γ(h)Γ(h')Γ(1−h))
        // × Γ(h+l) ₂F₁(h+l, h; 1+h−h'; −1/w).
        let ln_w = w.re.ln();
        let term = |h: Complex64, hp: Complex64| -> Result<Complex64, SpecfunError> {
            let log_scale = ln_gamma(h + l)? - ln_gamma(h)? - ln_gamma(hp)? - ln_gamma(1.0 - h)? - h * ln_w;
            let f = gauss_2f1(h + l, h, 1.0 + h - hp, Complex64::new(-1.0 / w.re, 0.0))?;
            Ok(log_scale.exp() * complex_gamma(hp - h)? * f)
        };
        term(h1, h2)? + term(h2, h1)?
    } else {
        // Pfaff: F(a, b; c; −w) = (1+w)^{−a} F(a, c−b; c; w/(1+w)), with the
        // power kept in the exponent so that large w neither over- nor underflows.
        let a = h1 + l;
        let log_pfaff = log_coeff - a * w.re.ln_1p();
        log_pfaff.exp() * gauss_2f1(a, 1.0 - h2, lc + 1.0, w / (w + 1.0))?
    };
    let sign = match side {
        CutSide::Above => 1.0,
        CutSide::Below => -1.0,
    };
    Ok(Complex64::new(re, sign * PI * disc.re))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::gauss_2f1;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn leading_terms() {
        let h = c(1.0, 0.0);
        let g30 = complex_gamma(c(30.0, 0.0)).unwrap();
        let g29 = complex_gamma(c(29.0, 0.0)).unwrap();
        assert_eq!(near_unit_f0(h, h, 30.0, c(0.0, 0.0), 5).unwrap(), g30);
        let v = near_unit_f0(h, h, 30.0, c(0.1, 0.0), 1).unwrap();
        assert!(rel(v, g30 + g29 * 0.1) < 1e-15);
        let e = NearUnitExpansion::new(c(0.3, 0.2), c(0.7, -0.1), 12.5, 3).unwrap();
        assert!(rel(e.f0_coeffs[1], c(0.3, 0.2) * c(0.7, -0.1) * complex_gamma(c(11.5, 0.0)).unwrap()) < 1e-14);
    }

    #[test]
    fn truncation_guard() {
        let h = c(0.5, 0.1);
        assert!(matches!(
            near_unit_f0(h, h, 30.0, c(0.1, 0.0), 30),
            Err(SpecfunError::TruncationBeyondPole { order: 30, .. })
        ));
        assert!(near_unit_f0(h, h, 30.0, c(0.1, 0.0), 29).is_ok());
        assert!(near_unit_f0(h, h, 30.5, c(0.1, 0.0), 40).is_ok());
        assert!(matches!(near_unit_f0(h, h, -1.0, c(0.1, 0.0), 2), Err(SpecfunError::InvalidL(_))));
    }

    #[test]
    fn expansion_reassembles_hypergeometric() {
        let (h1, h2) = (c(0.58, 0.18), c(0.58, -0.18));
        for l in [7.5, 12.3, 30.5] {
            let e = NearUnitExpansion::new(h1, h2, l, 120).unwrap();
            let norm =
                complex_gamma(h1 + h2 + l).unwrap() / (complex_gamma(h1 + l).unwrap() * complex_gamma(h2 + l).unwrap());
            for z in [c(0.2, 0.05), c(-0.25, 0.0), c(0.1, -0.2), c(0.28, 0.0)] {
                let lhs = norm * (e.f0(z) + e.fl(z, CutSide::Above).unwrap());
                let rhs = crate::specfun::gauss_2f1_side(h1, h2, h1 + h2 + l, z + 1.0, CutSide::Above).unwrap();
                assert!(rel(lhs, rhs) < 1e-9, "l = {l}, z = {z}: {lhs} vs {rhs}");
            }
        }
    }

    #[test]
    fn integer_l_split_matches_kernel() {
        let (h1, h2) = (c(0.58, 0.18), c(0.58, -0.18));
        let e = NearUnitExpansion::new(h1, h2, 30.0, 29).unwrap();
        for w in [0.05, 0.3, 0.45] {
            let z = c(w, 0.0);
            let split = e.f0(z) + e.fl(z, CutSide::Above).unwrap();
            let g = shifted_kernel(h1, h2, 30.0, z, CutSide::Above).unwrap();
            assert!((split - g).norm() < 1e-13 * g.norm(), "{split} {g}");
        }
    }

    #[test]
    fn kernel_at_origin_and_sides() {
        let (h1, h2) = (c(0.4, 0.3), c(0.4, -0.3));
        let g0 = shifted_kernel(h1, h2, 30.0, c(0.0, 0.0), CutSide::Above).unwrap();
        assert_eq!(g0, complex_gamma(c(30.0, 0.0)).unwrap());
        let up = shifted_kernel(h1, h2, 30.0, c(2.0, 0.0), CutSide::Above).unwrap();
        let down = shifted_kernel(h1, h2, 30.0, c(2.0, 0.0), CutSide::Below).unwrap();
        assert_eq!(up, down.conj());
        assert!(up.im > 0.0);
    }

    #[test]
    fn kernel_general_path_agrees() {
        // a generic (non-conjugate) pair goes through the plain evaluator
        let (h1, h2) = (c(0.4, 0.3), c(0.4, -0.3 + 1e-12));
        let w = c(0.8, 0.0);
        let general = shifted_kernel(h1, h2, 30.0, w, CutSide::Above).unwrap();
        let paired = shifted_kernel(h1, h1.conj(), 30.0, w, CutSide::Above).unwrap();
        assert!(rel(general, paired) < 1e-9);
        let off_axis = shifted_kernel(h1, h1.conj(), 30.0, c(0.8, 1e-3), CutSide::Above).unwrap();
        let direct = gauss_2f1(h1, h1.conj(), h1 + h1.conj() + 30.0, c(1.8, 1e-3)).unwrap()
            * complex_gamma(h1 + 30.0).unwrap()
            * complex_gamma(h1.conj() + 30.0).unwrap()
            / complex_gamma(h1 + h1.conj() + 30.0).unwrap();
        assert!(rel(off_axis, direct) < 1e-12);
    }
}
