//! Logarithmic perturbation theory for the separated parabolic equation.
//!
//! With `f = exp(∫z)` the ξ-equation becomes the Riccati form
//!
//! ```text
//! x (z' + z²) + p z + β₁ − F x² − x/(4p²) = 0 .
//! ```
//!
//! Collecting powers of `F` gives, for `k ≥ 1`,
//!
//! ```text
//! x z_k' + (p + 2 z₀ x) z_k = −a_k + δ_{k1} x² − x Σ_{i=1}^{k−1} z_i z_{k−i}
//! ```
//!
//! whose only solution regular at both ends is a polynomial of degree `k`.
//! Since `2 z₀ = −1/p`, dividing by `2 z₀` is multiplication by `−p`, so every
//! `z_k` and `a_k` is a polynomial in `p` with integer coefficients.

use super::ring::Coeff;
use super::CoeffError;

/// `z_k(x)` for one order `k ≥ 1`, as coefficients of powers of `x`.
#[derive(Clone, Debug, PartialEq)]
pub struct LogDerivSeries<T> {
    pub order: usize,
    pub poly: Vec<T>,
}

/// Parity of the separated equation: `+1` for ξ (field term `−F x²`), `−1`
/// for η (field term `+F y²`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// Separation-constant series `β₁ = Σ a_n Fⁿ` (or `β₂ = Σ b_n Fⁿ`).
#[derive(Clone, Debug, PartialEq)]
pub struct SeparationSeries<T> {
    pub sign: Sign,
    pub coefficients: Vec<T>,
}

/// `μ_m = ∫x^{p−1+m} e^{−x/p} dx / ∫x^{p−1} e^{−x/p} dx = p^m (p)_m`.
pub fn moment_ratio<T: Coeff>(p: &T, m: usize) -> T {
    let mut acc = T::one();
    for i in 0..m {
        acc = acc.mul(p).mul(&p.add(&T::from_int(i as i64)));
    }
    acc
}

/// `S_k(x) = Σ_{i=1}^{k−1} z_i(x) z_{k−i}(x)`.
fn quadratic_source<T: Coeff>(k: usize, previous: &[LogDerivSeries<T>]) -> Vec<T> {
    let mut out = vec![T::zero(); k + 1];
    for i in 1..k {
        let zi = &previous[i - 1].poly;
        let zj = &previous[k - i - 1].poly;
        for (a, ca) in zi.iter().enumerate() {
            for (b, cb) in zj.iter().enumerate() {
                if a + b >= out.len() {
                    out.resize(a + b + 1, T::zero());
                }
                out[a + b] = out[a + b].add(&ca.mul(cb));
            }
        }
    }
    out
}

fn check_previous<T>(k: usize, previous: &[LogDerivSeries<T>]) -> Result<(), CoeffError> {
    if k == 0 {
        return Err(CoeffError::OrderMismatch { order: 0, available: previous.len() });
    }
    let complete = previous.len() >= k - 1 && previous.iter().take(k - 1).enumerate().all(|(i, z)| z.order == i + 1);
    if !complete {
        return Err(CoeffError::OrderMismatch { order: k, available: previous.len() });
    }
    Ok(())
}

/// Solve order `k ≥ 1`, given `z_1..z_{k−1}` in `previous`.
///
/// Returns `z_k` and `a_k` from regularity at the origin, after checking that
/// the moment formula gives the identical `a_k`.
pub fn logderiv_step<T: Coeff>(
    k: usize,
    previous: &[LogDerivSeries<T>],
    p: &T,
) -> Result<(LogDerivSeries<T>, T), CoeffError> {
    solve_order(k, previous, p, Sign::Plus)
}

fn solve_order<T: Coeff>(
    k: usize,
    previous: &[LogDerivSeries<T>],
    p: &T,
    sign: Sign,
) -> Result<(LogDerivSeries<T>, T), CoeffError> {
    check_previous(k, previous)?;
    let source = quadratic_source(k, previous);

    // Known part of the right-hand side: δ_{k1} x² − x S_k(x).
    let mut rhs = vec![T::zero(); k + 2];
    for (j, s) in source.iter().enumerate() {
        if s.is_zero() {
            continue;
        }
        if j + 1 >= rhs.len() {
            return Err(CoeffError::InconsistentAnsatz { order: k });
        }
        rhs[j + 1] = rhs[j + 1].sub(s);
    }
    if k == 1 {
        rhs[2] = rhs[2].add(&T::from_int(sign.as_i64()));
    }

    // Match powers from x^{k+1} down to x^1; 1/(2 z₀) = −p.
    let minus_p = p.neg();
    let mut c = vec![T::zero(); k + 1];
    c[k] = minus_p.mul(&rhs[k + 1]);
    for j in (1..=k).rev() {
        let jp = p.add(&T::from_int(j as i64));
        c[j - 1] = minus_p.mul(&rhs[j].sub(&jp.mul(&c[j])));
    }
    if c[k].is_zero() {
        return Err(CoeffError::InconsistentAnsatz { order: k });
    }
    let a_k = minus_p.mul(&c[0]);

    let via_moments = moments_route(k, previous, p, sign)?;
    if !via_moments.agrees_with(&a_k) {
        return Err(CoeffError::RouteMismatch { order: k });
    }
    Ok((LogDerivSeries { order: k, poly: c }, a_k))
}

/// `a_k` from the normalization integral (the solvability condition of the
/// order-`k` equation), using `μ_m` for every Laguerre-type moment.
pub fn a_from_moments<T: Coeff>(k: usize, previous: &[LogDerivSeries<T>], p: &T) -> Result<T, CoeffError> {
    moments_route(k, previous, p, Sign::Plus)
}

fn moments_route<T: Coeff>(k: usize, previous: &[LogDerivSeries<T>], p: &T, sign: Sign) -> Result<T, CoeffError> {
    check_previous(k, previous)?;
    let mut a = if k == 1 { moment_ratio(p, 2).scale_int(sign.as_i64()) } else { T::zero() };
    for (j, s) in quadratic_source(k, previous).iter().enumerate() {
        if !s.is_zero() {
            a = a.sub(&s.mul(&moment_ratio(p, j + 1)));
        }
    }
    Ok(a)
}

/// All `z_1..z_order` together with `a_0..a_order`.
pub fn logderiv_ladder<T: Coeff>(p: &T, order: usize) -> Result<(Vec<LogDerivSeries<T>>, Vec<T>), CoeffError> {
    signed_ladder(p, order, Sign::Plus)
}

fn signed_ladder<T: Coeff>(p: &T, order: usize, sign: Sign) -> Result<(Vec<LogDerivSeries<T>>, Vec<T>), CoeffError> {
    let mut zs = Vec::with_capacity(order);
    let mut a = Vec::with_capacity(order + 1);
    a.push(T::from_ratio(1, 2));
    for k in 1..=order {
        let (z, ak) = solve_order(k, &zs, p, sign)?;
        zs.push(z);
        a.push(ak);
    }
    Ok((zs, a))
}

/// `a_0..a_order` for the ξ-equation ([`Sign::Plus`]) or `b_0..b_order` for
/// the η-equation ([`Sign::Minus`]), each solved with its own field sign.
pub fn separation_series<T: Coeff>(p: &T, order: usize, sign: Sign) -> Result<SeparationSeries<T>, CoeffError> {
    let (_, coefficients) = signed_ladder(p, order, sign)?;
    Ok(SeparationSeries { sign, coefficients })
}

/// Checks `b_n = (−1)ⁿ a_n` term by term.
pub fn is_sign_symmetric<T: Coeff>(xi: &SeparationSeries<T>, eta: &SeparationSeries<T>) -> bool {
    xi.coefficients.len() == eta.coefficients.len()
        && xi.coefficients.iter().zip(&eta.coefficients).enumerate().all(|(n, (a, b))| {
            if n % 2 == 1 {
                *b == a.neg()
            } else {
                b == a
            }
        })
}
