//! Dense univariate polynomials with exact rational coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A polynomial `c[0] + c[1] v + c[2] v^2 + ...` over the rationals.
///
/// Trailing zero coefficients are always stripped, so the zero polynomial has
/// an empty coefficient vector and `degree()` returns `None`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct RationalPolynomial {
    coefficients: Vec<BigRational>,
}

impl RationalPolynomial {
    pub fn new(mut coefficients: Vec<BigRational>) -> Self {
        while coefficients.last().is_some_and(Zero::is_zero) {
            coefficients.pop();
        }
        Self { coefficients }
    }

    pub fn from_integers(coefficients: &[i64]) -> Self {
        Self::new(coefficients.iter().map(|&c| int(c)).collect())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `v`.
    pub fn variable() -> Self {
        Self::new(vec![BigRational::zero(), BigRational::one()])
    }

    pub fn monomial(c: BigRational, power: usize) -> Self {
        let mut coefficients = vec![BigRational::zero(); power];
        coefficients.push(c);
        Self::new(coefficients)
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coefficients
    }

    pub fn coefficient(&self, power: usize) -> BigRational {
        self.coefficients.get(power).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coefficients.last()
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        Self::new(self.coefficients.iter().map(|c| c * factor).collect())
    }

    /// Horner evaluation at a rational point.
    pub fn evaluate(&self, at: &BigRational) -> BigRational {
        self.coefficients.iter().rev().fold(BigRational::zero(), |acc, c| acc * at + c)
    }

    pub fn evaluate_f64(&self, at: f64) -> f64 {
        self.coefficients.iter().rev().fold(0.0, |acc, c| acc * at + rational_to_f64(c))
    }

    /// `self(inner(v))`.
    pub fn compose(&self, inner: &Self) -> Self {
        self.coefficients.iter().rev().fold(Self::zero(), |acc, c| &(&acc * inner) + &Self::constant(c.clone()))
    }

    /// Multiply by `v^power`.
    pub fn shift_up(&self, power: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coefficients = vec![BigRational::zero(); power];
        coefficients.extend(self.coefficients.iter().cloned());
        Self::new(coefficients)
    }

    /// Divide by `v^power`, returning `None` unless the division is exact.
    pub fn shift_down(&self, power: usize) -> Option<Self> {
        if self.coefficients.iter().take(power).any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::new(self.coefficients.iter().skip(power).cloned().collect()))
    }

    /// Euclidean division, returning `(quotient, remainder)`.
    ///
    /// Panics if `divisor` is the zero polynomial.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let d_deg = divisor.degree().expect("division by the zero polynomial");
        let d_lead = divisor.leading().unwrap().clone();
        let mut rem = self.coefficients.clone();
        let Some(n_deg) = self.degree() else {
            return (Self::zero(), Self::zero());
        };
        if n_deg < d_deg {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); n_deg - d_deg + 1];
        for shift in (0..=n_deg - d_deg).rev() {
            let c = &rem[shift + d_deg] / &d_lead;
            if c.is_zero() {
                continue;
            }
            for (i, dc) in divisor.coefficients.iter().enumerate() {
                rem[shift + i] -= &c * dc;
            }
            quot[shift] = c;
        }
        (Self::new(quot), Self::new(rem))
    }

    /// Exact division; `None` when the remainder is nonzero.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coefficients.iter().all(|c| c.is_integer())
    }

    /// Render with the given variable name, highest power first.
    pub fn display_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (power, c) in self.coefficients.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let unit = mag.is_one();
            match power {
                0 => out.push_str(&mag.to_string()),
                _ => {
                    if !unit {
                        out.push_str(&mag.to_string());
                        out.push('*');
                    }
                    out.push_str(var);
                    if power > 1 {
                        out.push('^');
                        out.push_str(&power.to_string());
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for RationalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("x"))
    }
}

impl Zero for RationalPolynomial {
    fn zero() -> Self {
        Self { coefficients: Vec::new() }
    }

    fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }
}

impl One for RationalPolynomial {
    fn one() -> Self {
        Self::constant(BigRational::one())
    }
}

impl Add for &RationalPolynomial {
    type Output = RationalPolynomial;

    fn add(self, rhs: Self) -> RationalPolynomial {
        let n = self.coefficients.len().max(rhs.coefficients.len());
        RationalPolynomial::new((0..n).map(|i| self.coefficient(i) + rhs.coefficient(i)).collect())
    }
}

impl Sub for &RationalPolynomial {
    type Output = RationalPolynomial;

    fn sub(self, rhs: Self) -> RationalPolynomial {
        let n = self.coefficients.len().max(rhs.coefficients.len());
        RationalPolynomial::new((0..n).map(|i| self.coefficient(i) - rhs.coefficient(i)).collect())
    }
}

impl Mul for &RationalPolynomial {
    type Output = RationalPolynomial;

    fn mul(self, rhs: Self) -> RationalPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return RationalPolynomial::zero();
        }
        let mut out = vec![BigRational::zero(); self.coefficients.len() + rhs.coefficients.len() - 1];
        for (i, a) in self.coefficients.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coefficients.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RationalPolynomial::new(out)
    }
}

impl Neg for &RationalPolynomial {
    type Output = RationalPolynomial;

    fn neg(self) -> RationalPolynomial {
        RationalPolynomial::new(self.coefficients.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for RationalPolynomial {
            type Output = RationalPolynomial;

            fn $method(self, rhs: Self) -> RationalPolynomial {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for RationalPolynomial {
    type Output = RationalPolynomial;

    fn neg(self) -> RationalPolynomial {
        -&self
    }
}

pub(crate) fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

pub(crate) fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Nearest double to a rational; robust for numerators and denominators
/// beyond the `f64` range.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let numer = r.numer();
    let denom = r.denom();
    let nb = numer.bits() as i64;
    let db = denom.bits() as i64;
    if nb < 1000 && db < 1000 {
        let n = bigint_to_f64(numer);
        let d = bigint_to_f64(denom);
        if n.is_finite() && d.is_finite() {
            return n / d;
        }
    }
    // Scale to keep 64 significant bits in the quotient.
    let shift = 64 - (nb - db);
    let (n, d) =
        if shift >= 0 { (numer << shift as usize, denom.clone()) } else { (numer.clone(), denom << (-shift) as usize) };
    let q = bigint_to_f64(&(n / d));
    q * 2f64.powi(-shift as i32)
}

fn bigint_to_f64(v: &BigInt) -> f64 {
    use num_traits::ToPrimitive;
    v.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn trailing_zeros_are_normalized() {
        let p = RationalPolynomial::from_integers(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert!(RationalPolynomial::from_integers(&[0, 0]).is_zero());
    }

    #[test]
    fn arithmetic_and_evaluation() {
        let p = RationalPolynomial::from_integers(&[3, 2]); // 2v + 3
        let q = RationalPolynomial::from_integers(&[-1, 1]); // v - 1
        let prod = &p * &q;
        assert_eq!(prod, RationalPolynomial::from_integers(&[-3, 1, 2]));
        assert_eq!(prod.evaluate(&int(3)), int(9 * 2));
        assert_eq!(&prod - &prod, RationalPolynomial::zero());
    }

    #[test]
    fn composition_substitutes_affine_argument() {
        // p(v) = v^2, inner = (a - 1)/2
        let p = RationalPolynomial::from_integers(&[0, 0, 1]);
        let inner = RationalPolynomial::new(vec![r(-1, 2), r(1, 2)]);
        let c = p.compose(&inner);
        assert_eq!(c.coefficients(), &[r(1, 4), r(-1, 2), r(1, 4)]);
    }

    #[test]
    fn division_round_trips() {
        let a = RationalPolynomial::from_integers(&[5, 0, 3, 1]);
        let b = RationalPolynomial::new(vec![r(1, 3), int(2)]);
        let (q, rem) = a.div_rem(&b);
        assert_eq!(&(&q * &b) + &rem, a);
        assert!(rem.degree().unwrap_or(0) < 1);
        assert!(a.div_exact(&b).is_none());
        assert_eq!((&a * &b).div_exact(&b), Some(a));
    }

    #[test]
    fn shifts() {
        let a = RationalPolynomial::from_integers(&[0, 0, 4, 1]);
        assert_eq!(a.shift_down(2), Some(RationalPolynomial::from_integers(&[4, 1])));
        assert_eq!(a.shift_down(3), None);
        assert_eq!(a.shift_down(2).unwrap().shift_up(2), a);
    }

    #[test]
    fn display() {
        let p = RationalPolynomial::from_integers(&[3, -1, 0, 2]);
        assert_eq!(p.display_with("a"), "2*a^3 - a + 3");
    }

    #[test]
    fn huge_rationals_convert() {
        let big = BigRational::new(BigInt::from(3) << 2000usize, BigInt::from(7) << 1990usize);
        let v = rational_to_f64(&big);
        assert!((v - 3.0 * 1024.0 / 7.0).abs() < 1e-12);
    }
}
