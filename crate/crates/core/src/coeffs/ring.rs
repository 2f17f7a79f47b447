use std::fmt::Debug;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::{int, ratio, rational_to_f64, RationalPolynomial};

/// Coefficient ring for the perturbation recursion.
///
/// The recursion only ever adds, subtracts and multiplies, so the same code
/// runs over exact rationals (fixed α), polynomials in `p` (symbolic α) and
/// doubles (numeric mode).
pub trait Coeff: Clone + Debug + PartialEq + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(v: i64) -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;
    /// The rational `n / d`.
    fn from_ratio(n: i64, d: i64) -> Self;

    fn scale_int(&self, k: i64) -> Self {
        self.mul(&Self::from_int(k))
    }

    /// Agreement between two routes to the same quantity: exact equality for
    /// exact rings, a tight relative tolerance for doubles.
    fn agrees_with(&self, other: &Self) -> bool {
        self == other
    }
}

impl Coeff for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_int(v: i64) -> Self {
        int(v)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_ratio(n: i64, d: i64) -> Self {
        ratio(n, d)
    }
}

impl Coeff for RationalPolynomial {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_int(v: i64) -> Self {
        RationalPolynomial::constant(int(v))
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_ratio(n: i64, d: i64) -> Self {
        RationalPolynomial::constant(ratio(n, d))
    }
    fn scale_int(&self, k: i64) -> Self {
        self.scale(&int(k))
    }
}

impl Coeff for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_int(v: i64) -> Self {
        v as f64
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn from_ratio(n: i64, d: i64) -> Self {
        n as f64 / d as f64
    }
    fn agrees_with(&self, other: &Self) -> bool {
        (self - other).abs() <= 1e-9 * self.abs().max(other.abs())
    }
}

/// Rings where every nonzero element is invertible.
pub trait FieldCoeff: Coeff + ToF64 {
    fn recip(&self) -> Self;
}

impl FieldCoeff for BigRational {
    fn recip(&self) -> Self {
        num_traits::Inv::inv(self)
    }
}

impl FieldCoeff for f64 {
    fn recip(&self) -> Self {
        1.0 / self
    }
}

/// Conversion to a double at the module boundary.
pub trait ToF64 {
    fn to_f64(&self) -> f64;
}

impl ToF64 for BigRational {
    fn to_f64(&self) -> f64 {
        rational_to_f64(self)
    }
}

impl ToF64 for f64 {
    fn to_f64(&self) -> f64 {
        *self
    }
}

/// Truncated power series `c[0] + c[1] u + ... + c[n] u^n` over a [`Coeff`] ring.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct Series<T> {
    pub c: Vec<T>,
}

impl<T: Coeff> Series<T> {
    pub fn one(len: usize) -> Self {
        let mut c = vec![T::zero(); len];
        c[0] = T::one();
        Self { c }
    }

    pub fn len(&self) -> usize {
        self.c.len()
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let n = self.len();
        let mut out = vec![T::zero(); n];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.c.iter().take(n - i).enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Self { c: out }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.len());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Reciprocal of a series whose constant term is exactly one.
    pub fn recip_unit(&self) -> Self {
        assert!(self.c[0] == T::one(), "series reciprocal needs unit constant term");
        let n = self.len();
        let mut out = vec![T::zero(); n];
        out[0] = T::one();
        for k in 1..n {
            let mut acc = T::zero();
            for j in 1..=k {
                acc = acc.add(&self.c[j].mul(&out[k - j]));
            }
            out[k] = acc.neg();
        }
        Self { c: out }
    }
}
