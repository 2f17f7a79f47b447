//! Composition of the separation constants into the field expansion of the
//! energy.
//!
//! With `u = ε²/16` and `F = ε/(4β³)` the quantization condition
//! `1/β = 2 Σ a_{2n} F^{2n}` becomes, for `γ = 1/β`,
//!
//! ```text
//! γ = 1 + 2 Σ_{n≥1} a_{2n} uⁿ γ^{6n}
//! ```
//!
//! which is iterated as a truncated power series in `u`; every pass fixes one
//! more order. Then `E = β² E₀ = γ^{−2} E₀`.

use num_rational::BigRational;

use super::logderiv::logderiv_ladder;
use super::params::{e0_exact, exact_alpha, p_exact, DimensionParams};
use super::poly::{int, ratio, RationalPolynomial};
use super::ring::{Coeff, FieldCoeff, Series, ToF64};
use super::CoeffError;

pub const DEFAULT_ORDER_CAP: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnergyConfig {
    pub order_cap: usize,
}

impl Default for EnergyConfig {
    fn default() -> Self {
        Self { order_cap: DEFAULT_ORDER_CAP }
    }
}

impl EnergyConfig {
    fn check(&self, order: usize) -> Result<(), CoeffError> {
        if order == 0 {
            return Err(CoeffError::OrderTooSmall);
        }
        if order > self.order_cap {
            return Err(CoeffError::OrderTooLarge { requested: order, cap: self.order_cap });
        }
        Ok(())
    }
}

/// Field expansion `E(ε) = Σ E_{2n} ε^{2n}` at a fixed dimension.
#[derive(Clone, Debug, PartialEq)]
pub struct EnergySeries<T> {
    pub params: DimensionParams,
    pub order: usize,
    /// `E_0, E_2, …, E_{2·order}`.
    pub e_coeffs: Vec<T>,
    /// `β(ε) = Σ β_k ε^{2k}` with `β_0 = 1`.
    pub beta_series: Vec<T>,
    /// `a_0, …, a_{2·order}`.
    pub separation: Vec<T>,
}

impl<T: ToF64> EnergySeries<T> {
    pub fn e_f64(&self) -> Vec<f64> {
        self.e_coeffs.iter().map(ToF64::to_f64).collect()
    }

    pub fn to_f64(&self) -> EnergySeries<f64> {
        EnergySeries {
            params: self.params,
            order: self.order,
            e_coeffs: self.e_f64(),
            beta_series: self.beta_series.iter().map(ToF64::to_f64).collect(),
            separation: self.separation.iter().map(ToF64::to_f64).collect(),
        }
    }
}

/// Returns `(γ, γ^{−2})` as series in `u = ε²/16`, each of length `order + 1`.
fn compose_series<T: Coeff>(a: &[T], order: usize) -> (Series<T>, Series<T>) {
    let len = order + 1;
    let mut gamma = Series::one(len);
    for _ in 0..order {
        let g6 = gamma.pow(6);
        let mut next: Series<T> = Series::one(len);
        let mut g6n = Series::one(len);
        for n in 1..=order {
            g6n = g6n.mul(&g6);
            let coef = a[2 * n].scale_int(2);
            for k in n..len {
                next.c[k] = next.c[k].add(&coef.mul(&g6n.c[k - n]));
            }
        }
        gamma = next;
    }
    let beta = gamma.recip_unit();
    let beta2 = beta.mul(&beta);
    (beta, beta2)
}

fn series_in_field<T: FieldCoeff>(params: DimensionParams, p: &T, order: usize) -> Result<EnergySeries<T>, CoeffError> {
    let (_, a) = logderiv_ladder(p, 2 * order)?;
    let (beta_u, beta2_u) = compose_series(&a, order);
    let e0 = p.mul(p).scale_int(2).recip().neg();
    let sixteenth = T::from_ratio(1, 16);
    let mut scale = T::one();
    let mut e_coeffs = Vec::with_capacity(order + 1);
    let mut beta_series = Vec::with_capacity(order + 1);
    for k in 0..=order {
        e_coeffs.push(e0.mul(&beta2_u.c[k]).mul(&scale));
        beta_series.push(beta_u.c[k].mul(&scale));
        scale = scale.mul(&sixteenth);
    }
    Ok(EnergySeries { params, order, e_coeffs, beta_series, separation: a })
}

/// Exact coefficients for the rational dimension `alpha`.
pub fn energy_series_exact(
    alpha: &BigRational,
    order: usize,
    config: EnergyConfig,
) -> Result<EnergySeries<BigRational>, CoeffError> {
    config.check(order)?;
    let p = p_exact(alpha)?;
    let params = DimensionParams::new(alpha.to_f64())?;
    let series = series_in_field(params, &p, order)?;
    debug_assert_eq!(series.e_coeffs[0], e0_exact(alpha)?);
    Ok(series)
}

/// Exact coefficients for a double-precision dimension, taken as the dyadic
/// rational it represents.
pub fn energy_series(alpha: f64, order: usize) -> Result<EnergySeries<BigRational>, CoeffError> {
    energy_series_exact(&exact_alpha(alpha)?, order, EnergyConfig::default())
}

/// The same recursion carried out in double precision.
pub fn energy_series_numeric(alpha: f64, order: usize, config: EnergyConfig) -> Result<EnergySeries<f64>, CoeffError> {
    config.check(order)?;
    let params = DimensionParams::new(alpha)?;
    series_in_field(params, &params.p, order)
}

/// Coefficients as exact polynomials in the dimension.
#[derive(Clone, Debug, PartialEq)]
pub struct SymbolicEnergySeries {
    pub order: usize,
    /// `E_{2n}` as polynomials in `p`, for `n = 1..=order`.
    shifts_in_p: Vec<RationalPolynomial>,
}

/// `p = (α − 1)/2` as a polynomial in `α`.
fn p_of_alpha() -> RationalPolynomial {
    RationalPolynomial::new(vec![ratio(-1, 2), ratio(1, 2)])
}

/// `−(α + 1) ((α − 1)/4)^{6n−2}`.
pub fn shift_prefactor(n: usize) -> RationalPolynomial {
    let quarter = RationalPolynomial::new(vec![ratio(-1, 4), ratio(1, 4)]);
    let mut acc = RationalPolynomial::from_integers(&[-1, -1]);
    for _ in 0..(6 * n - 2) {
        acc = &acc * &quarter;
    }
    acc
}

impl SymbolicEnergySeries {
    pub fn new(order: usize, config: EnergyConfig) -> Result<Self, CoeffError> {
        config.check(order)?;
        let p = RationalPolynomial::variable();
        let (_, a) = logderiv_ladder(&p, 2 * order)?;
        let (_, beta2_u) = compose_series(&a, order);
        let mut shifts_in_p = Vec::with_capacity(order);
        let mut denom = int(2);
        for k in 1..=order {
            denom *= int(16);
            // E_{2k} = −d_k / (2 p² 16^k); the p² divides exactly for k ≥ 1.
            let reduced = beta2_u.c[k].shift_down(2).ok_or(CoeffError::NotFactorizable { n: k })?;
            shifts_in_p.push(reduced.scale(&(-BigRational::from_integer(1.into()) / &denom)));
        }
        Ok(Self { order, shifts_in_p })
    }

    /// `E_{2n}(p)`, `1 ≤ n ≤ order`.
    pub fn shift_in_p(&self, n: usize) -> Result<&RationalPolynomial, CoeffError> {
        n.checked_sub(1).and_then(|i| self.shifts_in_p.get(i)).ok_or(CoeffError::OutOfRange { n, max: self.order })
    }

    /// `E_{2n}(α)`.
    pub fn shift_in_alpha(&self, n: usize) -> Result<RationalPolynomial, CoeffError> {
        Ok(self.shift_in_p(n)?.compose(&p_of_alpha()))
    }

    /// `F_{2n}(α)` from `E_{2n} = −(α+1)((α−1)/4)^{6n−2} F_{2n}(α)`.
    pub fn reduced_polynomial(&self, n: usize) -> Result<RationalPolynomial, CoeffError> {
        self.shift_in_alpha(n)?.div_exact(&shift_prefactor(n)).ok_or(CoeffError::NotFactorizable { n })
    }

    pub fn evaluate(&self, n: usize, alpha: &BigRational) -> Result<BigRational, CoeffError> {
        Ok(self.shift_in_alpha(n)?.evaluate(alpha))
    }
}

/// The reduced polynomials `F_{2n}(α)`, `n = 1..=4`, in their published form.
pub fn reduced_polynomial_table(n: usize) -> Result<RationalPolynomial, CoeffError> {
    let coefficients: &[i64] = match n {
        1 => &[3, 2],
        2 => &[1257, 1522, 645, 96],
        3 => &[2 * 1_399_473, 2 * 2_139_416, 2 * 1_361_778, 2 * 453_872, 2 * 79_573, 2 * 5_888],
        4 => &[
            14_478_766_161,
            25_222_378_022,
            19_432_592_955,
            8_642_479_892,
            2_410_476_263,
            423_670_118,
            43_604_973,
            2_031_616,
        ],
        _ => return Err(CoeffError::OutOfRange { n, max: 4 }),
    };
    Ok(RationalPolynomial::from_integers(coefficients))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_dimensional_low_orders() {
        let s = energy_series(3.0, 2).unwrap();
        assert_eq!(s.e_coeffs, vec![ratio(-1, 2), ratio(-9, 4), ratio(-3555, 64)]);
        assert_eq!(s.beta_series[0], int(1));
    }

    #[test]
    fn two_dimensional_polarizability() {
        let s = energy_series(2.0, 1).unwrap();
        assert_eq!(s.e_coeffs[1], ratio(-21, 256));
        assert_eq!(s.e_coeffs[0], int(-2));
    }

    #[test]
    fn order_bounds() {
        assert!(matches!(energy_series(3.0, 0), Err(CoeffError::OrderTooSmall)));
        let cfg = EnergyConfig { order_cap: 3 };
        assert!(matches!(
            energy_series_exact(&int(3), 4, cfg),
            Err(CoeffError::OrderTooLarge { requested: 4, cap: 3 })
        ));
        assert!(matches!(energy_series(1.0, 2), Err(CoeffError::InvalidDimension(_))));
    }

    #[test]
    fn table_lookup_range() {
        assert!(reduced_polynomial_table(0).is_err());
        assert!(reduced_polynomial_table(5).is_err());
        assert_eq!(reduced_polynomial_table(1).unwrap(), RationalPolynomial::from_integers(&[3, 2]));
        assert_eq!(reduced_polynomial_table(2).unwrap().evaluate(&int(3)), int(14220));
    }

    #[test]
    fn symbolic_matches_table() {
        let sym = SymbolicEnergySeries::new(4, EnergyConfig::default()).unwrap();
        for n in 1..=4 {
            assert_eq!(sym.reduced_polynomial(n).unwrap(), reduced_polynomial_table(n).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn symbolic_vanishes_in_one_dimension() {
        let sym = SymbolicEnergySeries::new(4, EnergyConfig::default()).unwrap();
        for n in 1..=4 {
            assert_eq!(sym.evaluate(n, &int(1)).unwrap(), int(0));
        }
    }
}
