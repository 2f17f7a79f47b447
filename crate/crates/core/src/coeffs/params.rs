use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::{int, rational_to_f64};
use super::CoeffError;

/// Dimension `α` of the hydrogen-like atom and the unperturbed quantities
/// that follow from it.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct DimensionParams {
    pub alpha: f64,
    /// `(α − 1) / 2`
    pub p: f64,
    /// Ground-state energy `−1/(2p²)`.
    pub e0: f64,
    /// Ionization potential `1/(2p²)`.
    pub ip: f64,
}

impl DimensionParams {
    pub fn new(alpha: f64) -> Result<Self, CoeffError> {
        if !(alpha.is_finite() && alpha > 1.0) {
            return Err(CoeffError::InvalidDimension(alpha));
        }
        let p = (alpha - 1.0) / 2.0;
        let ip = 1.0 / (2.0 * p * p);
        Ok(Self { alpha, p, e0: -ip, ip })
    }

    /// Unperturbed logarithmic derivative `z₀ = 1/(1 − α)`.
    pub fn z0(&self) -> f64 {
        1.0 / (1.0 - self.alpha)
    }
}

/// Same as [`DimensionParams::new`].
pub fn unperturbed_params(alpha: f64) -> Result<DimensionParams, CoeffError> {
    DimensionParams::new(alpha)
}

/// Exact `p = (α − 1)/2` for a rational dimension.
pub fn p_exact(alpha: &BigRational) -> Result<BigRational, CoeffError> {
    if alpha <= &BigRational::one() {
        return Err(CoeffError::InvalidDimension(rational_to_f64(alpha)));
    }
    Ok((alpha - BigRational::one()) / int(2))
}

/// Exact `E₀ = −1/(2p²)`.
pub fn e0_exact(alpha: &BigRational) -> Result<BigRational, CoeffError> {
    let p = p_exact(alpha)?;
    debug_assert!(!p.is_zero());
    Ok(-(BigRational::one() / (int(2) * &p * &p)))
}

/// Every finite double is a dyadic rational; this recovers it exactly.
pub fn exact_alpha(alpha: f64) -> Result<BigRational, CoeffError> {
    BigRational::from_float(alpha).ok_or(CoeffError::InvalidDimension(alpha))
}
