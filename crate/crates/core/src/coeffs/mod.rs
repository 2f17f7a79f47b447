//! Exact generation of the Stark perturbation series in arbitrary dimension.

mod energy;
mod logderiv;
mod params;
mod poly;
mod ring;

pub use energy::{
    energy_series, energy_series_exact, energy_series_numeric, reduced_polynomial_table, shift_prefactor, EnergyConfig,
    EnergySeries, SymbolicEnergySeries, DEFAULT_ORDER_CAP,
};
pub use logderiv::{
    a_from_moments, is_sign_symmetric, logderiv_ladder, logderiv_step, moment_ratio, separation_series, LogDerivSeries,
    SeparationSeries, Sign,
};
pub use params::{e0_exact, exact_alpha, p_exact, unperturbed_params, DimensionParams};
pub use poly::{rational_to_f64, RationalPolynomial};
pub use ring::{Coeff, FieldCoeff, ToF64};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CoeffError {
    #[error("dimension must satisfy alpha > 1, got {0}")]
    InvalidDimension(f64),
    #[error("order {order} needs z_1..z_{{order-1}}, but {available} orders were supplied")]
    OrderMismatch { order: usize, available: usize },
    #[error("requested order {requested} exceeds the configured cap {cap}")]
    OrderTooLarge { requested: usize, cap: usize },
    #[error("energy series needs order >= 1")]
    OrderTooSmall,
    #[error("index {n} outside 1..={max}")]
    OutOfRange { n: usize, max: usize },
    #[error("no polynomial solution of degree {order} exists at order {order}")]
    InconsistentAnsatz { order: usize },
    #[error("origin regularity and the moment formula disagree at order {order}")]
    RouteMismatch { order: usize },
    #[error("E_{{2n}} for n = {n} does not factor through the closed-form prefactor")]
    NotFactorizable { n: usize },
}
