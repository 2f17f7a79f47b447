//! Complex special functions: Gamma, digamma, and the Gauss hypergeometric
//! function with its expansion around unit argument.

mod gamma;
mod hyp;
mod nearunit;

use num_complex::Complex64;
use thiserror::Error;

pub use gamma::{complex_gamma, digamma, is_nonpositive_integer, ln_gamma, pochhammer, recip_gamma};
pub use hyp::{gauss_2f1, gauss_2f1_side, CutSide};
pub use nearunit::{near_unit_f0, shifted_kernel, NearUnitExpansion};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpecfunError {
    #[error("Gamma function pole at {0}")]
    PoleError(Complex64),
    #[error("hypergeometric parameter c = {0} is a non-positive integer")]
    ParameterPole(Complex64),
    #[error("series did not converge within {terms} terms")]
    NonConvergent { terms: usize },
    #[error("argument {0} lies on the branch cut [1, inf) and no side was given")]
    OnBranchCut(f64),
    #[error("2F1 diverges at unit argument for Re(c - a - b) <= 0")]
    DivergentAtUnit,
    #[error("truncation order {order} reaches a Gamma pole for integer l = {l}")]
    TruncationBeyondPole { order: usize, l: f64 },
    #[error("branch parameter l = {0} must be positive and finite")]
    InvalidL(f64),
}
