//! Stark resonances of a hydrogen-like atom in `α` dimensions.
//!
//! The crate generates the divergent weak-field series of the ground-state
//! energy exactly, continues it analytically with a shifted-argument Gauss
//! hypergeometric ansatz, and cross-checks the resulting decay rates against
//! a dispersion relation and a Landau-type tunneling estimate.
//!
//! Natural units throughout: `e = ħ = μ = 4πε_rε₀ = 1`.

pub mod coeffs;
pub mod figures;
pub mod quad;
pub mod resum;
pub mod specfun;
pub mod validate;
pub mod wkb;
