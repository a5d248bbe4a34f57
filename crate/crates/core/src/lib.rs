//! Effective support size (Ess) of probability distributions.
//!
//! Ess of order α measures how many outcomes a distribution effectively
//! spreads its mass over: `S(p, α) = (Σ p_i^α)^(1/(1−α))`, the exponential
//! of the Rényi entropy of order α. It equals 1 for a point mass, `m` for the
//! uniform pmf on `m` outcomes, ignores impossible outcomes and multiplies
//! across independent variables.
//!
//! - [`discrete`]: pmfs, Shannon/Rényi entropy, Ess and Ess profiles.
//! - [`conditional`]: joint tables, marginals, conditionals and the
//!   mean-conditional Ess.
//! - [`continuous`]: closed forms for Gaussian, Exponential and Uniform
//!   densities plus a quadrature evaluator.
//! - [`io`]: parsing and rendering.
//!
//! ```
//! use ess_core::{ess, make_pmf, Alpha};
//!
//! let p = make_pmf(&[0.9, 0.1], false).unwrap();
//! assert!((ess(&p, Alpha::Finite(0.5)) - 1.6).abs() < 1e-12);
//! assert!((ess(&p, Alpha::Inf) - 1.0 / 0.9).abs() < 1e-15);
//! ```

// negated comparisons reject NaN along with out-of-range values
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod conditional;
pub mod continuous;
pub mod discrete;
pub mod error;
pub mod io;
mod quadrature;

pub use conditional::{
    chain_identity_rhs, conditional_y_given_x, geometric_conditional_ess, marginal_x, marginal_y,
    mean_conditional_ess, verify_chain_identity, ChainReport, JointPmf,
};
pub use continuous::{ess_continuous_closed_form, ess_continuous_quadrature, DensitySpec};
pub use discrete::{
    ess, ess_profile, make_pmf, parse_alpha_list, product_pmf, renyi_entropy, shannon_entropy,
    support_size, table1_alphas, Alpha, EssProfile, Pmf,
};
pub use error::{EssError, Result};
