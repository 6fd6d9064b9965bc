//! Closed-form asymptotics: special functions, coefficient decay, Dirichlet
//! kernel tails and pointwise truncation-error laws.

mod coeff;
mod pointwise;
mod special;
mod tail;

pub use coeff::{
    asym_constants, coeff_asym, coeff_asym_for, constants_for, predicted_order, AsymConstants, DecayOrder, Side,
};
pub use pointwise::pointwise_error_asym;
pub use special::{cos_pi, digamma, gamma_derivative, gamma_fn, sin_pi};
pub use tail::{dirichlet_kernel, psi_tail, TailMode, TailQuery};
