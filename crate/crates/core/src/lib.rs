//! Spectral approximation of functions with logarithmic endpoint singularities.
//!
//! The crate computes Chebyshev truncations, Chebyshev interpolants on both
//! point families and best (minimax) polynomial approximations of
//!
//! ```text
//! f(x) = (1 - x)^γ ln^μ(1 - x) g₁(x) + (1 + x)^δ ln^μ(1 + x) g₂(x),   x ∈ [-1, 1]
//! ```
//!
//! and evaluates the closed-form asymptotic laws for their coefficients and
//! pointwise errors. The [`harness`] module drives reproducible experiments
//! that compare measured errors against those laws.
//!
//! All coefficient vectors use the primed convention
//! `f(x) ≈ c₀/2 + Σ_{k≥1} c_k T_k(x)`.

pub mod asym;
pub mod cheb;
pub mod error;
pub mod harness;
pub mod interp;
pub mod remez;
pub mod singfun;

pub use asym::{
    asym_constants, coeff_asym, digamma, dirichlet_kernel, gamma_fn, pointwise_error_asym, predicted_order, psi_tail,
    AsymConstants, DecayOrder, Side, TailMode, TailQuery,
};
pub use cheb::{
    chebyshev_nodes, clenshaw_eval, coeffs_from_samples, quadrature_coeff, true_coeffs, ChebGrid, ChebSeries, GridKind,
};
pub use error::{Error, Result};
pub use interp::{aliasing_predict, interp_error, interpolant, AliasPrediction, InterpResult};
pub use remez::{equioscillation_report, remez, BestApprox, EquioscillationReport, RemezOptions};
pub use singfun::{AnalyticFactor, CoeffDecay, LogSingularFunction, Point, RealFunction};
