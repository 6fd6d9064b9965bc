//! Chebyshev basis machinery: grids, series evaluation, discrete transforms
//! and exact-coefficient computation.

mod coeffs;
mod grid;
mod quadrature;
mod series;
pub mod transform;

pub use coeffs::{coeffs_from_samples, true_coeffs, true_coeffs_with, TrueCoeffOptions, TrueCoeffs};
pub use grid::{chebyshev_nodes, ChebGrid, GridKind};
pub(crate) use quadrature::Compensated;
pub use quadrature::{gauss_legendre, quadrature_coeff};
pub use series::{clenshaw_eval, ChebSeries};

pub(crate) use series::clenshaw_raw;
