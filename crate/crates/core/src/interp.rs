//! Chebyshev interpolants on first- and second-kind points and the aliasing
//! relations between interpolant and series coefficients.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cheb::{chebyshev_nodes, coeffs_from_samples, ChebSeries, GridKind};
use crate::error::{Error, Result};
use crate::singfun::RealFunction;

/// Degree-`n` interpolant on a Chebyshev grid.
#[derive(Debug, Clone, PartialEq)]
pub struct InterpResult {
    pub series: ChebSeries,
    pub kind: GridKind,
    pub n: usize,
}

impl InterpResult {
    /// `f(x) - p(x)`.
    pub fn error_at(&self, f: &dyn RealFunction, x: f64) -> Result<f64> {
        Ok(f.eval_at(x)? - self.series.eval(x)?)
    }
}

/// Interpolates `f` at the `n + 1` points of the given kind.
///
/// Second-kind grids include `x = ±1`, so an unbounded `f` fails with
/// [`Error::UnboundedAtEndpoint`].
pub fn interpolant(f: &dyn RealFunction, n: usize, kind: GridKind) -> Result<InterpResult> {
    if n < 1 {
        return Err(Error::InvalidDegree {
            degree: n,
            reason: "interpolation degree must be at least 1",
        });
    }
    let grid = chebyshev_nodes(kind, n)?;
    let values = (0..grid.len())
        .into_par_iter()
        .map(|j| f.eval_point(grid.point(j)))
        .collect::<Result<Vec<f64>>>()?;
    Ok(InterpResult {
        series: coeffs_from_samples(&values, kind)?,
        kind,
        n,
    })
}

/// `f(x) - p_n(x)` for the degree-`n` interpolant of the given kind.
pub fn interp_error(f: &dyn RealFunction, n: usize, kind: GridKind, x: f64) -> Result<f64> {
    interpolant(f, n, kind)?.error_at(f, x)
}

/// Interpolant coefficient predicted from series coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AliasPrediction {
    /// In the primed storage convention (second-kind `c_n` halved).
    pub value: f64,
    /// The aliasing sum before the second-kind end halving.
    pub raw: f64,
    /// Last `ℓ` with at least one available alias index.
    pub last_ell: usize,
}

/// Coefficient `k` of the degree-`n` interpolant from the series coefficients:
///
/// ```text
/// first kind:  b_k = a_k + Σ_ℓ (-1)^ℓ (a_{2ℓ(n+1)-k} + a_{2ℓ(n+1)+k})
/// second kind: c_k = a_k + Σ_ℓ (a_{2ℓn-k} + a_{2ℓn+k})
/// ```
///
/// The sum stops where the supplied coefficients run out; missing indices count as zero.
pub fn aliasing_predict(series: &ChebSeries, n: usize, k: usize, kind: GridKind) -> Result<AliasPrediction> {
    if k > n {
        return Err(Error::InvalidDegree {
            degree: k,
            reason: "aliased coefficient index exceeds the interpolation degree",
        });
    }
    let (period, alternating) = match kind {
        GridKind::First => (2 * (n + 1), true),
        GridKind::Second => {
            if n == 0 {
                return Err(Error::InvalidDegree {
                    degree: 0,
                    reason: "second-kind grids need n ≥ 1",
                });
            }
            (2 * n, false)
        }
    };
    let a = series.coeffs();
    if a.len() < period + k {
        return Err(Error::InsufficientCoefficients {
            available: a.len(),
            required: period + k,
        });
    }
    let get = |i: usize| a.get(i).copied().unwrap_or(0.0);
    let mut raw = a[k];
    let mut last_ell = 0;
    for ell in 1.. {
        let lo = ell * period - k;
        if lo >= a.len() {
            break;
        }
        let sign = if alternating && ell % 2 == 1 { -1.0 } else { 1.0 };
        raw += sign * (get(lo) + get(ell * period + k));
        last_ell = ell;
    }
    let value = if kind == GridKind::Second && k == n {
        0.5 * raw
    } else {
        raw
    };
    Ok(AliasPrediction { value, raw, last_ell })
}
