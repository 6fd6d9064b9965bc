use std::f64::consts::PI;

use super::coeff::{constants_for, Side};
use super::tail::dirichlet_kernel;
use crate::error::{Error, Result};
use crate::singfun::LogSingularFunction;

/// Predicted truncation error `f(x) - f_n(x)`, summed over the enabled endpoints.
///
/// With `a_k ≈ (A ln^μ k + B ln^{μ-1} k)/k^{ν+1}`, `ν = 2e`, an endpoint
/// contributes `-D_n(τ)(A ln^μ n + B ln^{μ-1} n) n^{-ν-1}` away from itself
/// (`τ = θ` for `x = +1`, `τ = θ + π` for `x = -1`, `x = cos θ`) and
/// `n^{-ν}[A(ln^μ n/ν + μ ln^{μ-1} n/ν²) + B ln^{μ-1} n/ν]` at itself.
pub fn pointwise_error_asym(f: &LogSingularFunction, n: usize, x: f64) -> Result<f64> {
    if n < 2 {
        return Err(Error::InvalidDegree {
            degree: n,
            reason: "error asymptotics need n ≥ 2",
        });
    }
    if !(-1.0..=1.0).contains(&x) {
        return Err(Error::Domain {
            value: x,
            reason: "x must lie in [-1, 1]",
        });
    }
    for (e, _, _) in f.enabled_terms() {
        if e.is_nan() || e <= 0.0 {
            return Err(Error::UnsupportedExponent(e));
        }
    }
    let theta = x.acos();
    let nf = n as f64;
    let l = nf.ln();
    let mut total = 0.0;
    for c in constants_for(f)? {
        let (a, b) = (c.leading(), c.second());
        let nu = 2.0 * c.exponent;
        let mu = c.mu as i32;
        let (lm, lm1) = (l.powi(mu), l.powi(mu - 1));
        let at_own_endpoint = match c.side {
            Side::Right => x == 1.0,
            Side::Left => x == -1.0,
        };
        total += if at_own_endpoint {
            nf.powf(-nu) * (a * (lm / nu + c.mu as f64 * lm1 / (nu * nu)) + b * lm1 / nu)
        } else {
            let tau = match c.side {
                Side::Right => theta,
                Side::Left => theta + PI,
            };
            -dirichlet_kernel(n, tau) * (a * lm + b * lm1) * nf.powf(-nu - 1.0)
        };
    }
    Ok(total)
}
