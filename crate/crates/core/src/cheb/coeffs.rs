use rayon::prelude::*;

use super::grid::{chebyshev_nodes, GridKind};
use super::series::ChebSeries;
use super::transform::{dct1, dct2};
use crate::error::{Error, Result};
use crate::singfun::{CoeffDecay, RealFunction};

/// Interpolant coefficients from samples on a Chebyshev grid (node order,
/// i.e. decreasing `x`). The result is stored in the primed convention: for
/// second-kind grids the last coefficient is already halved.
pub fn coeffs_from_samples(values: &[f64], kind: GridKind) -> Result<ChebSeries> {
    if values.is_empty() {
        return Err(Error::SizeMismatch { expected: 1, actual: 0 });
    }
    if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
        return Err(Error::InvalidParameters(format!("non-finite sample {bad}")));
    }
    let coeffs = match kind {
        GridKind::First => {
            let scale = 2.0 / values.len() as f64;
            dct2(values).into_iter().map(|v| v * scale).collect()
        }
        GridKind::Second => {
            if values.len() < 2 {
                return Err(Error::InvalidDegree {
                    degree: 0,
                    reason: "second-kind grids need n ≥ 1",
                });
            }
            let n = values.len() - 1;
            let scale = 2.0 / n as f64;
            let mut c: Vec<f64> = dct1(values).into_iter().map(|v| v * scale).collect();
            c[n] *= 0.5;
            c
        }
    };
    Ok(ChebSeries::from_vec_unchecked(coeffs))
}

/// Settings for [`true_coeffs_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrueCoeffOptions {
    /// Largest second-kind grid degree `M` tried before giving up.
    pub max_samples: usize,
}

impl Default for TrueCoeffOptions {
    fn default() -> Self {
        TrueCoeffOptions { max_samples: 1 << 22 }
    }
}

/// Exact-coefficient approximation with its provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct TrueCoeffs {
    pub series: ChebSeries,
    /// Degree of the oversampled grid that was used.
    pub samples: usize,
    /// Estimated bound on the aliasing contamination of any returned coefficient.
    pub alias_bound: f64,
}

/// The Chebyshev coefficients `a_0..=a_{k_max}` of `f` to absolute accuracy `tol`.
pub fn true_coeffs(f: &dyn RealFunction, k_max: usize, tol: f64) -> Result<ChebSeries> {
    true_coeffs_with(f, k_max, tol, TrueCoeffOptions::default()).map(|t| t.series)
}

/// Oversampled second-kind interpolation at `M + 1` points. The aliased
/// coefficients `a_{2ℓM±k}` are bounded with the decay model of `f` (amplitude
/// fitted on the computed tail) and `M` is doubled until the bound is below `tol`.
pub fn true_coeffs_with(f: &dyn RealFunction, k_max: usize, tol: f64, opts: TrueCoeffOptions) -> Result<TrueCoeffs> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidParameters(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let decay = f.decay();
    if let CoeffDecay::Algebraic { rate, .. } = decay {
        if rate <= 1.0 {
            return Err(Error::ToleranceUnreachable {
                tol,
                bound: f64::INFINITY,
                reason: "coefficients decay too slowly for the aliasing sum to converge",
            });
        }
    }
    let mut m = (4 * (k_max + 1)).next_power_of_two().max(256);
    let mut best = f64::INFINITY;
    while m <= opts.max_samples {
        let grid = chebyshev_nodes(GridKind::Second, m)?;
        let values = (0..=m)
            .into_par_iter()
            .map(|j| f.eval_point(grid.point(j)))
            .collect::<Result<Vec<f64>>>()?;
        let series = coeffs_from_samples(&values, GridKind::Second)?;
        let scale = values.iter().fold(0.0f64, |a, v| a.max(v.abs()));
        let bound = alias_bound(series.coeffs(), m, k_max, decay, scale);
        if bound <= tol {
            return Ok(TrueCoeffs {
                series: series.truncated(k_max),
                samples: m,
                alias_bound: bound,
            });
        }
        if decay == CoeffDecay::Geometric && bound <= 64.0 * f64::EPSILON * scale {
            // the tail is pure rounding noise; more samples cannot lower it
            return Err(Error::ToleranceUnreachable {
                tol,
                bound,
                reason: "rounding floor of the samples reached",
            });
        }
        best = best.min(bound);
        m *= 2;
    }
    Err(Error::ToleranceUnreachable {
        tol,
        bound: best,
        reason: "sample cap reached",
    })
}

fn envelope(k: f64, rate: f64, ln_power: u32) -> f64 {
    k.ln().max(1.0).powi(ln_power as i32) / k.powf(rate)
}

/// `∫_y^∞ ln^p(s)/s^r ds` for `r > 1`, `y ≥ e`.
fn envelope_tail_integral(y: f64, rate: f64, ln_power: u32) -> f64 {
    let nu = rate - 1.0;
    let l = y.ln();
    let mut fact = 1.0;
    let mut sum = 0.0;
    for j in 0..=ln_power {
        if j > 0 {
            fact *= (ln_power - j + 1) as f64;
        }
        sum += fact * l.powi((ln_power - j) as i32) / nu.powi(j as i32 + 1);
    }
    y.powf(-nu) * sum
}

fn alias_bound(c: &[f64], m: usize, k_max: usize, decay: CoeffDecay, scale: f64) -> f64 {
    match decay {
        CoeffDecay::Zero => 0.0,
        CoeffDecay::Geometric => 4.0 * c[m / 2..].iter().fold(0.0f64, |a, v| a.max(v.abs())),
        CoeffDecay::Algebraic { rate, ln_power } => {
            let noise = 32.0 * f64::EPSILON * scale;
            let amplitude = (m / 16..=m / 4)
                .map(|k| c[k].abs().max(noise) / envelope(k as f64, rate, ln_power))
                .fold(0.0f64, f64::max);
            const TERMS: usize = 64;
            let (mf, kf) = (m as f64, k_max as f64);
            let mut sum = 0.0;
            for l in 1..=TERMS {
                let base = 2.0 * l as f64 * mf;
                sum += envelope(base - kf, rate, ln_power) + envelope(base + kf, rate, ln_power);
            }
            let y0 = 2.0 * mf * (TERMS as f64 + 0.5);
            sum += 2.0 * envelope_tail_integral(y0, rate, ln_power) / (2.0 * mf);
            amplitude * sum
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cheb::clenshaw_eval;
    use crate::singfun::{AnalyticFactor, LogSingularFunction};

    #[test]
    fn quadratic_on_three_points() {
        let c = coeffs_from_samples(&[1.0, 0.0, 1.0], GridKind::Second).unwrap();
        let want = [1.0, 0.0, 0.5];
        for (a, b) in c.coeffs().iter().zip(want) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn aliased_modes() {
        for n in [3usize, 8, 15, 20] {
            let g = chebyshev_nodes(GridKind::First, n).unwrap();
            let v: Vec<f64> = g.angles.iter().map(|t| ((n + 1) as f64 * t).cos()).collect();
            let c = coeffs_from_samples(&v, GridKind::First).unwrap();
            assert!(c.coeffs().iter().all(|x| x.abs() < 1e-13), "T_(n+1) n={n}");

            let g = chebyshev_nodes(GridKind::Second, n).unwrap();
            let v: Vec<f64> = g.angles.iter().map(|t| ((2 * n) as f64 * t).cos()).collect();
            let c = coeffs_from_samples(&v, GridKind::Second).unwrap();
            assert!((c.coeffs()[0] - 2.0).abs() < 1e-13);
            assert!(c.coeffs()[1..].iter().all(|x| x.abs() < 1e-13));
        }
    }

    #[test]
    fn reproduces_samples() {
        for kind in [GridKind::First, GridKind::Second] {
            for n in [1usize, 5, 16, 31, 64] {
                let g = chebyshev_nodes(kind, n).unwrap();
                let v: Vec<f64> = g.nodes.iter().map(|x| (3.0 * x).sin() + x.abs()).collect();
                let c = coeffs_from_samples(&v, kind).unwrap();
                for (x, want) in g.nodes.iter().zip(&v) {
                    let got = clenshaw_eval(&c, *x).unwrap();
                    assert!((got - want).abs() < 1e-12 * want.abs().max(1.0));
                }
            }
        }
    }

    #[test]
    fn size_errors() {
        assert!(matches!(
            coeffs_from_samples(&[], GridKind::First),
            Err(Error::SizeMismatch { .. })
        ));
        assert!(matches!(
            coeffs_from_samples(&[1.0], GridKind::Second),
            Err(Error::InvalidDegree { .. })
        ));
    }

    #[test]
    fn zero_function_has_zero_coefficients() {
        let f = LogSingularFunction::zero();
        let c = true_coeffs(&f, 50, 1e-14).unwrap();
        assert!(c.coeffs().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn unbounded_is_unreachable() {
        let f = LogSingularFunction::right_only(0.0, 1, AnalyticFactor::one()).unwrap();
        assert!(matches!(
            true_coeffs(&f, 10, 1e-10),
            Err(Error::ToleranceUnreachable { .. })
        ));
        let f = LogSingularFunction::right_only(1.0, 1, AnalyticFactor::one()).unwrap();
        assert!(matches!(true_coeffs(&f, 10, 0.0), Err(Error::InvalidParameters(_))));
        let capped = TrueCoeffOptions { max_samples: 512 };
        assert!(matches!(
            true_coeffs_with(&f, 100, 1e-15, capped),
            Err(Error::ToleranceUnreachable { .. })
        ));
    }

    #[test]
    fn analytic_target() {
        let g = AnalyticFactor::Exp(1.0);
        let c = true_coeffs(&g, 20, 1e-14).unwrap();
        for x in [-1.0, -0.3, 0.2, 1.0] {
            assert!((c.eval(x).unwrap() - x.exp()).abs() < 1e-13);
        }
    }
}
