//! Best uniform approximation by a discretized Remez exchange.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cheb::{clenshaw_raw, ChebSeries};
use crate::error::{Error, Result};
use crate::singfun::{Point, RealFunction};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RemezOptions {
    /// Working grid degree; `None` means `max(2048, 32(n+1))`.
    pub grid_size: Option<usize>,
    pub max_iterations: usize,
    /// Stop once `E - |h| ≤ tol·E`.
    pub tol: f64,
}

impl Default for RemezOptions {
    fn default() -> Self {
        RemezOptions {
            grid_size: None,
            max_iterations: 50,
            tol: 1e-10,
        }
    }
}

impl RemezOptions {
    pub fn grid_for(&self, n: usize) -> usize {
        self.grid_size.unwrap_or_else(|| default_grid(n))
    }
}

fn default_grid(n: usize) -> usize {
    (32 * (n + 1)).max(2048)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BestApprox {
    #[serde(with = "series_serde")]
    pub series: ChebSeries,
    /// `|h|` from the final alternation system.
    pub levelled_error: f64,
    /// `n + 2` increasing points.
    pub reference: Vec<f64>,
    pub iterations: usize,
    /// Largest residual over the working grid and the reference.
    pub achieved_sup: f64,
}

mod series_serde {
    use super::ChebSeries;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(s: &ChebSeries, ser: S) -> Result<S::Ok, S::Error> {
        s.coeffs().serialize(ser)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<ChebSeries, D::Error> {
        let v = Vec::<f64>::deserialize(de)?;
        ChebSeries::new(v).map_err(serde::de::Error::custom)
    }
}

/// A point of the working grid or reference, kept in angle form so that
/// `f` is evaluated accurately next to the endpoints.
#[derive(Debug, Clone, Copy)]
struct Node {
    theta: f64,
    point: Point,
}

impl Node {
    fn from_grid(j: usize, m: usize) -> Node {
        // increasing x ⇔ decreasing angle
        Node {
            theta: PI * (m - j) as f64 / m as f64,
            point: Point::from_angle_fraction(m - j, m),
        }
    }

    fn from_theta(theta: f64) -> Node {
        let point = if theta <= 0.5 * PI {
            Point::from_theta(theta)
        } else {
            Point::from_theta_complement(PI - theta)
        };
        Node { theta, point }
    }
}

fn residual(f: &dyn RealFunction, c: &[f64], node: Node) -> Result<f64> {
    Ok(f.eval_point(node.point)? - clenshaw_raw(c, node.point.x))
}

/// Solves `Σ_k c_k T_k(x_i) + (-1)^i h = f(x_i)` on the reference; returns primed coefficients and `h`.
fn solve_alternation(reference: &[Node], values: &[f64]) -> Result<(Vec<f64>, f64)> {
    let size = reference.len();
    let n = size - 2;
    let mut a = vec![vec![0.0; size + 1]; size];
    for (i, node) in reference.iter().enumerate() {
        let row = &mut a[i];
        for (k, slot) in row.iter_mut().enumerate().take(n + 1) {
            *slot = (k as f64 * node.theta).cos();
        }
        row[n + 1] = if i % 2 == 0 { 1.0 } else { -1.0 };
        row[size] = values[i];
    }
    for col in 0..size {
        let pivot = (col..size)
            .max_by(|&p, &q| a[p][col].abs().total_cmp(&a[q][col].abs()))
            .unwrap_or(col);
        if a[pivot][col] == 0.0 {
            return Err(Error::NonConvergence {
                iterations: 0,
                reason: "singular alternation system",
            });
        }
        a.swap(col, pivot);
        for r in col + 1..size {
            let factor = a[r][col] / a[col][col];
            if factor != 0.0 {
                let (top, rest) = a.split_at_mut(r);
                for (x, p) in rest[0][col..=size].iter_mut().zip(&top[col][col..=size]) {
                    *x -= factor * p;
                }
            }
        }
    }
    let mut sol = vec![0.0; size];
    for r in (0..size).rev() {
        let mut s = a[r][size];
        for cidx in r + 1..size {
            s -= a[r][cidx] * sol[cidx];
        }
        sol[r] = s / a[r][r];
    }
    let h = sol[n + 1];
    let mut c = sol[..=n].to_vec();
    c[0] *= 2.0;
    Ok((c, h))
}

/// Largest residual of each sign run whose peak reaches `floor`, merged so that signs alternate.
fn alternating_extrema(r: &[f64], floor: f64) -> Vec<(usize, f64)> {
    let mut runs: Vec<(usize, f64)> = Vec::new();
    let mut current: Option<(usize, f64)> = None;
    for (j, &v) in r.iter().enumerate() {
        if v == 0.0 {
            continue;
        }
        match current {
            Some((_, best)) if best.signum() == v.signum() => {
                if v.abs() > best.abs() {
                    current = Some((j, v));
                }
            }
            _ => {
                if let Some(run) = current {
                    runs.push(run);
                }
                current = Some((j, v));
            }
        }
    }
    runs.extend(current);
    let mut out: Vec<(usize, f64)> = Vec::with_capacity(runs.len());
    for run in runs.into_iter().filter(|(_, v)| v.abs() >= floor) {
        match out.last_mut() {
            Some(last) if last.1.signum() == run.1.signum() => {
                if run.1.abs() > last.1.abs() {
                    *last = run;
                }
            }
            _ => out.push(run),
        }
    }
    out
}

/// Moves a grid extremum to the vertex of the parabola through it and its neighbours.
fn refine(f: &dyn RealFunction, c: &[f64], grid: &[Node], r: &[f64], j: usize) -> Result<Node> {
    let here = grid[j];
    if j == 0 || j + 1 == grid.len() {
        return Ok(here);
    }
    let (rm, r0, rp) = (r[j - 1], r[j], r[j + 1]);
    let curvature = rm - 2.0 * r0 + rp;
    if curvature == 0.0 {
        return Ok(here);
    }
    // grid angles decrease with j
    let step = grid[j - 1].theta - grid[j].theta;
    let shift = (0.5 * (rp - rm) / curvature).clamp(-0.5, 0.5);
    if shift == 0.0 {
        return Ok(here);
    }
    let node = Node::from_theta(grid[j].theta + shift * step);
    let value = residual(f, c, node)?;
    Ok(if value.abs() > r0.abs() && value.signum() == r0.signum() {
        node
    } else {
        here
    })
}

/// Degree-`n` best approximation of a bounded `f` on `[-1, 1]`.
pub fn remez(f: &dyn RealFunction, n: usize, opts: RemezOptions) -> Result<BestApprox> {
    if !f.is_bounded() {
        return Err(Error::UnboundedFunction);
    }
    let m = opts.grid_for(n);
    if m < n + 2 {
        return Err(Error::InvalidParameters(format!(
            "working grid of degree {m} cannot hold {} reference points",
            n + 2
        )));
    }
    let grid: Vec<Node> = (0..=m).map(|j| Node::from_grid(j, m)).collect();
    let fvals = grid
        .par_iter()
        .map(|node| f.eval_point(node.point))
        .collect::<Result<Vec<f64>>>()?;
    let scale = fvals.iter().fold(0.0f64, |a, v| a.max(v.abs()));

    let mut reference: Vec<Node> = (0..n + 2)
        .map(|i| Node::from_theta(PI * (n + 1 - i) as f64 / (n + 1) as f64))
        .collect();
    let mut iterations = 0;
    loop {
        iterations += 1;
        let values = reference
            .iter()
            .map(|node| f.eval_point(node.point))
            .collect::<Result<Vec<f64>>>()?;
        let (c, h) = solve_alternation(&reference, &values)?;
        let r: Vec<f64> = grid
            .par_iter()
            .zip(&fvals)
            .map(|(node, fv)| fv - clenshaw_raw(&c, node.point.x))
            .collect();
        let grid_sup = r.iter().fold(0.0f64, |a, v| a.max(v.abs()));
        let achieved_sup = grid_sup.max(h.abs());

        let done = achieved_sup - h.abs() <= opts.tol * achieved_sup
            || achieved_sup <= 1e-14 * scale
            || iterations >= opts.max_iterations;
        if done {
            return Ok(BestApprox {
                series: ChebSeries::new(c)?,
                levelled_error: h.abs(),
                reference: reference.iter().map(|node| node.point.x).collect(),
                iterations,
                achieved_sup,
            });
        }

        let extrema = alternating_extrema(&r, 0.5 * h.abs());
        reference = if extrema.len() >= n + 2 {
            let gmax = extrema
                .iter()
                .enumerate()
                .max_by(|a, b| a.1 .1.abs().total_cmp(&b.1 .1.abs()))
                .map(|(i, _)| i)
                .unwrap_or(0);
            let lo = gmax.saturating_sub(n + 1);
            let hi = gmax.min(extrema.len() - (n + 2));
            let start = (lo..=hi)
                .max_by(|&a, &b| {
                    let min_in = |s: usize| {
                        extrema[s..s + n + 2]
                            .iter()
                            .fold(f64::INFINITY, |acc, e| acc.min(e.1.abs()))
                    };
                    min_in(a).total_cmp(&min_in(b))
                })
                .unwrap_or(lo);
            extrema[start..start + n + 2]
                .iter()
                .map(|&(j, _)| refine(f, &c, &grid, &r, j))
                .collect::<Result<Vec<Node>>>()?
        } else {
            single_exchange(f, &c, &reference, &grid, &r, h).ok_or(Error::AlternationLoss {
                iteration: iterations,
                found: extrema.len(),
                needed: n + 2,
            })?
        };
    }
}

/// Classical one-point exchange of the global maximum; `None` if it cannot improve the reference.
fn single_exchange(
    f: &dyn RealFunction,
    c: &[f64],
    reference: &[Node],
    grid: &[Node],
    r: &[f64],
    h: f64,
) -> Option<Vec<Node>> {
    let g = (0..r.len()).max_by(|&a, &b| r[a].abs().total_cmp(&r[b].abs()))?;
    if r[g].abs() <= h.abs() {
        return None;
    }
    let x = grid[g].point.x;
    let sigma = r[g].signum();
    let signs: Vec<f64> = reference
        .iter()
        .map(|node| residual(f, c, *node).map(f64::signum).unwrap_or(0.0))
        .collect();
    let mut out = reference.to_vec();
    let last = out.len() - 1;
    if x < out[0].point.x {
        if signs[0] == sigma {
            out[0] = grid[g];
        } else {
            out.pop();
            out.insert(0, grid[g]);
        }
    } else if x > out[last].point.x {
        if signs[last] == sigma {
            out[last] = grid[g];
        } else {
            out.remove(0);
            out.push(grid[g]);
        }
    } else {
        let i = (0..last).find(|&i| out[i].point.x <= x && x <= out[i + 1].point.x)?;
        let slot = if signs[i] == sigma { i } else { i + 1 };
        out[slot] = grid[g];
    }
    Some(out)
}

/// Residuals of `f - p` on a reference and over the working grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquioscillationReport {
    pub residuals: Vec<f64>,
    /// Nonzero residuals with strictly alternating signs.
    pub alternating: bool,
    /// All `|residual|` equal to within `1e-8` relative.
    pub levelled: bool,
    /// `max |f - p|` over the working grid of degree `max(2048, 32(n+1))`.
    pub sup_error: f64,
}

/// Alternation diagnostics for `p` on `reference` (which must hold `n + 2` points).
pub fn equioscillation_report(
    f: &dyn RealFunction,
    p: &ChebSeries,
    reference: &[f64],
) -> Result<EquioscillationReport> {
    let n = p.coeffs().len() - 1;
    if reference.len() != n + 2 {
        return Err(Error::SizeMismatch {
            expected: n + 2,
            actual: reference.len(),
        });
    }
    let residuals = reference
        .iter()
        .map(|&x| Ok(f.eval_at(x)? - p.eval(x)?))
        .collect::<Result<Vec<f64>>>()?;
    let alternating =
        residuals.iter().all(|r| *r != 0.0) && residuals.windows(2).all(|w| w[0].signum() != w[1].signum());
    let (lo, hi) = residuals.iter().fold((f64::INFINITY, 0.0f64), |(lo, hi), r| {
        (lo.min(r.abs()), hi.max(r.abs()))
    });
    let levelled = hi == 0.0 || hi - lo <= 1e-8 * hi;
    let m = default_grid(n);
    let sup_error = (0..=m)
        .into_par_iter()
        .map(|j| {
            let node = Node::from_grid(j, m);
            residual(f, p.coeffs(), node).map(f64::abs)
        })
        .collect::<Result<Vec<f64>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    Ok(EquioscillationReport {
        residuals,
        alternating,
        levelled,
        sup_error,
    })
}
