//! Independent single-coefficient oracle: composite Gauss–Legendre on meshes
//! graded geometrically toward both endpoints.

use std::f64::consts::{FRAC_PI_2, PI};
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::singfun::{Point, RealFunction};

const GL_ORDER: usize = 20;
const MAX_LEVELS: usize = 1000;

/// Nodes and weights of the `m`-point Gauss–Legendre rule on `[-1, 1]`.
pub fn gauss_legendre(m: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; m];
    let mut weights = vec![0.0; m];
    for i in 0..m.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (m as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=m {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = m as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = x;
        nodes[m - 1 - i] = -x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[m - 1 - i] = w;
    }
    (nodes, weights)
}

fn rule() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(GL_ORDER))
}

/// Neumaier-compensated accumulator.
#[derive(Default)]
pub(crate) struct Compensated {
    sum: f64,
    carry: f64,
}

impl Compensated {
    pub(crate) fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.carry += (self.sum - t) + v;
        } else {
            self.carry += (v - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

fn panel(a: f64, b: f64, k: usize, h: &dyn Fn(f64) -> Result<f64>) -> Result<f64> {
    let (x, w) = rule();
    let pieces = (((b - a) * (k as f64 + 1.0) / 2.0).ceil() as usize).max(1);
    let width = (b - a) / pieces as f64;
    let mut acc = Compensated::default();
    for p in 0..pieces {
        let lo = a + p as f64 * width;
        let (mid, half) = (lo + 0.5 * width, 0.5 * width);
        let mut s = 0.0;
        for (xi, wi) in x.iter().zip(w) {
            let t = mid + half * xi;
            s += wi * h(t)? * (k as f64 * t).cos();
        }
        acc.add(s * half);
    }
    Ok(acc.value())
}

/// `∫_0^{π/2} h(s) cos(ks) ds` with panels halving toward `s = 0`.
fn graded_half(k: usize, tol: f64, h: &dyn Fn(f64) -> Result<f64>) -> Result<f64> {
    let mut acc = Compensated::default();
    let mut b = FRAC_PI_2;
    for level in 0..MAX_LEVELS {
        let a = 0.5 * b;
        let part = panel(a, b, k, h)?;
        acc.add(part);
        b = a;
        if level >= 4 && part.abs() < 0.01 * tol {
            acc.add(panel(0.0, b, k, h)?);
            return Ok(acc.value());
        }
    }
    Err(Error::NonConvergence {
        iterations: MAX_LEVELS,
        reason: "graded quadrature panels did not become negligible",
    })
}

/// `a_k = (2/π) ∫_0^π f(cos t) cos(kt) dt` by graded composite quadrature.
///
/// The interval is split at `π/2`; the half near `t = π` is integrated in
/// `s = π - t` so both singular endpoints are approached without cancellation.
pub fn quadrature_coeff(f: &dyn RealFunction, k: usize, tol: f64) -> Result<f64> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidParameters(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let near_one = graded_half(k, tol, &|s| f.eval_point(Point::from_theta(s)))?;
    let near_minus_one = graded_half(k, tol, &|s| f.eval_point(Point::from_theta_complement(s)))?;
    let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok(2.0 / PI * (near_one + sign * near_minus_one))
}
