//! The Dirichlet kernel and the tails `Ψ_{ν,μ}(t) = Σ_{k>n} cos(kt) ln^μ k / k^{ν+1}`.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cheb::Compensated;
use crate::error::{Error, Result};

/// Direct terms allowed before the oracle gives up.
const MAX_DIRECT_TERMS: usize = 500_000_000;
/// Angles this close to a multiple of 2π (but not on it) are rejected.
const NEAR_ZERO_ANGLE: f64 = 1e-8;

/// Parameters of a tail sum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TailQuery {
    pub nu: f64,
    pub mu: u32,
    pub t: f64,
    pub n: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TailMode {
    /// Summed to double precision.
    Oracle,
    /// Leading asymptotic term.
    Asymptotic,
}

/// `t` reduced to `[-π, π]`.
pub(crate) fn reduce_angle(t: f64) -> f64 {
    t - TAU * (t / TAU).round()
}

/// `(sin(k a), cos(k a))` with the rounding error of the product `k a` folded back in.
fn sin_cos_mul(k: f64, a: f64) -> (f64, f64) {
    let hi = k * a;
    let lo = k.mul_add(a, -hi);
    let (s, c) = hi.sin_cos();
    (s + c * lo, c - s * lo)
}

/// `D_n(t) = sin((2n+1)t/2) / (2 sin(t/2))`, continuous at multiples of `2π`.
pub fn dirichlet_kernel(n: usize, t: f64) -> f64 {
    let u = 0.5 * reduce_angle(t);
    let m = (2 * n + 1) as f64;
    if u == 0.0 {
        return 0.5 * m;
    }
    let su = u.sin();
    if su.abs() < 1e-6 && m * u.abs() < 1e-3 {
        let (m2, u2) = (m * m, u * u);
        return 0.5 * m * (1.0 - (m2 - 1.0) * u2 / 6.0 + (3.0 * m2 * m2 - 10.0 * m2 + 7.0) * u2 * u2 / 360.0);
    }
    sin_cos_mul(m, u).0 / (2.0 * su)
}

/// `Ψ` tail in the requested mode.
///
/// The oracle sums terms directly up to a cut-off `K` chosen from the
/// parameters and adds the remainder from `K` on in closed form: the
/// Euler–Maclaurin formula at `t = 0`, and otherwise the expansion
/// `Σ_{k≥K} z^k w(k) = z^K Σ_m b_m(z) w^{(m)}(K)` with `Σ b_m D^m = 1/(1 - z e^D)`,
/// which converges quickly once `K|1 - z| ≫ ν + μ`.
pub fn psi_tail(q: TailQuery, mode: TailMode) -> Result<f64> {
    if !q.nu.is_finite() || q.nu <= 0.0 {
        return Err(Error::InvalidParameters(format!(
            "tail exponent ν must be positive, got {}",
            q.nu
        )));
    }
    if !q.t.is_finite() {
        return Err(Error::Domain {
            value: q.t,
            reason: "tail angle must be finite",
        });
    }
    let tau = reduce_angle(q.t).abs();
    match mode {
        TailMode::Asymptotic => {
            if q.n == 0 {
                return Err(Error::InvalidDegree {
                    degree: 0,
                    reason: "asymptotic tail needs n ≥ 1",
                });
            }
            let n = q.n as f64;
            let lmu = n.ln().powi(q.mu as i32);
            Ok(if tau == 0.0 {
                n.powf(-q.nu) * lmu / q.nu - 0.5 * n.powf(-q.nu - 1.0) * lmu
            } else {
                -dirichlet_kernel(q.n, tau) * n.powf(-q.nu - 1.0) * lmu
            })
        }
        TailMode::Oracle => {
            if tau != 0.0 && tau < NEAR_ZERO_ANGLE {
                return Err(Error::ToleranceUnreachable {
                    tol: 1e-12,
                    bound: 2.0 / (0.5 * tau).sin(),
                    reason: "angle too close to a multiple of 2π for the remainder bound",
                });
            }
            oracle(q.nu + 1.0, q.mu, tau, q.n)
        }
    }
}

/// `Σ_{k=n+1}^∞ cos(kτ) ln^μ k / k^s`, `τ ∈ [0, π]`.
fn oracle(s: f64, mu: u32, tau: f64, n: usize) -> Result<f64> {
    let span = 64.0 * (s + mu as f64 + 4.0);
    let cut = if tau == 0.0 {
        span
    } else {
        span / (2.0 * (0.5 * tau).sin())
    };
    if cut > (n + MAX_DIRECT_TERMS) as f64 {
        return Err(Error::ToleranceUnreachable {
            tol: 1e-12,
            bound: f64::INFINITY,
            reason: "oracle would need too many direct terms",
        });
    }
    let big_k = (n + 1).max(cut.ceil() as usize).max(2);

    let mut acc = Compensated::default();
    for k in n + 1..big_k {
        let kf = k as f64;
        let w = kf.ln().powi(mu as i32) * kf.powf(-s);
        let c = if tau == 0.0 { 1.0 } else { sin_cos_mul(kf, tau).1 };
        acc.add(c * w);
    }
    let rest = if tau == 0.0 {
        euler_maclaurin_tail(s, mu, big_k as f64)
    } else {
        oscillatory_tail(s, mu, tau, big_k as f64)
    };
    acc.add(rest);
    Ok(acc.value())
}

/// Derivatives of `w(x) = x^{-s} ln^μ x` at `x`, orders `0..count`.
fn weight_derivatives(s: f64, mu: u32, x: f64, count: usize) -> Vec<f64> {
    let l = x.ln();
    let mut poly = vec![0.0; mu as usize + 1];
    poly[mu as usize] = 1.0;
    let mut out = Vec::with_capacity(count);
    for m in 0..count {
        let a = s + m as f64;
        let lpoly = poly.iter().rev().fold(0.0, |acc, c| acc * l + c);
        out.push(lpoly * x.powf(-a));
        // d/dx x^{-a} L^q = x^{-a-1} (-a L^q + q L^{q-1})
        for q in 0..poly.len() {
            let next = if q + 1 < poly.len() {
                (q + 1) as f64 * poly[q + 1]
            } else {
                0.0
            };
            poly[q] = -a * poly[q] + next;
        }
    }
    out
}

const BERNOULLI_EVEN: [f64; 8] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
];

/// `Σ_{k≥x} ln^μ k / k^s`
fn euler_maclaurin_tail(s: f64, mu: u32, x: f64) -> f64 {
    let nu = s - 1.0;
    let l = x.ln();
    let mut integral = 0.0;
    let mut falling = 1.0;
    for j in 0..=mu {
        if j > 0 {
            falling *= (mu - j + 1) as f64;
        }
        integral += falling * l.powi((mu - j) as i32) / nu.powi(j as i32 + 1);
    }
    integral *= x.powf(-nu);
    let d = weight_derivatives(s, mu, x, 2 * BERNOULLI_EVEN.len());
    let mut sum = integral + 0.5 * d[0];
    let mut fact = 1.0;
    for (j, b) in BERNOULLI_EVEN.iter().enumerate() {
        let order = 2 * j + 2;
        fact *= ((order - 1) * order) as f64;
        sum -= b / fact * d[order - 1];
    }
    sum
}

/// `Re Σ_{k≥x} e^{ikτ} ln^μ k / k^s`
fn oscillatory_tail(s: f64, mu: u32, tau: f64, x: f64) -> f64 {
    // successive terms shrink by about (s + m)/(x|1 - z|) ≤ 1/10 here
    const TERMS: usize = 24;
    let z = Complex64::from_polar(1.0, tau);
    let one_minus_z = Complex64::new(2.0 * (0.5 * tau).sin().powi(2), -tau.sin());
    let ratio = z / one_minus_z;
    let mut b = Vec::with_capacity(TERMS);
    b.push(one_minus_z.inv());
    let d = weight_derivatives(s, mu, x, TERMS);
    let mut sum = b[0] * d[0];
    for m in 1..TERMS {
        let mut acc = Complex64::new(0.0, 0.0);
        let mut inv_fact = 1.0;
        for i in 1..=m {
            inv_fact /= i as f64;
            acc += b[m - i] * inv_fact;
        }
        b.push(ratio * acc);
        sum += b[m] * d[m];
    }
    let (sn, cs) = sin_cos_mul(x, tau);
    (Complex64::new(cs, sn) * sum).re
}
