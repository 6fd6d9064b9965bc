//! Library results against closed forms and a quadrature written here from scratch.

use std::f64::consts::{LN_2, PI};

use logcheb::asym::{coeff_asym_for, gamma_fn};
use logcheb::{
    digamma, psi_tail, quadrature_coeff, true_coeffs, AnalyticFactor, ChebSeries, LogSingularFunction, RealFunction,
    TailMode, TailQuery,
};

/// Coefficients of `(1-x) ln(1-x)`: `ln(1-x) = -ln 2 - 2 Σ T_k/k` multiplied out by `1 - x`.
fn xlogx_coeff(k: usize) -> f64 {
    match k {
        0 => 2.0 * (1.0 - LN_2),
        1 => LN_2 - 1.5,
        _ => {
            let k = k as f64;
            2.0 / (k * (k * k - 1.0))
        }
    }
}

/// Gauss-Legendre nodes and weights on `[-1, 1]` by Newton iteration.
fn gauss(m: usize) -> Vec<(f64, f64)> {
    (0..m)
        .map(|i| {
            let mut x = (PI * (i as f64 + 0.75) / (m as f64 + 0.5)).cos();
            loop {
                let (mut p0, mut p1) = (1.0, x);
                for j in 2..=m {
                    let p2 = ((2 * j - 1) as f64 * x * p1 - (j - 1) as f64 * p0) / j as f64;
                    p0 = p1;
                    p1 = p2;
                }
                let dp = m as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    let w = 2.0 / ((1.0 - x * x) * dp * dp);
                    return (x, w);
                }
            }
        })
        .collect()
}

/// `(2/π) ∫_0^π f(θ) cos(kθ) dθ` on panels graded geometrically towards both ends.
fn cosine_coeff(f: impl Fn(f64) -> f64, k: usize) -> f64 {
    let rule = gauss(24);
    let edge = PI / 8.0;
    let graded: Vec<f64> = (0..60).rev().map(|j| edge * 0.5f64.powi(j)).collect();
    let inner = 4 * k + 16;
    let mut breaks = vec![0.0];
    breaks.extend(&graded);
    breaks.extend((1..inner).map(|j| edge + (PI - 2.0 * edge) * j as f64 / inner as f64));
    breaks.extend(graded.iter().rev().map(|g| PI - g));
    breaks.push(PI);
    let mut total = 0.0;
    for w in breaks.windows(2) {
        let (a, b) = (w[0], w[1]);
        let (mid, half) = (0.5 * (a + b), 0.5 * (b - a));
        for &(x, wt) in &rule {
            let t = mid + half * x;
            total += wt * half * f(t) * (k as f64 * t).cos();
        }
    }
    2.0 / PI * total
}

#[test]
fn closed_form_coefficients() {
    let right = LogSingularFunction::right_only(1.0, 1, AnalyticFactor::one()).unwrap();
    let left = LogSingularFunction::left_only(1.0, 1, AnalyticFactor::one()).unwrap();
    let a = true_coeffs(&right, 300, 1e-16).unwrap();
    let b = true_coeffs(&left, 300, 1e-16).unwrap();
    for k in 0..=300 {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        assert!((a.coeffs()[k] - xlogx_coeff(k)).abs() < 1e-15, "k={k}");
        assert!((b.coeffs()[k] - sign * xlogx_coeff(k)).abs() < 1e-15, "k={k}");
    }
}

#[test]
fn endpoint_truncation_error_telescopes() {
    let f = LogSingularFunction::right_only(1.0, 1, AnalyticFactor::one()).unwrap();
    let c = true_coeffs(&f, 512, 1e-16).unwrap();
    for n in [10usize, 64, 200, 512] {
        let fn1 = ChebSeries::new(c.coeffs()[..=n].to_vec()).unwrap().eval(1.0).unwrap();
        let exact = 1.0 / (n as f64 * (n as f64 + 1.0));
        assert!(((0.0 - fn1) - exact).abs() < 1e-13, "n={n}: {} vs {exact}", -fn1);
    }
}

#[test]
fn asymptotic_constant_for_integer_exponent() {
    // k³ a_k → 2 for (1-x) ln(1-x)
    let f = LogSingularFunction::right_only(1.0, 1, AnalyticFactor::one()).unwrap();
    for k in [100usize, 1000, 10_000] {
        let exact = xlogx_coeff(k);
        let pred = coeff_asym_for(&f, k).unwrap();
        assert!((pred / exact - 1.0).abs() < 1.5 / (k * k) as f64, "k={k}");
    }
}

#[test]
fn graded_quadrature_agrees_with_fast_coefficients() {
    let f = LogSingularFunction::right_only(1.5, 2, AnalyticFactor::Poly(vec![1.0, 0.5])).unwrap();
    let g = |t: f64| {
        let u = 2.0 * (0.5 * t).sin().powi(2);
        if u == 0.0 {
            0.0
        } else {
            u.powf(1.5) * u.ln().powi(2) * (1.0 + 0.5 * t.cos())
        }
    };
    let c = true_coeffs(&f, 64, 1e-15).unwrap();
    for k in [0usize, 1, 2, 7, 30, 64] {
        let want = cosine_coeff(g, k);
        assert!(
            (c.coeffs()[k] - want).abs() < 1e-13,
            "k={k}: {} vs {want}",
            c.coeffs()[k]
        );
        assert!((quadrature_coeff(&f, k, 1e-13).unwrap() - want).abs() < 1e-12, "k={k}");
    }
}

#[test]
fn left_side_quadrature() {
    let f = LogSingularFunction::left_only(0.75, 1, AnalyticFactor::Exp(1.0)).unwrap();
    let g = |t: f64| {
        let u = 2.0 * (0.5 * t).cos().powi(2);
        if u == 0.0 {
            0.0
        } else {
            u.powf(0.75) * u.ln() * t.cos().exp()
        }
    };
    let c = true_coeffs(&f, 40, 1e-13).unwrap();
    for k in [0usize, 3, 17, 40] {
        assert!((c.coeffs()[k] - cosine_coeff(g, k)).abs() < 1e-12, "k={k}");
    }
    assert!((f.eval_at(0.3).unwrap() - 1.3f64.powf(0.75) * 1.3f64.ln() * 0.3f64.exp()).abs() < 1e-15);
}

#[test]
fn alternating_and_quarter_turn_tails() {
    for n in [0usize, 1, 5, 64, 257] {
        let head: f64 = (1..=n)
            .map(|k| if k % 2 == 0 { 1.0 } else { -1.0 } / (k * k) as f64)
            .sum();
        let tail = psi_tail(
            TailQuery {
                nu: 1.0,
                mu: 0,
                t: PI,
                n,
            },
            TailMode::Oracle,
        )
        .unwrap();
        assert!((tail - (-PI * PI / 12.0 - head)).abs() < 1e-14, "n={n}");

        let head: f64 = (1..=n).map(|k| ((k as f64) * PI / 2.0).cos() / (k * k) as f64).sum();
        let tail = psi_tail(
            TailQuery {
                nu: 1.0,
                mu: 0,
                t: PI / 2.0,
                n,
            },
            TailMode::Oracle,
        )
        .unwrap();
        assert!((tail - (-PI * PI / 48.0 - head)).abs() < 1e-14, "n={n}");
    }
}

#[test]
fn log_weighted_endpoint_tail() {
    // Σ ln k / k² = -ζ'(2)
    const ZETA_PRIME_2: f64 = -0.937_548_254_315_843_8;
    for n in [1usize, 10, 100, 1000] {
        let head: f64 = (1..=n).map(|k| (k as f64).ln() / (k * k) as f64).sum();
        let tail = psi_tail(
            TailQuery {
                nu: 1.0,
                mu: 1,
                t: 0.0,
                n,
            },
            TailMode::Oracle,
        )
        .unwrap();
        assert!((tail - (-ZETA_PRIME_2 - head)).abs() < 1e-13, "n={n}");
    }
}

#[test]
fn clausen_tail_at_generic_angle() {
    // Σ cos(kt)/k² = π²/6 - πt/2 + t²/4 on [0, 2π]
    let t = 1.0;
    let total = PI * PI / 6.0 - PI * t / 2.0 + t * t / 4.0;
    for n in [3usize, 50, 400] {
        let head: f64 = (1..=n).map(|k| (k as f64 * t).cos() / (k * k) as f64).sum();
        let tail = psi_tail(TailQuery { nu: 1.0, mu: 0, t, n }, TailMode::Oracle).unwrap();
        assert!((tail - (total - head)).abs() < 1e-14, "n={n}");
    }
}

#[test]
fn special_function_values() {
    let euler = 0.577_215_664_901_532_9;
    assert!((gamma_fn(0.5).unwrap() - PI.sqrt()).abs() < 1e-15);
    assert!((gamma_fn(4.5).unwrap() - 11.631_728_396_567_448).abs() < 1e-13);
    assert!((digamma(0.5).unwrap() - (-euler - 2.0 * LN_2)).abs() < 1e-14);
    assert!((digamma(10.0).unwrap() - 2.251_752_589_066_721).abs() < 1e-14);
}

#[test]
fn analytic_targets_match_their_definitions() {
    type Case = (AnalyticFactor, fn(f64) -> f64);
    let cases: Vec<Case> = vec![
        (AnalyticFactor::Exp(2.0), |x| (2.0 * x).exp()),
        (AnalyticFactor::Runge(25.0), |x| 1.0 / (1.0 + 25.0 * x * x)),
        (AnalyticFactor::Sin(3.0), |x| (3.0 * x).sin()),
    ];
    for (g, h) in cases {
        let c = true_coeffs(&g, 200, 1e-14).unwrap();
        let s = ChebSeries::new(c.into_coeffs()).unwrap();
        for x in [-1.0, -0.3, 0.0, 0.71, 1.0] {
            assert!((s.eval(x).unwrap() - h(x)).abs() < 1e-13);
            assert!((g.eval_at(x).unwrap() - h(x)).abs() < 1e-15);
        }
    }
}

#[test]
fn shifted_angle_is_the_alternating_tail() {
    let (t, n) = (0.7, 10usize);
    for nu in [1.0, 2.0] {
        for mu in [0u32, 1] {
            let mut direct = 0.0;
            for k in (n + 1..2_000_000).rev() {
                let kf = k as f64;
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                direct += sign * (kf * t).cos() * kf.ln().powi(mu as i32) / kf.powf(nu + 1.0);
            }
            let got = psi_tail(TailQuery { nu, mu, t: t + PI, n }, TailMode::Oracle).unwrap();
            assert!((got - direct).abs() < 1e-11, "nu={nu} mu={mu}: {got} vs {direct}");
        }
    }
}

#[test]
fn coefficient_prediction_improves_with_k() {
    for gamma in [0.5, 1.0, 1.5] {
        for mu in [1i64, 2] {
            let f = LogSingularFunction::right_only(gamma, mu, AnalyticFactor::one()).unwrap();
            let tol = (1e-3 * 4000f64.powf(-(2.0 * gamma + 1.0))).max(1e-16);
            let c = true_coeffs(&f, 4000, tol).unwrap();
            let ks = [500usize, 1000, 2000, 4000];
            let dev: Vec<f64> = ks
                .iter()
                .map(|&k| (c.coeffs()[k] / coeff_asym_for(&f, k).unwrap() - 1.0).abs())
                .collect();
            // below the reference's own relative accuracy a deviation cannot shrink measurably
            let floor: Vec<f64> = ks.iter().map(|&k| 10.0 * tol / c.coeffs()[k].abs()).collect();
            for i in 1..ks.len() {
                assert!(
                    dev[i] < dev[i - 1] || dev[i] < floor[i],
                    "gamma={gamma} mu={mu}: {dev:?}"
                );
            }
        }
    }
}
