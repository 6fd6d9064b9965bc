//! Gamma and digamma on the positive real axis.

use std::f64::consts::PI;

use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

fn domain(z: f64) -> Error {
    Error::Domain {
        value: z,
        reason: "gamma and digamma are defined here for z > 0",
    }
}

/// `Γ(z)` for `z > 0` (Lanczos, `g = 7`, reflection below 1/2).
pub fn gamma_fn(z: f64) -> Result<f64> {
    if !z.is_finite() || z <= 0.0 {
        return Err(domain(z));
    }
    if z == z.floor() && z <= 171.0 {
        return Ok((1..z as u64).fold(1.0, |acc, k| acc * k as f64));
    }
    Ok(lanczos(z))
}

fn lanczos(z: f64) -> f64 {
    if z < 0.5 {
        return PI / ((PI * z).sin() * lanczos(1.0 - z));
    }
    let z = z - 1.0;
    let mut x = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        x += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * t.powf(z + 0.5) * (-t).exp() * x
}

/// `ψ(z) = Γ'(z)/Γ(z)` for `z > 0`.
pub fn digamma(z: f64) -> Result<f64> {
    if !z.is_finite() || z <= 0.0 {
        return Err(domain(z));
    }
    let mut z = z;
    let mut shift = 0.0;
    while z < 8.0 {
        shift -= 1.0 / z;
        z += 1.0;
    }
    let r = 1.0 / (z * z);
    // Bernoulli tail: B_{2k} / (2k z^{2k})
    let series = r
        * (1.0 / 12.0
            - r * (1.0 / 120.0
                - r * (1.0 / 252.0 - r * (1.0 / 240.0 - r * (1.0 / 132.0 - r * (691.0 / 32760.0 - r / 12.0))))));
    Ok(shift + z.ln() - 0.5 / z - series)
}

/// `Γ'(z) = Γ(z) ψ(z)`.
pub fn gamma_derivative(z: f64) -> Result<f64> {
    Ok(gamma_fn(z)? * digamma(z)?)
}

/// `sin(πx)`, exactly zero at integers.
pub fn sin_pi(x: f64) -> f64 {
    let r = x.rem_euclid(2.0);
    if r == 0.0 || r == 1.0 {
        return 0.0;
    }
    if r == 0.5 {
        return 1.0;
    }
    if r == 1.5 {
        return -1.0;
    }
    (PI * r).sin()
}

/// `cos(πx)`, exactly zero at half-integers.
pub fn cos_pi(x: f64) -> f64 {
    sin_pi(x + 0.5)
}

#[cfg(test)]
mod tests {
    use super::*;

    const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

    #[test]
    fn classical_values() {
        assert_eq!(gamma_fn(5.0).unwrap(), 24.0);
        assert!((gamma_fn(0.5).unwrap() - PI.sqrt()).abs() < 1e-15);
        assert!((digamma(1.0).unwrap() + EULER_GAMMA).abs() < 1e-14);
        assert!((gamma_derivative(2.0).unwrap() - (1.0 - EULER_GAMMA)).abs() < 1e-14);
        assert!((digamma(0.5).unwrap() + EULER_GAMMA + 2.0 * 2f64.ln()).abs() < 1e-14);
        assert!(gamma_fn(0.0).is_err() && digamma(-1.0).is_err());
    }

    #[test]
    fn lanczos_relative_accuracy() {
        // Γ(z+1) = zΓ(z) and the duplication formula as independent checks
        for i in 1..300 {
            let z = i as f64 * 0.1 + 0.013;
            let a = gamma_fn(z + 1.0).unwrap();
            let b = z * gamma_fn(z).unwrap();
            assert!(((a - b) / a).abs() < 1e-13, "z={z}");
            let dup = gamma_fn(2.0 * z).unwrap();
            let rhs = 2f64.powf(2.0 * z - 1.0) / PI.sqrt() * gamma_fn(z).unwrap() * gamma_fn(z + 0.5).unwrap();
            assert!(((dup - rhs) / dup).abs() < 1e-13, "dup z={z}");
        }
    }

    #[test]
    fn digamma_recurrence() {
        for i in 1..200 {
            let z = i as f64 * 0.17;
            let lhs = digamma(z + 1.0).unwrap() - digamma(z).unwrap();
            assert!((lhs - 1.0 / z).abs() < 1e-13 * (1.0 / z).max(1.0));
        }
    }

    #[test]
    fn exact_trig() {
        assert_eq!(sin_pi(1.0), 0.0);
        assert_eq!(sin_pi(-3.0), 0.0);
        assert_eq!(cos_pi(0.5), 0.0);
        assert_eq!(sin_pi(1.5), -1.0);
        assert!((sin_pi(0.25) - 0.5f64.sqrt()).abs() <= f64::EPSILON);
    }
}
