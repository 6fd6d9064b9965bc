use std::f64::consts::{LN_2, PI};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::special::{cos_pi, gamma_derivative, gamma_fn, sin_pi};
use crate::error::{Error, Result};
use crate::singfun::LogSingularFunction;

/// Endpoint carrying a singular term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// `x = +1`, the `(1-x)^γ` term.
    Right,
    /// `x = -1`, the `(1+x)^δ` term.
    Left,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Right => "right",
            Side::Left => "left",
        })
    }
}

/// Constants of the two-term coefficient and error asymptotics for one endpoint.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AsymConstants {
    /// `(-1)^μ 2^{μ-e} g(±1)`
    pub c1: f64,
    /// `(2/π) sin(eπ) Γ'(2e+1) + (cos(eπ) - sin(eπ) ln2/π) Γ(2e+1)`, zero when `g(±1) = 0`.
    /// This is `-(1/2) d/de` of the leading constant; the `ln 2` term carries `sin(eπ)`.
    pub c2: f64,
    pub side: Side,
    pub exponent: f64,
    pub mu: u32,
    /// `2e + 1`
    pub kappa: f64,
}

impl AsymConstants {
    /// Coefficient of `ln^μ k / k^{2e+1}` in `|a_k|` (right-side sign).
    pub fn leading(&self) -> f64 {
        -2.0 / PI * self.c1 * sin_pi(self.exponent) * gamma_fn(2.0 * self.exponent + 1.0).unwrap_or(f64::NAN)
    }

    /// Coefficient of `ln^{μ-1} k / k^{2e+1}`.
    pub fn second(&self) -> f64 {
        self.mu as f64 * self.c1 * self.c2
    }
}

/// Evaluates the endpoint constants for exponent `e > 0` and `μ ≥ 1`.
pub fn asym_constants(side: Side, exponent: f64, mu: i64, g_value: f64) -> Result<AsymConstants> {
    if !exponent.is_finite() || exponent <= 0.0 {
        return Err(Error::UnsupportedExponent(exponent));
    }
    if mu < 1 || mu > u32::MAX as i64 {
        return Err(Error::InvalidMu(mu));
    }
    if !g_value.is_finite() {
        return Err(Error::InvalidParameters(format!("g(endpoint) = {g_value}")));
    }
    let kappa = 2.0 * exponent + 1.0;
    let (c1, c2) = if g_value == 0.0 {
        (0.0, 0.0)
    } else {
        let sign = if mu % 2 == 0 { 1.0 } else { -1.0 };
        let c1 = sign * 2f64.powf(mu as f64 - exponent) * g_value;
        let s = sin_pi(exponent);
        let dg = if s == 0.0 { 0.0 } else { gamma_derivative(kappa)? };
        let c2 = 2.0 / PI * s * dg + (cos_pi(exponent) - s * LN_2 / PI) * gamma_fn(kappa)?;
        (c1, c2)
    };
    Ok(AsymConstants {
        c1,
        c2,
        side,
        exponent,
        mu: mu as u32,
        kappa,
    })
}

/// Two-term prediction of the Chebyshev coefficient `a_k`, `k ≥ 2`.
pub fn coeff_asym(k: usize, c: &AsymConstants) -> Result<f64> {
    if k < 2 {
        return Err(Error::InvalidDegree {
            degree: k,
            reason: "coefficient asymptotics need k ≥ 2",
        });
    }
    let kf = k as f64;
    let l = kf.ln();
    let mu = c.mu as i32;
    let v = (c.leading() * l.powi(mu) + c.second() * l.powi(mu - 1)) / kf.powf(c.kappa);
    Ok(match c.side {
        Side::Left if k % 2 == 1 => -v,
        _ => v,
    })
}

/// Constants for every enabled term of `f` with a positive exponent.
pub fn constants_for(f: &LogSingularFunction) -> Result<Vec<AsymConstants>> {
    f.enabled_terms()
        .into_iter()
        .map(|(e, g, right)| {
            let side = if right { Side::Right } else { Side::Left };
            asym_constants(side, e, f.mu as i64, g)
        })
        .collect()
}

/// Sum of the per-endpoint coefficient predictions for `f`.
pub fn coeff_asym_for(f: &LogSingularFunction, k: usize) -> Result<f64> {
    constants_for(f)?.iter().map(|c| coeff_asym(k, c)).sum()
}

/// Decay envelope `ln^{ln_power} n / n^{rate}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecayOrder {
    pub rate: f64,
    pub ln_power: u32,
}

impl DecayOrder {
    pub fn envelope(&self, n: f64) -> f64 {
        n.ln().powi(self.ln_power as i32) / n.powf(self.rate)
    }

    /// The slower of two envelopes.
    pub fn slower(self, other: DecayOrder) -> DecayOrder {
        if self.rate < other.rate || (self.rate == other.rate && self.ln_power >= other.ln_power) {
            self
        } else {
            other
        }
    }
}

impl fmt::Display for DecayOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n^-{} ln^{} n", self.rate, self.ln_power)
    }
}

/// Coefficient decay order of `f`. An integer exponent kills the leading
/// `sin(eπ)` term and drops one power of the logarithm.
///
/// The order ignores cancellation from `g(±1) = 0`.
pub fn predicted_order(f: &LogSingularFunction) -> Result<DecayOrder> {
    f.enabled_terms()
        .into_iter()
        .map(|(e, _, _)| DecayOrder {
            rate: 2.0 * e + 1.0,
            ln_power: if e >= 0.0 && e == e.round() { f.mu - 1 } else { f.mu },
        })
        .reduce(DecayOrder::slower)
        .ok_or_else(|| Error::InvalidParameters("no enabled singular term".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::singfun::AnalyticFactor;

    const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

    #[test]
    fn constants_examples() {
        let c = asym_constants(Side::Right, 1.0, 1, 1.0).unwrap();
        assert_eq!(c.c1, -1.0);
        assert_eq!(c.c2, -2.0);
        assert_eq!(c.kappa, 3.0);

        let c = asym_constants(Side::Right, 0.5, 1, 1.0).unwrap();
        assert!((c.c1 + 2f64.sqrt()).abs() < 1e-15);
        assert!((c.c2 - (-LN_2 / PI + 2.0 / PI * (1.0 - EULER_GAMMA))).abs() < 1e-14);

        let c = asym_constants(Side::Left, 1.3, 2, 0.0).unwrap();
        assert_eq!((c.c1, c.c2), (0.0, 0.0));
        assert_eq!(coeff_asym(50, &c).unwrap(), 0.0);

        assert!(matches!(
            asym_constants(Side::Right, 0.0, 1, 1.0),
            Err(Error::UnsupportedExponent(_))
        ));
        assert!(matches!(
            asym_constants(Side::Right, 1.0, 0, 1.0),
            Err(Error::InvalidMu(0))
        ));
    }

    #[test]
    fn coefficient_examples() {
        let right = asym_constants(Side::Right, 1.0, 1, 1.0).unwrap();
        let a = coeff_asym(100, &right).unwrap();
        assert!((a - 2e-6).abs() < 1e-20);
        let left = AsymConstants {
            side: Side::Left,
            ..right
        };
        for k in [100usize, 101, 257] {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            assert_eq!(coeff_asym(k, &left).unwrap(), sign * coeff_asym(k, &right).unwrap());
        }
        assert!(coeff_asym(1, &right).is_err());
    }

    #[test]
    fn order_table() {
        let one = AnalyticFactor::one;
        let f = LogSingularFunction::right_only(1.0, 2, one()).unwrap();
        assert_eq!(predicted_order(&f).unwrap(), DecayOrder { rate: 3.0, ln_power: 1 });
        let f = LogSingularFunction::new(0.75, 1.5, 1, one(), one(), true, true).unwrap();
        assert_eq!(predicted_order(&f).unwrap(), DecayOrder { rate: 2.5, ln_power: 1 });
        let f = LogSingularFunction::new(1.0, 0.6, 1, one(), one(), true, true).unwrap();
        let o = predicted_order(&f).unwrap();
        assert!((o.rate - 2.2).abs() < 1e-15 && o.ln_power == 1);
        let f = LogSingularFunction::new(1.0, 1.0, 1, one(), one(), true, true).unwrap();
        assert_eq!(predicted_order(&f).unwrap(), DecayOrder { rate: 3.0, ln_power: 0 });
        assert!(predicted_order(&LogSingularFunction::zero()).is_err());
    }
}
