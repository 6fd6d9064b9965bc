//! The function family with logarithmic endpoint singularities and the
//! analytic factors it is built from.
//!
//! Every evaluation goes through [`Point`], which carries `1 - x` and `1 + x`
//! alongside `x` itself. Near the endpoints those two quantities are formed
//! from half-angle sines (`1 - cos t = 2 sin²(t/2)`) so the singular factor
//! keeps full relative accuracy.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cheb::clenshaw_raw;
use crate::error::{Error, Result};

/// Below this distance from an endpoint the singular term is replaced by its limit.
pub const ENDPOINT_CUTOFF: f64 = 1e-300;

/// A point of `[-1, 1]` together with accurately formed distances to both endpoints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    /// `1 - x`
    pub one_minus: f64,
    /// `1 + x`
    pub one_plus: f64,
}

impl Point {
    pub fn from_x(x: f64) -> Self {
        Point {
            x,
            one_minus: 1.0 - x,
            one_plus: 1.0 + x,
        }
    }

    /// The point `x = cos t`.
    pub fn from_theta(t: f64) -> Self {
        let (s, c) = (0.5 * t).sin_cos();
        Point {
            x: t.cos(),
            one_minus: 2.0 * s * s,
            one_plus: 2.0 * c * c,
        }
    }

    /// The point `x = cos(π - s) = -cos s`, accurate when `s` is tiny.
    pub fn from_theta_complement(s: f64) -> Self {
        let (sh, ch) = (0.5 * s).sin_cos();
        Point {
            x: -s.cos(),
            one_minus: 2.0 * ch * ch,
            one_plus: 2.0 * sh * sh,
        }
    }

    /// The point at angle `π·p/q` (`0 ≤ p ≤ q`), formed from whichever
    /// endpoint is closer so that both grid ends are treated symmetrically.
    pub fn from_angle_fraction(p: usize, q: usize) -> Self {
        debug_assert!(q > 0 && p <= q);
        if 2 * p == q {
            Point {
                x: 0.0,
                one_minus: 1.0,
                one_plus: 1.0,
            }
        } else if 2 * p < q {
            Point::from_theta(PI * p as f64 / q as f64)
        } else {
            Point::from_theta_complement(PI * (q - p) as f64 / q as f64)
        }
    }
}

/// Asymptotic decay class of the Chebyshev coefficients of a function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CoeffDecay {
    /// `|a_k| ≲ ln^p(k) / k^rate`
    Algebraic { rate: f64, ln_power: u32 },
    /// Faster than any power (analytic on a neighbourhood of `[-1, 1]`).
    Geometric,
    /// Identically zero.
    Zero,
}

/// A real function on `[-1, 1]` that the approximation routines can sample.
pub trait RealFunction: Send + Sync {
    fn eval_point(&self, p: Point) -> Result<f64>;

    /// Whether `f` is bounded on the closed interval.
    fn is_bounded(&self) -> bool;

    fn decay(&self) -> CoeffDecay;

    fn eval_at(&self, x: f64) -> Result<f64> {
        if !(-1.0..=1.0).contains(&x) {
            return Err(Error::Domain {
                value: x,
                reason: "x must lie in [-1, 1]",
            });
        }
        self.eval_point(Point::from_x(x))
    }

    /// `f(cos t)` for `t ∈ [0, π]`.
    fn eval_theta(&self, t: f64) -> Result<f64> {
        if !(0.0..=PI).contains(&t) {
            return Err(Error::Domain {
                value: t,
                reason: "t must lie in [0, π]",
            });
        }
        self.eval_point(Point::from_theta(t))
    }
}

/// Analytic factors `g₁`, `g₂` (and standalone analytic targets).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AnalyticFactor {
    Constant(f64),
    /// Monomial coefficients, lowest degree first.
    Poly(Vec<f64>),
    /// Chebyshev coefficients in the primed convention.
    Cheb(Vec<f64>),
    /// `sin(a x)`
    Sin(f64),
    /// `cos(a x)`
    Cos(f64),
    /// `exp(a x)`
    Exp(f64),
    /// `1 / (1 + a x²)`, `a ≥ 0`
    Runge(f64),
    /// `ln(shift + slope·x)` with `shift > |slope|`
    Log {
        shift: f64,
        slope: f64,
    },
    Product(Vec<AnalyticFactor>),
}

impl AnalyticFactor {
    pub fn one() -> Self {
        AnalyticFactor::Constant(1.0)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameters(msg));
        match self {
            AnalyticFactor::Constant(c) | AnalyticFactor::Sin(c) | AnalyticFactor::Cos(c) | AnalyticFactor::Exp(c) => {
                if !c.is_finite() {
                    return bad(format!("non-finite parameter in {self}"));
                }
            }
            AnalyticFactor::Poly(c) | AnalyticFactor::Cheb(c) => {
                if c.is_empty() || c.iter().any(|v| !v.is_finite()) {
                    return bad("coefficient list must be nonempty and finite".into());
                }
            }
            AnalyticFactor::Runge(a) => {
                if !(a.is_finite() && *a >= 0.0) {
                    return bad(format!("Runge parameter must be finite and ≥ 0, got {a}"));
                }
            }
            AnalyticFactor::Log { shift, slope } => {
                if !(shift.is_finite() && slope.is_finite() && *shift > slope.abs()) {
                    return bad(format!("ln({shift} + {slope}x) is not analytic on [-1, 1]"));
                }
            }
            AnalyticFactor::Product(fs) => {
                if fs.is_empty() {
                    return bad("empty product".into());
                }
                for f in fs {
                    f.validate()?;
                }
            }
        }
        Ok(())
    }

    pub fn value(&self, x: f64) -> f64 {
        match self {
            AnalyticFactor::Constant(c) => *c,
            AnalyticFactor::Poly(c) => c.iter().rev().fold(0.0, |acc, &ck| acc * x + ck),
            AnalyticFactor::Cheb(c) => clenshaw_raw(c, x.clamp(-1.0, 1.0)),
            AnalyticFactor::Sin(a) => (a * x).sin(),
            AnalyticFactor::Cos(a) => (a * x).cos(),
            AnalyticFactor::Exp(a) => (a * x).exp(),
            AnalyticFactor::Runge(a) => 1.0 / (1.0 + a * x * x),
            AnalyticFactor::Log { shift, slope } => (shift + slope * x).ln(),
            AnalyticFactor::Product(fs) => fs.iter().map(|f| f.value(x)).product(),
        }
    }

    /// The factor `x ↦ g(-x)`.
    pub fn reflected(&self) -> Self {
        match self {
            AnalyticFactor::Constant(c) => AnalyticFactor::Constant(*c),
            AnalyticFactor::Poly(c) => AnalyticFactor::Poly(alternate_signs(c)),
            AnalyticFactor::Cheb(c) => AnalyticFactor::Cheb(alternate_signs(c)),
            AnalyticFactor::Sin(a) => AnalyticFactor::Sin(-a),
            AnalyticFactor::Cos(a) => AnalyticFactor::Cos(*a),
            AnalyticFactor::Exp(a) => AnalyticFactor::Exp(-a),
            AnalyticFactor::Runge(a) => AnalyticFactor::Runge(*a),
            AnalyticFactor::Log { shift, slope } => AnalyticFactor::Log {
                shift: *shift,
                slope: -slope,
            },
            AnalyticFactor::Product(fs) => AnalyticFactor::Product(fs.iter().map(Self::reflected).collect()),
        }
    }

    /// True when the factor is the zero polynomial or zero constant.
    pub fn is_identically_zero(&self) -> bool {
        match self {
            AnalyticFactor::Constant(c) => *c == 0.0,
            AnalyticFactor::Poly(c) | AnalyticFactor::Cheb(c) => c.iter().all(|&v| v == 0.0),
            AnalyticFactor::Product(fs) => fs.iter().any(Self::is_identically_zero),
            _ => false,
        }
    }
}

fn alternate_signs(c: &[f64]) -> Vec<f64> {
    c.iter()
        .enumerate()
        .map(|(k, &v)| if k % 2 == 1 { -v } else { v })
        .collect()
}

impl RealFunction for AnalyticFactor {
    fn eval_point(&self, p: Point) -> Result<f64> {
        Ok(self.value(p.x))
    }

    fn is_bounded(&self) -> bool {
        true
    }

    fn decay(&self) -> CoeffDecay {
        if self.is_identically_zero() {
            CoeffDecay::Zero
        } else {
            CoeffDecay::Geometric
        }
    }
}

impl fmt::Display for AnalyticFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[f64]| v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",");
        match self {
            AnalyticFactor::Constant(c) => write!(f, "const:{c}"),
            AnalyticFactor::Poly(c) => write!(f, "{}", list(c)),
            AnalyticFactor::Cheb(c) => write!(f, "cheb:{}", list(c)),
            AnalyticFactor::Sin(a) => write!(f, "sin:{a}"),
            AnalyticFactor::Cos(a) => write!(f, "cos:{a}"),
            AnalyticFactor::Exp(a) => write!(f, "exp:{a}"),
            AnalyticFactor::Runge(a) => write!(f, "runge:{a}"),
            AnalyticFactor::Log { shift, slope } => write!(f, "log:{shift},{slope}"),
            AnalyticFactor::Product(fs) => {
                let parts: Vec<String> = fs.iter().map(|g| g.to_string()).collect();
                write!(f, "{}", parts.join("*"))
            }
        }
    }
}

impl FromStr for AnalyticFactor {
    type Err = Error;

    /// Parses `1,0.5` (monomial coefficients), `cheb:0,1`, `const:2`,
    /// `sin:10`, `cos:1`, `exp:1`, `runge:25`, `log:1.1,-1`, and products
    /// of those joined with `*`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.contains('*') {
            let parts = s.split('*').map(str::parse).collect::<Result<Vec<_>>>()?;
            let g = AnalyticFactor::Product(parts);
            g.validate()?;
            return Ok(g);
        }
        let nums = |body: &str| -> Result<Vec<f64>> {
            body.split(',')
                .map(|v| {
                    v.trim()
                        .parse::<f64>()
                        .map_err(|_| Error::InvalidParameters(format!("bad number '{v}' in '{s}'")))
                })
                .collect()
        };
        let one = |body: &str| -> Result<f64> {
            match nums(body)?.as_slice() {
                [a] => Ok(*a),
                _ => Err(Error::InvalidParameters(format!("'{s}' takes exactly one parameter"))),
            }
        };
        let g = match s.split_once(':') {
            None => AnalyticFactor::Poly(nums(s)?),
            Some((name, body)) => match name.trim() {
                "const" | "constant" => AnalyticFactor::Constant(one(body)?),
                "poly" => AnalyticFactor::Poly(nums(body)?),
                "cheb" => AnalyticFactor::Cheb(nums(body)?),
                "sin" => AnalyticFactor::Sin(one(body)?),
                "cos" => AnalyticFactor::Cos(one(body)?),
                "exp" => AnalyticFactor::Exp(one(body)?),
                "runge" => AnalyticFactor::Runge(one(body)?),
                "log" => match nums(body)?.as_slice() {
                    [shift] => AnalyticFactor::Log {
                        shift: *shift,
                        slope: -1.0,
                    },
                    [shift, slope] => AnalyticFactor::Log {
                        shift: *shift,
                        slope: *slope,
                    },
                    _ => return Err(Error::InvalidParameters(format!("bad log factor '{s}'"))),
                },
                other => return Err(Error::InvalidParameters(format!("unknown factor '{other}'"))),
            },
        };
        g.validate()?;
        Ok(g)
    }
}

/// `f(x) = (1-x)^γ ln^μ(1-x) g₁(x) + (1+x)^δ ln^μ(1+x) g₂(x)`, either term optional.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LogSingularFunction {
    pub gamma: f64,
    pub delta: f64,
    pub mu: u32,
    pub g1: AnalyticFactor,
    pub g2: AnalyticFactor,
    /// The `(1-x)` term (singular at `x = 1`) is present.
    pub right: bool,
    /// The `(1+x)` term (singular at `x = -1`) is present.
    pub left: bool,
}

impl LogSingularFunction {
    /// Validating constructor. Exponents of disabled terms are not checked.
    pub fn new(
        gamma: f64,
        delta: f64,
        mu: i64,
        g1: AnalyticFactor,
        g2: AnalyticFactor,
        right: bool,
        left: bool,
    ) -> Result<Self> {
        for (enabled, e) in [(right, gamma), (left, delta)] {
            if enabled && !(e.is_finite() && e > -0.5) {
                return Err(Error::InvalidExponent(e));
            }
        }
        if mu < 1 || mu > u32::MAX as i64 {
            return Err(Error::InvalidMu(mu));
        }
        g1.validate()?;
        g2.validate()?;
        Ok(LogSingularFunction {
            gamma,
            delta,
            mu: mu as u32,
            g1,
            g2,
            right,
            left,
        })
    }

    /// `(1-x)^γ ln^μ(1-x) g(x)`
    pub fn right_only(gamma: f64, mu: i64, g: AnalyticFactor) -> Result<Self> {
        Self::new(gamma, 0.0, mu, g, AnalyticFactor::Constant(0.0), true, false)
    }

    /// `(1+x)^δ ln^μ(1+x) g(x)`
    pub fn left_only(delta: f64, mu: i64, g: AnalyticFactor) -> Result<Self> {
        Self::new(0.0, delta, mu, AnalyticFactor::Constant(0.0), g, false, true)
    }

    /// Both terms disabled: the zero function.
    pub fn zero() -> Self {
        LogSingularFunction {
            gamma: 1.0,
            delta: 1.0,
            mu: 1,
            g1: AnalyticFactor::Constant(0.0),
            g2: AnalyticFactor::Constant(0.0),
            right: false,
            left: false,
        }
    }

    /// Bounded iff every enabled exponent is positive.
    pub fn bounded(&self) -> bool {
        (!self.right || self.gamma > 0.0) && (!self.left || self.delta > 0.0)
    }

    /// The function `x ↦ f(-x)`.
    pub fn mirrored(&self) -> Self {
        LogSingularFunction {
            gamma: self.delta,
            delta: self.gamma,
            mu: self.mu,
            g1: self.g2.reflected(),
            g2: self.g1.reflected(),
            right: self.left,
            left: self.right,
        }
    }

    /// Enabled singular terms as `(exponent, g(endpoint), side is x = +1)`.
    pub fn enabled_terms(&self) -> Vec<(f64, f64, bool)> {
        let mut out = Vec::with_capacity(2);
        if self.right {
            out.push((self.gamma, self.g1.value(1.0), true));
        }
        if self.left {
            out.push((self.delta, self.g2.value(-1.0), false));
        }
        out
    }

    /// `κ = min(2γ+1, 2δ+1)` over the enabled terms.
    pub fn kappa(&self) -> Option<f64> {
        self.enabled_terms()
            .iter()
            .map(|&(e, _, _)| 2.0 * e + 1.0)
            .reduce(f64::min)
    }

    fn term(&self, u: f64, exponent: f64, g: &AnalyticFactor, x: f64, endpoint: f64) -> Result<f64> {
        if u < ENDPOINT_CUTOFF {
            return if exponent > 0.0 {
                Ok(0.0)
            } else {
                Err(Error::UnboundedAtEndpoint(endpoint))
            };
        }
        let gx = g.value(x);
        if gx == 0.0 {
            return Ok(0.0);
        }
        Ok(u.powf(exponent) * u.ln().powi(self.mu as i32) * gx)
    }
}

impl RealFunction for LogSingularFunction {
    fn eval_point(&self, p: Point) -> Result<f64> {
        let mut v = 0.0;
        if self.right {
            v += self.term(p.one_minus, self.gamma, &self.g1, p.x, 1.0)?;
        }
        if self.left {
            v += self.term(p.one_plus, self.delta, &self.g2, p.x, -1.0)?;
        }
        Ok(v)
    }

    fn is_bounded(&self) -> bool {
        self.bounded()
    }

    fn decay(&self) -> CoeffDecay {
        match self.kappa() {
            None => CoeffDecay::Zero,
            Some(rate) => CoeffDecay::Algebraic {
                rate,
                ln_power: self.mu,
            },
        }
    }
}

/// Adapter turning a plain closure into a bounded, analytic [`RealFunction`].
pub struct FnTarget<F>(pub F);

impl<F: Fn(f64) -> f64 + Send + Sync> RealFunction for FnTarget<F> {
    fn eval_point(&self, p: Point) -> Result<f64> {
        Ok((self.0)(p.x))
    }

    fn is_bounded(&self) -> bool {
        true
    }

    fn decay(&self) -> CoeffDecay {
        CoeffDecay::Geometric
    }
}
