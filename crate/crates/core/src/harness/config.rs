use std::f64::consts::PI;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::singfun::{AnalyticFactor, LogSingularFunction, Point, RealFunction};

/// Experiments the harness can run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    CoeffDecay,
    TruncError,
    InterpError,
    BestApprox,
    BestCompare,
    PsiCheck,
    BoundCheck,
}

impl ExperimentKind {
    pub fn key(&self) -> &'static str {
        match self {
            ExperimentKind::CoeffDecay => "coeff-decay",
            ExperimentKind::TruncError => "trunc-error",
            ExperimentKind::InterpError => "interp-error",
            ExperimentKind::BestApprox => "best-approx",
            ExperimentKind::BestCompare => "best-compare",
            ExperimentKind::PsiCheck => "psi-check",
            ExperimentKind::BoundCheck => "bound-check",
        }
    }
}

impl fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

/// Target of an experiment: a singular function or an analytic one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TargetSpec {
    Analytic { analytic: AnalyticFactor },
    Singular(LogSingularFunction),
}

impl TargetSpec {
    pub fn function(&self) -> &dyn RealFunction {
        match self {
            TargetSpec::Analytic { analytic } => analytic,
            TargetSpec::Singular(f) => f,
        }
    }

    pub fn singular(&self) -> Option<&LogSingularFunction> {
        match self {
            TargetSpec::Singular(f) => Some(f),
            TargetSpec::Analytic { .. } => None,
        }
    }

    pub fn validate(&self) -> Result<(), String> {
        match self {
            TargetSpec::Analytic { analytic } => analytic.validate().map_err(|e| e.to_string()),
            TargetSpec::Singular(f) => LogSingularFunction::new(
                f.gamma,
                f.delta,
                f.mu as i64,
                f.g1.clone(),
                f.g2.clone(),
                f.right,
                f.left,
            )
            .map(|_| ())
            .map_err(|e| e.to_string()),
        }
    }
}

/// Evaluation points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GridSpec {
    /// `count` equispaced points including `±1`.
    Uniform(usize),
    /// `count` second-kind Chebyshev points (denser near `±1`).
    Chebyshev(usize),
    Points(Vec<f64>),
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec::Points(vec![-1.0, 0.0, 1.0])
    }
}

impl GridSpec {
    pub fn validate(&self) -> Result<(), String> {
        match self {
            GridSpec::Uniform(c) | GridSpec::Chebyshev(c) if *c < 2 => {
                Err(format!("grid needs at least 2 points, got {c}"))
            }
            GridSpec::Points(p) if p.is_empty() => Err("grid point list is empty".into()),
            GridSpec::Points(p) => match p.iter().find(|x| !(-1.0..=1.0).contains(*x)) {
                Some(x) => Err(format!("grid point {x} outside [-1, 1]")),
                None => Ok(()),
            },
            _ => Ok(()),
        }
    }

    /// Points in increasing `x`, built so that `1 ∓ x` is exact near the endpoints.
    pub fn points(&self) -> Vec<Point> {
        match self {
            GridSpec::Uniform(c) => {
                let m = c - 1;
                (0..=m)
                    .map(|j| {
                        if j == 0 {
                            Point::from_x(-1.0)
                        } else if j == m {
                            Point::from_x(1.0)
                        } else {
                            Point::from_x(-1.0 + 2.0 * j as f64 / m as f64)
                        }
                    })
                    .collect()
            }
            GridSpec::Chebyshev(c) => {
                let m = c - 1;
                (0..=m).map(|j| Point::from_angle_fraction(m - j, m)).collect()
            }
            GridSpec::Points(p) => {
                let mut v = p.clone();
                v.sort_by(f64::total_cmp);
                v.dedup();
                v.into_iter().map(Point::from_x).collect()
            }
        }
    }
}

impl FromStr for GridSpec {
    type Err = String;

    /// `uniform:N`, `cheb:N`, or a comma-separated point list (optionally prefixed `points:`).
    fn from_str(s: &str) -> Result<Self, String> {
        let count = |body: &str| {
            body.trim()
                .parse::<usize>()
                .map_err(|e| format!("bad grid count '{body}': {e}"))
        };
        let spec = if let Some(body) = s.strip_prefix("uniform:") {
            GridSpec::Uniform(count(body)?)
        } else if let Some(body) = s.strip_prefix("cheb:").or_else(|| s.strip_prefix("chebyshev:")) {
            GridSpec::Chebyshev(count(body)?)
        } else {
            let body = s.strip_prefix("points:").unwrap_or(s);
            GridSpec::Points(parse_reals(body)?)
        };
        spec.validate()?;
        Ok(spec)
    }
}

fn parse_reals(s: &str) -> Result<Vec<f64>, String> {
    s.split(',')
        .map(|p| {
            let p = p.trim();
            match p {
                "pi" => Ok(PI),
                "pi/2" => Ok(0.5 * PI),
                _ => p.parse::<f64>().map_err(|e| format!("bad number '{p}': {e}")),
            }
        })
        .collect()
}

/// Parses `a,b,c`, `lo:hi` (every integer), `lo:hi:step` or `lo:hi:xF` (geometric).
pub fn parse_degrees(s: &str) -> Result<Vec<usize>, String> {
    let int = |p: &str| p.trim().parse::<usize>().map_err(|e| format!("bad degree '{p}': {e}"));
    let parts: Vec<&str> = s.split(':').collect();
    let v = match parts.as_slice() {
        [list] => list.split(',').map(int).collect::<Result<Vec<_>, _>>()?,
        [lo, hi] => (int(lo)?..=int(hi)?).collect(),
        [lo, hi, step] => {
            let (lo, hi) = (int(lo)?, int(hi)?);
            if let Some(f) = step.trim().strip_prefix('x') {
                let f = int(f)?;
                if f < 2 || lo == 0 {
                    return Err(format!("geometric range '{s}' needs factor ≥ 2 and a positive start"));
                }
                std::iter::successors(Some(lo), |&k| Some(k * f))
                    .take_while(|&k| k <= hi)
                    .collect()
            } else {
                let st = int(step)?;
                if st == 0 {
                    return Err("range step must be positive".into());
                }
                (lo..=hi).step_by(st).collect()
            }
        }
        _ => return Err(format!("bad degree range '{s}'")),
    };
    Ok(v)
}

/// Parameters of the tail-series check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PsiSpec {
    /// Tail exponents `ν`; empty means `2γ` of the target.
    #[serde(default)]
    pub nu: Vec<f64>,
    /// Logarithm powers; empty means the target's `μ`.
    #[serde(default)]
    pub mu: Vec<u32>,
    pub angles: Vec<f64>,
}

impl Default for PsiSpec {
    fn default() -> Self {
        PsiSpec {
            nu: Vec::new(),
            mu: Vec::new(),
            angles: vec![1.0, 0.5 * PI, PI],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            _ => Err(format!("unknown format '{s}' (expected csv or json)")),
        }
    }
}

fn default_tol() -> f64 {
    1e-14
}

/// Everything needed to run one experiment; mirrors the CLI flags.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub experiment: ExperimentKind,
    pub function: TargetSpec,
    /// Degrees `n` (coefficient indices `k` for `coeff-decay`).
    pub degrees: Vec<usize>,
    #[serde(default)]
    pub grid: GridSpec,
    /// Absolute accuracy of the reference coefficients.
    #[serde(default = "default_tol")]
    pub tol: f64,
    #[serde(default)]
    pub psi: PsiSpec,
    #[serde(default)]
    pub out: Option<PathBuf>,
    #[serde(default)]
    pub format: OutputFormat,
}

impl ExperimentConfig {
    pub fn new(experiment: ExperimentKind, function: TargetSpec, degrees: Vec<usize>) -> Self {
        ExperimentConfig {
            experiment,
            function,
            degrees,
            grid: GridSpec::default(),
            tol: default_tol(),
            psi: PsiSpec::default(),
            out: None,
            format: OutputFormat::Csv,
        }
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.degrees.is_empty() {
            return Err("degree list is empty".into());
        }
        if self.degrees.windows(2).any(|w| w[0] >= w[1]) {
            return Err("degree list must be strictly increasing".into());
        }
        if self.tol.is_nan() || self.tol <= 0.0 {
            return Err(format!("tolerance must be positive, got {}", self.tol));
        }
        self.grid.validate()?;
        self.function.validate()?;
        let single = self.function.singular();
        match self.experiment {
            ExperimentKind::CoeffDecay | ExperimentKind::TruncError if !self.function.function().is_bounded() => {
                Err("reference coefficients need a bounded target".into())
            }
            ExperimentKind::PsiCheck => {
                if self.psi.angles.is_empty() {
                    return Err("psi-check needs at least one angle".into());
                }
                if self.psi.nu.is_empty() && single.is_none_or(|f| !f.right || f.gamma <= 0.0) {
                    return Err("psi-check needs ν values or a right-singular target with γ > 0".into());
                }
                if let Some(nu) = self.psi.nu.iter().find(|v| v.is_nan() || **v <= 0.0) {
                    return Err(format!("tail exponent ν must be positive, got {nu}"));
                }
                Ok(())
            }
            ExperimentKind::BestApprox | ExperimentKind::BestCompare | ExperimentKind::BoundCheck
                if !self.function.function().is_bounded() =>
            {
                Err("best approximation needs a bounded target".into())
            }
            _ => Ok(()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_syntax() {
        assert_eq!(parse_degrees("4,8,16").unwrap(), vec![4, 8, 16]);
        assert_eq!(parse_degrees("3:6").unwrap(), vec![3, 4, 5, 6]);
        assert_eq!(parse_degrees("10:40:10").unwrap(), vec![10, 20, 30, 40]);
        assert_eq!(parse_degrees("64:1024:x2").unwrap(), vec![64, 128, 256, 512, 1024]);
        assert!(parse_degrees("1:2:x1").is_err());
        assert!(parse_degrees("a").is_err());
    }

    #[test]
    fn grid_syntax() {
        assert_eq!("uniform:5".parse::<GridSpec>().unwrap(), GridSpec::Uniform(5));
        assert_eq!("cheb:9".parse::<GridSpec>().unwrap(), GridSpec::Chebyshev(9));
        assert_eq!(
            "-1,0,1".parse::<GridSpec>().unwrap(),
            GridSpec::Points(vec![-1.0, 0.0, 1.0])
        );
        assert!("uniform:1".parse::<GridSpec>().is_err());
        assert!("0,2".parse::<GridSpec>().is_err());
        let p = GridSpec::Uniform(5).points();
        assert_eq!(
            p.iter().map(|p| p.x).collect::<Vec<_>>(),
            vec![-1.0, -0.5, 0.0, 0.5, 1.0]
        );
        let c = GridSpec::Chebyshev(3).points();
        assert_eq!((c[0].x, c[2].x, c[2].one_minus), (-1.0, 1.0, 0.0));
    }

    #[test]
    fn config_json() {
        let text = r#"{
            "experiment": "trunc-error",
            "function": {"gamma": 1.0, "delta": 0.0, "mu": 1, "g1": {"constant": 1.0}, "g2": {"constant": 0.0}, "right": true, "left": false},
            "degrees": [8, 16],
            "grid": {"uniform": 11}
        }"#;
        let c: ExperimentConfig = serde_json::from_str(text).unwrap();
        assert!(c.function.singular().is_some());
        assert_eq!(c.tol, 1e-14);
        c.validate().unwrap();

        let text = r#"{"experiment": "best-approx", "function": {"analytic": {"exp": 1.0}}, "degrees": [4]}"#;
        let c: ExperimentConfig = serde_json::from_str(text).unwrap();
        assert!(c.function.singular().is_none());
        c.validate().unwrap();

        let mut bad = c.clone();
        bad.degrees = vec![8, 4];
        assert!(bad.validate().is_err());
    }
}
