use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::singfun::Point;

/// Chebyshev point family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GridKind {
    /// Roots of `T_{n+1}`: angles `(2j+1)π/(2n+2)`.
    First,
    /// Extrema of `T_n`: angles `jπ/n`, endpoints included.
    Second,
}

impl fmt::Display for GridKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GridKind::First => write!(f, "first"),
            GridKind::Second => write!(f, "second"),
        }
    }
}

impl FromStr for GridKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "first" | "1" | "I" => Ok(GridKind::First),
            "second" | "2" | "II" => Ok(GridKind::Second),
            _ => Err(Error::InvalidParameters(format!("unknown grid kind '{s}'"))),
        }
    }
}

/// `n + 1` Chebyshev points with their angles. Angles increase, nodes decrease.
#[derive(Debug, Clone, PartialEq)]
pub struct ChebGrid {
    pub kind: GridKind,
    pub n: usize,
    pub nodes: Vec<f64>,
    pub angles: Vec<f64>,
}

impl ChebGrid {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Angle of node `j` as the exact fraction `π·p/q`.
    pub fn angle_fraction(&self, j: usize) -> (usize, usize) {
        match self.kind {
            GridKind::First => (2 * j + 1, 2 * self.n + 2),
            GridKind::Second => (j, self.n),
        }
    }

    /// Node `j` as an endpoint-accurate [`Point`].
    pub fn point(&self, j: usize) -> Point {
        let (p, q) = self.angle_fraction(j);
        Point::from_angle_fraction(p, q)
    }
}

/// Chebyshev points of the given kind and degree.
pub fn chebyshev_nodes(kind: GridKind, n: usize) -> Result<ChebGrid> {
    let angles: Vec<f64> = match kind {
        GridKind::First => {
            let den = (2 * n + 2) as f64;
            (0..=n).map(|j| PI * (2 * j + 1) as f64 / den).collect()
        }
        GridKind::Second => {
            if n == 0 {
                return Err(Error::InvalidDegree {
                    degree: n,
                    reason: "second-kind grids need n ≥ 1",
                });
            }
            (0..=n).map(|j| PI * j as f64 / n as f64).collect()
        }
    };
    let nodes = angles.iter().map(|t| t.cos()).collect();
    Ok(ChebGrid { kind, n, nodes, angles })
}
