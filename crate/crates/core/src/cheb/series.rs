use crate::error::{Error, Result};

/// A finite Chebyshev expansion `c₀/2 + Σ_{k=1}^{N} c_k T_k(x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChebSeries {
    coeffs: Vec<f64>,
}

impl ChebSeries {
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidParameters(
                "a series needs at least one coefficient".into(),
            ));
        }
        if let Some(bad) = coeffs.iter().find(|c| !c.is_finite()) {
            return Err(Error::InvalidParameters(format!("non-finite coefficient {bad}")));
        }
        Ok(ChebSeries { coeffs })
    }

    /// Wraps coefficients already known to be finite and nonempty.
    pub(crate) fn from_vec_unchecked(coeffs: Vec<f64>) -> Self {
        debug_assert!(!coeffs.is_empty());
        ChebSeries { coeffs }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<f64> {
        self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        clenshaw_eval(self, x)
    }

    /// The first `n + 1` coefficients (the degree-`n` truncation).
    pub fn truncated(&self, n: usize) -> ChebSeries {
        let end = (n + 1).min(self.coeffs.len());
        ChebSeries::from_vec_unchecked(self.coeffs[..end].to_vec())
    }

    /// Value at `x = 1`: `c₀/2 + Σ c_k`.
    pub fn value_at_one(&self) -> f64 {
        self.coeffs[0] / 2.0 + self.coeffs[1..].iter().sum::<f64>()
    }

    /// Value at `x = -1`: `c₀/2 + Σ (-1)^k c_k`.
    pub fn value_at_minus_one(&self) -> f64 {
        self.coeffs[0] / 2.0
            + self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 0 { -c } else { *c })
                .sum::<f64>()
    }
}

/// Clenshaw evaluation of a series in the primed convention.
pub fn clenshaw_eval(s: &ChebSeries, x: f64) -> Result<f64> {
    if !(-1.0..=1.0).contains(&x) {
        return Err(Error::Domain {
            value: x,
            reason: "Chebyshev series are evaluated on [-1, 1]",
        });
    }
    Ok(clenshaw_raw(&s.coeffs, x))
}

pub(crate) fn clenshaw_raw(c: &[f64], x: f64) -> f64 {
    let (mut b1, mut b2) = (0.0, 0.0);
    let two_x = 2.0 * x;
    for &ck in c.iter().skip(1).rev() {
        let b0 = ck + two_x * b1 - b2;
        b2 = b1;
        b1 = b0;
    }
    c.first().map_or(0.0, |c0| 0.5 * c0) + x * b1 - b2
}
