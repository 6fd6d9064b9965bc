use serde::{Deserialize, Serialize};

/// Least-squares slopes in log-log coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrderFit {
    pub slope: f64,
    /// Slope after dividing the values by `ln^p n`.
    pub adjusted_slope: f64,
    pub ln_power: u32,
    pub points: usize,
}

/// Slope of `ln v` against `ln n` by ordinary least squares.
pub fn fit_loglog(ns: &[f64], values: &[f64]) -> Result<f64, String> {
    if ns.len() != values.len() {
        return Err(format!("{} abscissae but {} values", ns.len(), values.len()));
    }
    if ns.len() < 2 {
        return Err("a slope needs at least two points".into());
    }
    if let Some(bad) = ns.iter().chain(values).find(|v| !v.is_finite() || **v <= 0.0) {
        return Err(format!("log-log fit needs positive finite data, got {bad}"));
    }
    let xs: Vec<f64> = ns.iter().map(|n| n.ln()).collect();
    let ys: Vec<f64> = values.iter().map(|v| v.ln()).collect();
    let m = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / m, ys.iter().sum::<f64>() / m);
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    if sxx == 0.0 {
        return Err("all abscissae coincide".into());
    }
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    Ok(sxy / sxx)
}

/// Raw and `ln^p`-adjusted slopes; needs at least four points.
pub fn fit_order(ns: &[f64], values: &[f64], ln_power: u32) -> Result<OrderFit, String> {
    if ns.len() < 4 {
        return Err(format!("order fits need at least 4 points, got {}", ns.len()));
    }
    let slope = fit_loglog(ns, values)?;
    let adjusted: Vec<f64> = ns
        .iter()
        .zip(values)
        .map(|(n, v)| v / n.ln().powi(ln_power as i32))
        .collect();
    Ok(OrderFit {
        slope,
        adjusted_slope: fit_loglog(ns, &adjusted)?,
        ln_power,
        points: ns.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ns() -> Vec<f64> {
        [16.0, 32.0, 64.0, 128.0, 256.0].to_vec()
    }

    #[test]
    fn exact_power() {
        let v: Vec<f64> = ns().iter().map(|n| n.powi(-2)).collect();
        assert!((fit_order(&ns(), &v, 0).unwrap().slope + 2.0).abs() < 1e-12);
    }

    #[test]
    fn log_adjusted() {
        let v: Vec<f64> = ns().iter().map(|n| n.ln() / (n * n)).collect();
        let fit = fit_order(&ns(), &v, 1).unwrap();
        assert!((fit.adjusted_slope + 2.0).abs() < 1e-12);
        assert!(fit.slope > -2.0);
    }

    #[test]
    fn constant_and_errors() {
        let v = vec![3.0; 5];
        assert!(fit_order(&ns(), &v, 0).unwrap().slope.abs() < 1e-15);
        assert!(fit_order(&ns()[..3], &v[..3], 0).is_err());
        assert!(fit_order(&ns(), &[1.0, 0.0, 1.0, 1.0, 1.0], 0).is_err());
    }
}
