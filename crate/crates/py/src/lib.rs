//! Python bindings for `logcheb`.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use logcheb::harness::{run_experiment as run, write_csv, ExperimentConfig};
use logcheb::{
    AnalyticFactor, ChebSeries, Error, GridKind, LogSingularFunction, RealFunction, RemezOptions, TailMode, TailQuery,
};

fn py_err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn kind(s: &str) -> PyResult<GridKind> {
    s.parse().map_err(py_err)
}

fn series(coeffs: Vec<f64>) -> PyResult<ChebSeries> {
    ChebSeries::new(coeffs).map_err(py_err)
}

/// `(1-x)^gamma ln^mu(1-x) g1(x) + (1+x)^delta ln^mu(1+x) g2(x)`; pass `None`
/// for an exponent to drop that term.
#[pyclass(name = "LogSingularFunction", frozen)]
struct PySingular {
    inner: LogSingularFunction,
}

#[pymethods]
impl PySingular {
    #[new]
    #[pyo3(signature = (gamma=None, delta=None, mu=1, g1="1", g2="1"))]
    fn new(gamma: Option<f64>, delta: Option<f64>, mu: i64, g1: &str, g2: &str) -> PyResult<Self> {
        let g1: AnalyticFactor = g1.parse().map_err(py_err)?;
        let g2: AnalyticFactor = g2.parse().map_err(py_err)?;
        let inner = LogSingularFunction::new(
            gamma.unwrap_or(0.0),
            delta.unwrap_or(0.0),
            mu,
            g1,
            g2,
            gamma.is_some(),
            delta.is_some(),
        )
        .map_err(py_err)?;
        Ok(PySingular { inner })
    }

    fn __call__(&self, x: f64) -> PyResult<f64> {
        self.inner.eval_at(x).map_err(py_err)
    }

    fn eval_theta(&self, t: f64) -> PyResult<f64> {
        self.inner.eval_theta(t).map_err(py_err)
    }

    #[getter]
    fn bounded(&self) -> bool {
        self.inner.bounded()
    }

    #[getter]
    fn kappa(&self) -> Option<f64> {
        self.inner.kappa()
    }

    /// `(rate, ln_power)` of the coefficient decay.
    fn predicted_order(&self) -> PyResult<(f64, u32)> {
        let o = logcheb::predicted_order(&self.inner).map_err(py_err)?;
        Ok((o.rate, o.ln_power))
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner).map_err(|e| PyValueError::new_err(e.to_string()))
    }

    fn __repr__(&self) -> String {
        let f = &self.inner;
        format!(
            "LogSingularFunction(gamma={}, delta={}, mu={}, g1='{}', g2='{}')",
            if f.right { f.gamma.to_string() } else { "None".into() },
            if f.left { f.delta.to_string() } else { "None".into() },
            f.mu,
            f.g1,
            f.g2
        )
    }
}

/// Analytic target such as `"exp:1"`, `"runge:25"` or `"1,0,2"` (monomial coefficients).
#[pyclass(name = "AnalyticFunction", frozen)]
struct PyAnalytic {
    inner: AnalyticFactor,
}

#[pymethods]
impl PyAnalytic {
    #[new]
    fn new(spec: &str) -> PyResult<Self> {
        Ok(PyAnalytic {
            inner: spec.parse().map_err(py_err)?,
        })
    }

    fn __call__(&self, x: f64) -> PyResult<f64> {
        self.inner.eval_at(x).map_err(py_err)
    }

    fn __repr__(&self) -> String {
        format!("AnalyticFunction('{}')", self.inner)
    }
}

#[derive(FromPyObject)]
enum Target<'py> {
    Singular(PyRef<'py, PySingular>),
    Analytic(PyRef<'py, PyAnalytic>),
}

impl Target<'_> {
    fn function(&self) -> &dyn RealFunction {
        match self {
            Target::Singular(f) => &f.inner,
            Target::Analytic(f) => &f.inner,
        }
    }

    fn singular(&self) -> PyResult<&LogSingularFunction> {
        match self {
            Target::Singular(f) => Ok(&f.inner),
            Target::Analytic(_) => Err(PyValueError::new_err("asymptotics need a LogSingularFunction")),
        }
    }
}

/// Result of the Remez exchange.
#[pyclass(name = "BestApprox", frozen, get_all)]
struct PyBestApprox {
    coeffs: Vec<f64>,
    levelled_error: f64,
    reference: Vec<f64>,
    iterations: usize,
    achieved_sup: f64,
}

#[pymethods]
impl PyBestApprox {
    fn __call__(&self, x: f64) -> PyResult<f64> {
        series(self.coeffs.clone())?.eval(x).map_err(py_err)
    }

    fn __repr__(&self) -> String {
        format!(
            "BestApprox(n={}, levelled_error={:e}, achieved_sup={:e}, iterations={})",
            self.coeffs.len() - 1,
            self.levelled_error,
            self.achieved_sup,
            self.iterations
        )
    }
}

/// Chebyshev coefficients `a_0..=a_kmax` (primed convention).
#[pyfunction]
#[pyo3(signature = (f, k_max, tol=1e-14))]
fn true_coeffs(py: Python<'_>, f: Target<'_>, k_max: usize, tol: f64) -> PyResult<Vec<f64>> {
    let g = f.function();
    py.detach(|| logcheb::true_coeffs(g, k_max, tol))
        .map(ChebSeries::into_coeffs)
        .map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (f, k, tol=1e-12))]
fn quadrature_coeff(f: Target<'_>, k: usize, tol: f64) -> PyResult<f64> {
    logcheb::quadrature_coeff(f.function(), k, tol).map_err(py_err)
}

#[pyfunction]
fn chebyshev_nodes(kind_name: &str, n: usize) -> PyResult<Vec<f64>> {
    Ok(logcheb::chebyshev_nodes(kind(kind_name)?, n).map_err(py_err)?.nodes)
}

#[pyfunction]
fn clenshaw_eval(coeffs: Vec<f64>, x: f64) -> PyResult<f64> {
    logcheb::clenshaw_eval(&series(coeffs)?, x).map_err(py_err)
}

#[pyfunction]
fn coeffs_from_samples(values: Vec<f64>, kind_name: &str) -> PyResult<Vec<f64>> {
    logcheb::coeffs_from_samples(&values, kind(kind_name)?)
        .map(ChebSeries::into_coeffs)
        .map_err(py_err)
}

/// Interpolant coefficients on `"first"` or `"second"` kind points.
#[pyfunction]
fn interpolant(f: Target<'_>, n: usize, kind_name: &str) -> PyResult<Vec<f64>> {
    logcheb::interpolant(f.function(), n, kind(kind_name)?)
        .map(|r| r.series.into_coeffs())
        .map_err(py_err)
}

#[pyfunction]
fn interp_error(f: Target<'_>, n: usize, kind_name: &str, x: f64) -> PyResult<f64> {
    logcheb::interp_error(f.function(), n, kind(kind_name)?, x).map_err(py_err)
}

/// `(value, last_ell)` of the aliasing prediction.
#[pyfunction]
fn aliasing_predict(coeffs: Vec<f64>, n: usize, k: usize, kind_name: &str) -> PyResult<(f64, usize)> {
    logcheb::aliasing_predict(&series(coeffs)?, n, k, kind(kind_name)?)
        .map(|a| (a.value, a.last_ell))
        .map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (f, n, grid_size=None))]
fn remez(py: Python<'_>, f: Target<'_>, n: usize, grid_size: Option<usize>) -> PyResult<PyBestApprox> {
    let opts = RemezOptions {
        grid_size,
        ..RemezOptions::default()
    };
    let g = f.function();
    let b = py.detach(|| logcheb::remez(g, n, opts)).map_err(py_err)?;
    Ok(PyBestApprox {
        coeffs: b.series.into_coeffs(),
        levelled_error: b.levelled_error,
        reference: b.reference,
        iterations: b.iterations,
        achieved_sup: b.achieved_sup,
    })
}

#[pyfunction]
fn gamma_fn(z: f64) -> PyResult<f64> {
    logcheb::gamma_fn(z).map_err(py_err)
}

#[pyfunction]
fn digamma(z: f64) -> PyResult<f64> {
    logcheb::digamma(z).map_err(py_err)
}

#[pyfunction]
fn dirichlet_kernel(n: usize, t: f64) -> f64 {
    logcheb::dirichlet_kernel(n, t)
}

/// Sum of the enabled endpoint predictions for `a_k`.
#[pyfunction]
fn coeff_asym(f: Target<'_>, k: usize) -> PyResult<f64> {
    logcheb::asym::coeff_asym_for(f.singular()?, k).map_err(py_err)
}

#[pyfunction]
fn pointwise_error_asym(f: Target<'_>, n: usize, x: f64) -> PyResult<f64> {
    logcheb::pointwise_error_asym(f.singular()?, n, x).map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (nu, mu, t, n, mode="oracle"))]
fn psi_tail(nu: f64, mu: u32, t: f64, n: usize, mode: &str) -> PyResult<f64> {
    let mode = match mode {
        "oracle" => TailMode::Oracle,
        "asymptotic" => TailMode::Asymptotic,
        other => return Err(PyValueError::new_err(format!("unknown mode '{other}'"))),
    };
    logcheb::psi_tail(TailQuery { nu, mu, t, n }, mode).map_err(py_err)
}

/// Runs a harness experiment from its JSON configuration; returns `(csv, summary_json)`.
#[pyfunction]
fn run_experiment(py: Python<'_>, config_json: &str) -> PyResult<(String, String)> {
    let cfg: ExperimentConfig = serde_json::from_str(config_json).map_err(|e| PyValueError::new_err(e.to_string()))?;
    let out = py
        .detach(|| run(&cfg))
        .map_err(|e| PyValueError::new_err(e.to_string()))?;
    let mut buf = Vec::new();
    write_csv(&out.records, &mut buf).map_err(|e| PyValueError::new_err(e.to_string()))?;
    let csv = String::from_utf8(buf).map_err(|e| PyValueError::new_err(e.to_string()))?;
    let summary = serde_json::to_string(&out.summary).map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok((csv, summary))
}

#[pymodule]
#[pyo3(name = "logcheb")]
fn logcheb_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySingular>()?;
    m.add_class::<PyAnalytic>()?;
    m.add_class::<PyBestApprox>()?;
    m.add_function(wrap_pyfunction!(true_coeffs, m)?)?;
    m.add_function(wrap_pyfunction!(quadrature_coeff, m)?)?;
    m.add_function(wrap_pyfunction!(chebyshev_nodes, m)?)?;
    m.add_function(wrap_pyfunction!(clenshaw_eval, m)?)?;
    m.add_function(wrap_pyfunction!(coeffs_from_samples, m)?)?;
    m.add_function(wrap_pyfunction!(interpolant, m)?)?;
    m.add_function(wrap_pyfunction!(interp_error, m)?)?;
    m.add_function(wrap_pyfunction!(aliasing_predict, m)?)?;
    m.add_function(wrap_pyfunction!(remez, m)?)?;
    m.add_function(wrap_pyfunction!(gamma_fn, m)?)?;
    m.add_function(wrap_pyfunction!(digamma, m)?)?;
    m.add_function(wrap_pyfunction!(dirichlet_kernel, m)?)?;
    m.add_function(wrap_pyfunction!(coeff_asym, m)?)?;
    m.add_function(wrap_pyfunction!(pointwise_error_asym, m)?)?;
    m.add_function(wrap_pyfunction!(psi_tail, m)?)?;
    m.add_function(wrap_pyfunction!(run_experiment, m)?)?;
    Ok(())
}
