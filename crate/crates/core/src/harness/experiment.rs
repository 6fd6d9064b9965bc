use std::f64::consts::{PI, TAU};
use std::fs::File;
use std::io::BufWriter;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde_json::{json, Value};

use super::config::{ExperimentConfig, ExperimentKind};
use super::fit::fit_order;
use super::record::{write_records, ErrorRecord};
use crate::asym::{coeff_asym_for, pointwise_error_asym, predicted_order, psi_tail, DecayOrder, TailMode, TailQuery};
use crate::cheb::{clenshaw_raw, true_coeffs, ChebSeries, GridKind};
use crate::error::Error;
use crate::interp::interpolant;
use crate::remez::{remez, RemezOptions};
use crate::singfun::{LogSingularFunction, Point, RealFunction};

/// Failure of an experiment run, split by CLI exit code.
#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("numerical failure in cell [{cell}]: {source}")]
    Numerical { cell: String, source: Error },
    #[error("output error: {0}")]
    Io(#[from] std::io::Error),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Config(_) => 2,
            RunError::Numerical { .. } | RunError::Io(_) => 3,
        }
    }
}

fn cell(name: impl Into<String>) -> impl FnOnce(Error) -> RunError {
    let cell = name.into();
    move |source| RunError::Numerical { cell, source }
}

/// Rows in sorted `(n, x)` order plus a JSON summary.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentOutput {
    pub records: Vec<ErrorRecord>,
    pub summary: Value,
}

pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentOutput, RunError> {
    cfg.validate().map_err(RunError::Config)?;
    let (records, details) = match cfg.experiment {
        ExperimentKind::CoeffDecay => coeff_decay(cfg)?,
        ExperimentKind::TruncError => trunc_error(cfg)?,
        ExperimentKind::InterpError => interp_error(cfg)?,
        ExperimentKind::BestApprox => best_approx(cfg)?,
        ExperimentKind::BestCompare => best_compare(cfg)?,
        ExperimentKind::PsiCheck => psi_check(cfg)?,
        ExperimentKind::BoundCheck => bound_check(cfg)?,
    };
    if let Some(bad) = records.iter().find(|r| !r.is_finite()) {
        return Err(RunError::Numerical {
            cell: format!("{} n={} x={}", bad.experiment, bad.n, bad.x_or_k),
            source: Error::InvalidParameters("non-finite value in output row".into()),
        });
    }
    let summary = json!({
        "experiment": cfg.experiment.key(),
        "function": cfg.function,
        "degrees": cfg.degrees,
        "tol": cfg.tol,
        "rows": records.len(),
        "details": details,
    });
    Ok(ExperimentOutput { records, summary })
}

/// Summary file path next to the data file: `out.csv` → `out.summary.json`.
pub fn summary_path(out: &Path) -> PathBuf {
    out.with_extension("summary.json")
}

/// Writes data and summary to `cfg.out`; returns the summary path.
pub fn write_outputs(cfg: &ExperimentConfig, output: &ExperimentOutput, out: &Path) -> std::io::Result<PathBuf> {
    write_records(&output.records, cfg.format, BufWriter::new(File::create(out)?))?;
    let path = summary_path(out);
    let mut s = serde_json::to_string_pretty(&output.summary)?;
    s.push('\n');
    std::fs::write(&path, s)?;
    Ok(path)
}

/// Order of the pointwise truncation error at `x`: `2e+1` away from a
/// singular endpoint, `2e` on it; integer exponents lose one log power.
pub fn pointwise_order(f: &LogSingularFunction, x: f64) -> Option<DecayOrder> {
    f.enabled_terms()
        .into_iter()
        .filter(|(e, _, _)| *e > 0.0)
        .map(|(e, _, right)| {
            let own = if right { x == 1.0 } else { x == -1.0 };
            DecayOrder {
                rate: if own { 2.0 * e } else { 2.0 * e + 1.0 },
                ln_power: if e == e.round() { f.mu - 1 } else { f.mu },
            }
        })
        .reduce(DecayOrder::slower)
}

fn positive_exponents(f: &LogSingularFunction) -> bool {
    f.enabled_terms().iter().all(|(e, _, _)| *e > 0.0) && !f.enabled_terms().is_empty()
}

fn tag(r: &mut ErrorRecord, order: Option<DecayOrder>) {
    if let Some(o) = order {
        r.order_n = Some(o.rate);
        r.order_ln = Some(o.ln_power);
    }
}

fn sample(f: &dyn RealFunction, points: &[Point]) -> Result<Vec<f64>, RunError> {
    points
        .par_iter()
        .map(|p| f.eval_point(*p))
        .collect::<crate::Result<Vec<f64>>>()
        .map_err(cell("sampling target on the grid"))
}

fn reference_series(cfg: &ExperimentConfig, k_max: usize) -> Result<ChebSeries, RunError> {
    true_coeffs(cfg.function.function(), k_max, cfg.tol).map_err(cell(format!("reference coefficients k<={k_max}")))
}

fn trunc_at(c: &ChebSeries, n: usize, x: f64) -> f64 {
    clenshaw_raw(&c.coeffs()[..=n.min(c.degree())], x)
}

/// Log-log fit of `|values|` against `ns`, or the reason it is unavailable.
fn fit_json(ns: &[f64], values: &[f64], ln_power: u32) -> Value {
    let abs: Vec<f64> = values.iter().map(|v| v.abs()).collect();
    match fit_order(ns, &abs, ln_power) {
        Ok(fit) => serde_json::to_value(fit).unwrap_or(Value::Null),
        Err(e) => json!({ "unavailable": e }),
    }
}

/// Per-point and sup-norm fits of one error column over the degree list.
fn column_fits(
    cfg: &ExperimentConfig,
    records: &[ErrorRecord],
    points: usize,
    column: fn(&ErrorRecord) -> Option<f64>,
) -> Value {
    let ns: Vec<f64> = cfg.degrees.iter().map(|&n| n as f64).collect();
    let ln_power = |x: Option<f64>| {
        cfg.function
            .singular()
            .and_then(|f| match x {
                Some(x) => pointwise_order(f, x),
                None => predicted_order(f).ok(),
            })
            .map_or(0, |o| o.ln_power)
    };
    let by_n: Vec<&[ErrorRecord]> = records.chunks(points).collect();
    let sup: Option<Vec<f64>> = by_n
        .iter()
        .map(|rows| {
            rows.iter()
                .map(column)
                .try_fold(0.0f64, |a, v| v.map(|v| a.max(v.abs())))
        })
        .collect();
    let mut out = serde_json::Map::new();
    if let Some(sup) = sup {
        out.insert(
            "sup".into(),
            json!({ "values": sup, "fit": fit_json(&ns, &sup, ln_power(None)) }),
        );
    }
    if points <= 16 {
        let mut per_x = Vec::new();
        for j in 0..points {
            let x = by_n[0][j].x_or_k;
            let vals: Option<Vec<f64>> = by_n.iter().map(|rows| column(&rows[j])).collect();
            if let Some(vals) = vals {
                per_x.push(json!({ "x": x, "fit": fit_json(&ns, &vals, ln_power(Some(x))) }));
            }
        }
        out.insert("points".into(), Value::Array(per_x));
    }
    Value::Object(out)
}

type Outcome = Result<(Vec<ErrorRecord>, Value), RunError>;

fn coeff_decay(cfg: &ExperimentConfig) -> Outcome {
    let key = cfg.experiment.key();
    let k_max = *cfg.degrees.last().unwrap_or(&0);
    let c = reference_series(cfg, k_max)?;
    let single = cfg.function.singular();
    let order = single.and_then(|f| predicted_order(f).ok());
    let predict = single.filter(|f| positive_exponents(f));
    let mut records = Vec::with_capacity(cfg.degrees.len());
    let mut ratios = Vec::new();
    for &k in &cfg.degrees {
        let mut r = ErrorRecord::new(key, k, k as f64);
        let a = c.coeffs()[k];
        r.err_trunc = Some(a);
        if let (Some(f), true) = (predict, k >= 2) {
            let p = coeff_asym_for(f, k).map_err(cell(format!("{key} k={k}")))?;
            r.asym_pred = Some(p);
            if p != 0.0 {
                ratios.push(json!({ "k": k, "ratio_minus_one": a / p - 1.0 }));
            }
        }
        tag(&mut r, order);
        records.push(r);
    }
    let ks: Vec<f64> = cfg.degrees.iter().map(|&k| k as f64).collect();
    let vals: Vec<f64> = records.iter().filter_map(|r| r.err_trunc).collect();
    let details = json!({
        "predicted_order": order,
        "fit": fit_json(&ks, &vals, order.map_or(0, |o| o.ln_power)),
        "asymptotic_ratios": ratios,
    });
    Ok((records, details))
}

fn trunc_error(cfg: &ExperimentConfig) -> Outcome {
    let key = cfg.experiment.key();
    let n_max = *cfg.degrees.last().unwrap_or(&0);
    let c = reference_series(cfg, n_max)?;
    let points = cfg.grid.points();
    let fvals = sample(cfg.function.function(), &points)?;
    let single = cfg.function.singular();
    let predict = single.filter(|f| positive_exponents(f));
    let rows: Vec<Vec<ErrorRecord>> = cfg
        .degrees
        .par_iter()
        .map(|&n| {
            points
                .iter()
                .zip(&fvals)
                .map(|(p, fv)| {
                    let mut r = ErrorRecord::new(key, n, p.x);
                    r.err_trunc = Some(fv - trunc_at(&c, n, p.x));
                    if let (Some(f), true) = (predict, n >= 2) {
                        r.asym_pred =
                            Some(pointwise_error_asym(f, n, p.x).map_err(cell(format!("{key} n={n} x={}", p.x)))?);
                    }
                    tag(&mut r, single.and_then(|f| pointwise_order(f, p.x)));
                    Ok(r)
                })
                .collect::<Result<Vec<_>, RunError>>()
        })
        .collect::<Result<_, _>>()?;
    let records: Vec<ErrorRecord> = rows.into_iter().flatten().collect();

    let mut details = serde_json::Map::new();
    details.insert(
        "err_trunc".into(),
        column_fits(cfg, &records, points.len(), |r| r.err_trunc),
    );
    let chunks: Vec<&[ErrorRecord]> = records.chunks(points.len()).collect();
    let at = |rows: &[ErrorRecord], x: f64| rows.iter().find(|r| r.x_or_k == x).and_then(|r| r.err_trunc);
    let endpoint_ratio: Vec<Value> = cfg
        .degrees
        .iter()
        .zip(&chunks)
        .filter_map(|(&n, rows)| match (at(rows, 1.0), at(rows, -1.0)) {
            (Some(a), Some(b)) if b != 0.0 => Some(json!({ "n": n, "ratio": (a / b).abs() })),
            _ => None,
        })
        .collect();
    details.insert("endpoint_ratio".into(), Value::Array(endpoint_ratio));
    if let Some(last) = chunks.last() {
        let mismatch: Vec<Value> = last
            .iter()
            .filter_map(|r| match (r.err_trunc, r.asym_pred) {
                (Some(m), Some(p)) if p != 0.0 => Some(json!({ "x": r.x_or_k, "relative_mismatch": (m - p) / p })),
                _ => None,
            })
            .take(16)
            .collect();
        details.insert("prediction_at_largest_n".into(), Value::Array(mismatch));
    }
    Ok((records, Value::Object(details)))
}

fn interp_error(cfg: &ExperimentConfig) -> Outcome {
    let key = cfg.experiment.key();
    let f = cfg.function.function();
    let points = cfg.grid.points();
    let fvals = sample(f, &points)?;
    let single = cfg.function.singular();
    let second_kind = f.is_bounded();
    let rows: Vec<Vec<ErrorRecord>> = cfg
        .degrees
        .par_iter()
        .map(|&n| {
            let name = format!("{key} n={n}");
            let p1 = interpolant(f, n, GridKind::First).map_err(cell(name.clone()))?;
            let p2 = if second_kind {
                Some(interpolant(f, n, GridKind::Second).map_err(cell(name))?)
            } else {
                None
            };
            Ok(points
                .iter()
                .zip(&fvals)
                .map(|(p, fv)| {
                    let mut r = ErrorRecord::new(key, n, p.x);
                    r.err_interp1 = Some(fv - clenshaw_raw(p1.series.coeffs(), p.x));
                    r.err_interp2 = p2.as_ref().map(|p2| fv - clenshaw_raw(p2.series.coeffs(), p.x));
                    tag(&mut r, single.and_then(|s| pointwise_order(s, p.x)));
                    r
                })
                .collect())
        })
        .collect::<Result<_, RunError>>()?;
    let records: Vec<ErrorRecord> = rows.into_iter().flatten().collect();
    let details = json!({
        "second_kind": second_kind,
        "err_interp1": column_fits(cfg, &records, points.len(), |r| r.err_interp1),
        "err_interp2": column_fits(cfg, &records, points.len(), |r| r.err_interp2),
    });
    Ok((records, details))
}

fn best_approx(cfg: &ExperimentConfig) -> Outcome {
    let key = cfg.experiment.key();
    let f = cfg.function.function();
    let points = cfg.grid.points();
    let fvals = sample(f, &points)?;
    let results: Vec<(Vec<ErrorRecord>, Value)> = cfg
        .degrees
        .par_iter()
        .map(|&n| {
            let b = remez(f, n, RemezOptions::default()).map_err(cell(format!("{key} n={n}")))?;
            let rows: Vec<ErrorRecord> = points
                .iter()
                .zip(&fvals)
                .map(|(p, fv)| {
                    let mut r = ErrorRecord::new(key, n, p.x);
                    r.err_best = Some(fv - clenshaw_raw(b.series.coeffs(), p.x));
                    r
                })
                .collect();
            let info = json!({
                "n": n,
                "levelled_error": b.levelled_error,
                "achieved_sup": b.achieved_sup,
                "iterations": b.iterations,
                "reference": b.reference,
            });
            Ok((rows, info))
        })
        .collect::<Result<_, RunError>>()?;
    let (rows, info): (Vec<_>, Vec<_>) = results.into_iter().unzip();
    let records: Vec<ErrorRecord> = rows.into_iter().flatten().collect();
    let details = json!({
        "remez": info,
        "err_best": column_fits(cfg, &records, points.len(), |r| r.err_best),
    });
    Ok((records, details))
}

fn best_compare(cfg: &ExperimentConfig) -> Outcome {
    let key = cfg.experiment.key();
    let f = cfg.function.function();
    let n_max = *cfg.degrees.last().unwrap_or(&0);
    let c = reference_series(cfg, n_max)?;
    let points = cfg.grid.points();
    let fvals = sample(f, &points)?;
    let results: Vec<(Vec<ErrorRecord>, Value)> = cfg
        .degrees
        .par_iter()
        .map(|&n| {
            let name = format!("{key} n={n}");
            let b = remez(f, n, RemezOptions::default()).map_err(cell(name.clone()))?;
            let p1 = interpolant(f, n.max(1), GridKind::First).map_err(cell(name.clone()))?;
            let p2 = interpolant(f, n.max(1), GridKind::Second).map_err(cell(name))?;
            let rows: Vec<ErrorRecord> = points
                .iter()
                .zip(&fvals)
                .map(|(p, fv)| {
                    let mut r = ErrorRecord::new(key, n, p.x);
                    r.err_trunc = Some(fv - trunc_at(&c, n, p.x));
                    r.err_interp1 = Some(fv - clenshaw_raw(p1.series.coeffs(), p.x));
                    r.err_interp2 = Some(fv - clenshaw_raw(p2.series.coeffs(), p.x));
                    r.err_best = Some(fv - clenshaw_raw(b.series.coeffs(), p.x));
                    r
                })
                .collect();
            let sup =
                |get: fn(&ErrorRecord) -> Option<f64>| rows.iter().filter_map(get).fold(0.0f64, |a, v| a.max(v.abs()));
            let trunc_sup = sup(|r| r.err_trunc);
            let wins = rows
                .iter()
                .filter(|r| r.err_trunc.unwrap_or(f64::NAN).abs() <= r.err_best.unwrap_or(f64::NAN).abs())
                .count();
            let info = json!({
                "n": n,
                "trunc_beats_best_fraction": wins as f64 / rows.len() as f64,
                "trunc_sup": trunc_sup,
                "interp1_sup": sup(|r| r.err_interp1),
                "interp2_sup": sup(|r| r.err_interp2),
                "best_grid_sup": sup(|r| r.err_best),
                "best_achieved_sup": b.achieved_sup,
                "best_levelled_error": b.levelled_error,
                "best_wins_sup_norm": trunc_sup >= b.achieved_sup,
            });
            Ok((rows, info))
        })
        .collect::<Result<_, RunError>>()?;
    let (rows, info): (Vec<_>, Vec<_>) = results.into_iter().unzip();
    Ok((rows.into_iter().flatten().collect(), json!({ "per_degree": info })))
}

/// Leading scale of the tail at `n`: `n^{-ν-1} ln^μ n` (interior) or `n^{-ν} ln^μ n` (`t = 0`).
fn tail_scale(nu: f64, mu: u32, t: f64, n: usize) -> f64 {
    let nf = n as f64;
    let rate = if t == 0.0 { nu } else { nu + 1.0 };
    nf.ln().powi(mu as i32) * nf.powf(-rate)
}

fn psi_check(cfg: &ExperimentConfig) -> Outcome {
    let key = cfg.experiment.key();
    let single = cfg.function.singular();
    let nus = if cfg.psi.nu.is_empty() {
        vec![2.0 * single.map_or(0.5, |f| f.gamma)]
    } else {
        cfg.psi.nu.clone()
    };
    let mus = if cfg.psi.mu.is_empty() {
        vec![single.map_or(1, |f| f.mu)]
    } else {
        cfg.psi.mu.clone()
    };
    let mut angles = cfg.psi.angles.clone();
    angles.sort_by(f64::total_cmp);
    angles.dedup();

    let mut records = Vec::new();
    let mut checks = Vec::new();
    for &nu in &nus {
        for &mu in &mus {
            let group = format!("{key}:nu={nu}:mu={mu}");
            let rows: Vec<Vec<ErrorRecord>> = cfg
                .degrees
                .par_iter()
                .map(|&n| {
                    angles
                        .iter()
                        .map(|&t| {
                            let q = TailQuery { nu, mu, t, n };
                            let name = format!("{group} n={n} t={t}");
                            let mut r = ErrorRecord::new(&group, n, t);
                            r.err_trunc = Some(psi_tail(q, TailMode::Oracle).map_err(cell(name.clone()))?);
                            r.asym_pred = Some(psi_tail(q, TailMode::Asymptotic).map_err(cell(name))?);
                            r.order_n = Some(if t == 0.0 { nu } else { nu + 1.0 });
                            r.order_ln = Some(mu);
                            Ok(r)
                        })
                        .collect::<Result<Vec<_>, RunError>>()
                })
                .collect::<Result<_, _>>()?;
            for (j, &t) in angles.iter().enumerate() {
                let mismatch = |n: usize| -> Result<(f64, f64), RunError> {
                    let q = TailQuery { nu, mu, t, n };
                    let name = format!("{group} n={n} t={t}");
                    let o = psi_tail(q, TailMode::Oracle).map_err(cell(name.clone()))?;
                    let a = psi_tail(q, TailMode::Asymptotic).map_err(cell(name))?;
                    Ok(((o - a).abs(), (o - a).abs() / tail_scale(nu, mu, t, n)))
                };
                // relative mismatch maximised over one oscillation period of D_n(t)
                let window = if t == 0.0 {
                    1
                } else {
                    (TAU / t.abs()).ceil() as usize + 1
                };
                let windowed = |n: usize| -> Result<f64, RunError> {
                    (n..n + window).try_fold(0.0f64, |acc, m| Ok(acc.max(mismatch(m)?.1)))
                };
                let mut steps = Vec::new();
                for w in cfg.degrees.windows(2).filter(|w| w[1] == 2 * w[0]) {
                    let (lo, hi) = (w[0], w[1]);
                    let abs_ratio = mismatch(hi)?.0 / mismatch(lo)?.0;
                    let rel_ratio = windowed(hi)? / windowed(lo)?;
                    steps.push(json!({ "n": lo, "abs_ratio": abs_ratio, "windowed_relative_ratio": rel_ratio }));
                }
                let last = &rows[rows.len() - 1][j];
                checks.push(json!({
                    "nu": nu,
                    "mu": mu,
                    "t": t,
                    "doubling": steps,
                    "relative_error_at_largest_n": (last.err_trunc.unwrap_or(f64::NAN) - last.asym_pred.unwrap_or(f64::NAN))
                        / last.err_trunc.unwrap_or(f64::NAN),
                }));
            }
            records.extend(rows.into_iter().flatten());
        }
    }
    Ok((records, json!({ "checks": checks })))
}

fn bound_check(cfg: &ExperimentConfig) -> Outcome {
    let key = cfg.experiment.key();
    let f = cfg.function.function();
    let n_max = *cfg.degrees.last().unwrap_or(&0);
    let c = reference_series(cfg, n_max)?;
    let points = cfg.grid.points();
    let fvals = sample(f, &points)?;
    let results: Vec<(ErrorRecord, Value)> = cfg
        .degrees
        .par_iter()
        .map(|&n| {
            let b = remez(f, n, RemezOptions::default()).map_err(cell(format!("{key} n={n}")))?;
            let (x_at, trunc_sup) = points
                .iter()
                .zip(&fvals)
                .map(|(p, fv)| (p.x, (fv - trunc_at(&c, n, p.x)).abs()))
                .fold((f64::NAN, 0.0f64), |acc, (x, e)| if e > acc.1 { (x, e) } else { acc });
            let factor = 4.0 + 4.0 / (PI * PI) * (n.max(1) as f64).ln();
            let mut r = ErrorRecord::new(key, n, x_at);
            r.err_trunc = Some(trunc_sup);
            r.err_best = Some(b.achieved_sup);
            r.asym_pred = Some(factor * b.achieved_sup);
            let info = json!({
                "n": n,
                "trunc_sup": trunc_sup,
                "best_sup": b.achieved_sup,
                "factor": factor,
                "ratio": trunc_sup / b.achieved_sup,
                "holds": trunc_sup <= factor * b.achieved_sup,
            });
            Ok((r, info))
        })
        .collect::<Result<_, RunError>>()?;
    let (records, info): (Vec<_>, Vec<_>) = results.into_iter().unzip();
    let all = info.iter().all(|v| v["holds"].as_bool().unwrap_or(false));
    Ok((records, json!({ "per_degree": info, "bound_holds": all })))
}
