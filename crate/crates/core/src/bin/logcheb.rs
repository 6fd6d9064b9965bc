use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use logcheb::harness::{
    parse_degrees, run_experiment, write_outputs, write_records, ExperimentConfig, ExperimentKind, RunError, TargetSpec,
};
use logcheb::{AnalyticFactor, LogSingularFunction};

#[derive(Parser)]
#[command(
    name = "logcheb",
    version,
    about = "Chebyshev approximation of functions with logarithmic endpoint singularities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Chebyshev coefficients a_k against their asymptotic prediction
    Coeffs(Common),
    /// Pointwise truncation error f - f_n
    Trunc(Common),
    /// Pointwise error of first- and second-kind interpolants
    Interp(Common),
    /// Best (minimax) approximation by Remez exchange
    Best(Common),
    /// Truncation, interpolation and best approximation side by side
    Compare(Common),
    /// Tail series: oracle sum against the asymptotic formula
    Psi {
        #[command(flatten)]
        common: Common,
        /// Tail exponents ν (comma list; default 2γ)
        #[arg(long)]
        nu: Option<String>,
        /// Angles t (comma list; accepts pi and pi/2)
        #[arg(long)]
        angles: Option<String>,
    },
    /// Near-best bound ||f - f_n|| ≤ (4 + 4 ln(n)/π²) ||f - p*||
    Bound(Common),
}

#[derive(Args, Clone, Default)]
struct Common {
    /// Exponent of the (1-x) term; enables it
    #[arg(long, allow_hyphen_values = true)]
    gamma: Option<f64>,
    /// Exponent of the (1+x) term; enables it
    #[arg(long, allow_hyphen_values = true)]
    delta: Option<f64>,
    /// Logarithm power (default 1)
    #[arg(long)]
    mu: Option<i64>,
    /// Factor g1: monomial coefficients "1,0.5" or a named factor such as "exp:2"
    #[arg(long, allow_hyphen_values = true)]
    g1: Option<String>,
    /// Factor g2, same syntax as --g1
    #[arg(long, allow_hyphen_values = true)]
    g2: Option<String>,
    /// Use an analytic target instead of the singular family
    #[arg(long, allow_hyphen_values = true)]
    analytic: Option<String>,
    /// Degrees: "8,16,32", "2:20", "2:20:2" or "64:1024:x2"
    #[arg(long)]
    n: Option<String>,
    /// Evaluation grid: "uniform:N", "cheb:N" or "x1,x2,..."
    #[arg(long, allow_hyphen_values = true)]
    grid: Option<String>,
    /// Accuracy of the reference coefficients
    #[arg(long)]
    tol: Option<f64>,
    /// Data file; the summary goes next to it as <stem>.summary.json
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_parser = ["csv", "json"])]
    format: Option<String>,
    /// JSON experiment configuration; flags override its fields
    #[arg(long)]
    config: Option<PathBuf>,
}

fn kind_of(cmd: &Command) -> (ExperimentKind, &Common) {
    match cmd {
        Command::Coeffs(c) => (ExperimentKind::CoeffDecay, c),
        Command::Trunc(c) => (ExperimentKind::TruncError, c),
        Command::Interp(c) => (ExperimentKind::InterpError, c),
        Command::Best(c) => (ExperimentKind::BestApprox, c),
        Command::Compare(c) => (ExperimentKind::BestCompare, c),
        Command::Psi { common, .. } => (ExperimentKind::PsiCheck, common),
        Command::Bound(c) => (ExperimentKind::BoundCheck, c),
    }
}

fn factor(s: &str) -> Result<AnalyticFactor, String> {
    s.parse::<AnalyticFactor>().map_err(|e| e.to_string())
}

fn parse_list(s: &str) -> Result<Vec<f64>, String> {
    s.split(',')
        .map(|p| match p.trim() {
            "pi" => Ok(std::f64::consts::PI),
            "pi/2" => Ok(std::f64::consts::FRAC_PI_2),
            t => t.parse::<f64>().map_err(|e| format!("bad number '{t}': {e}")),
        })
        .collect()
}

fn target(base: Option<TargetSpec>, c: &Common, kind: ExperimentKind) -> Result<TargetSpec, String> {
    if let Some(a) = &c.analytic {
        return Ok(TargetSpec::Analytic { analytic: factor(a)? });
    }
    let flags = c.gamma.is_some() || c.delta.is_some() || c.mu.is_some() || c.g1.is_some() || c.g2.is_some();
    let start = match base {
        Some(TargetSpec::Singular(f)) => f,
        Some(t) if !flags => return Ok(t),
        _ if c.gamma.is_some() || c.delta.is_some() => LogSingularFunction::zero(),
        _ if kind == ExperimentKind::PsiCheck => return Ok(TargetSpec::Singular(LogSingularFunction::zero())),
        _ => return Err("no target: give --gamma/--delta, --analytic or --config".into()),
    };
    let right = start.right || c.gamma.is_some();
    let left = start.left || c.delta.is_some();
    let g1 = match &c.g1 {
        Some(s) => factor(s)?,
        None if start.right => start.g1.clone(),
        None => AnalyticFactor::one(),
    };
    let g2 = match &c.g2 {
        Some(s) => factor(s)?,
        None if start.left => start.g2.clone(),
        None => AnalyticFactor::one(),
    };
    LogSingularFunction::new(
        c.gamma.unwrap_or(start.gamma),
        c.delta.unwrap_or(start.delta),
        c.mu.unwrap_or(start.mu as i64),
        g1,
        g2,
        right,
        left,
    )
    .map(TargetSpec::Singular)
    .map_err(|e| e.to_string())
}

fn build_config(cmd: &Command) -> Result<ExperimentConfig, String> {
    let (kind, c) = kind_of(cmd);
    let base = match &c.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            Some(
                serde_json::from_str::<ExperimentConfig>(&text)
                    .map_err(|e| format!("bad config {}: {e}", path.display()))?,
            )
        }
        None => None,
    };
    let function = target(base.as_ref().map(|b| b.function.clone()), c, kind)?;
    let mut cfg = match base {
        Some(mut b) => {
            b.experiment = kind;
            b.function = function;
            b
        }
        None => {
            let n = c.n.as_deref().ok_or("missing --n")?;
            ExperimentConfig::new(kind, function, parse_degrees(n)?)
        }
    };
    if let Some(n) = &c.n {
        cfg.degrees = parse_degrees(n)?;
    }
    if let Some(g) = &c.grid {
        cfg.grid = g.parse()?;
    }
    if let Some(t) = c.tol {
        cfg.tol = t;
    }
    if let Some(o) = &c.out {
        cfg.out = Some(o.clone());
    }
    if let Some(f) = &c.format {
        cfg.format = f.parse()?;
    }
    if let Command::Psi { nu, angles, .. } = cmd {
        if let Some(nu) = nu {
            cfg.psi.nu = parse_list(nu)?;
        }
        if let Some(a) = angles {
            cfg.psi.angles = parse_list(a)?;
        }
        if let (Some(mu), true) = (c.mu, c.gamma.is_none()) {
            cfg.psi.mu = vec![u32::try_from(mu).map_err(|_| format!("bad --mu {mu}"))?];
        }
    }
    cfg.validate()?;
    Ok(cfg)
}

fn run(cmd: &Command) -> Result<(), RunError> {
    let cfg = build_config(cmd).map_err(RunError::Config)?;
    let output = run_experiment(&cfg)?;
    let summary = serde_json::to_string_pretty(&output.summary).map_err(io::Error::from)?;
    match &cfg.out {
        Some(path) => {
            let summary_file = write_outputs(&cfg, &output, path)?;
            eprintln!("wrote {} and {}", path.display(), summary_file.display());
            writeln!(io::stdout(), "{summary}")?;
        }
        None => {
            write_records(&output.records, cfg.format, io::stdout().lock())?;
            eprintln!("{summary}");
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("logcheb: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
