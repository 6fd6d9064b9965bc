//! Reproducible experiments: configuration, parallel execution in sorted
//! order, CSV/JSON output and log-log order fits.

mod config;
mod experiment;
mod fit;
mod record;

pub use config::{parse_degrees, ExperimentConfig, ExperimentKind, GridSpec, OutputFormat, PsiSpec, TargetSpec};
pub use experiment::{pointwise_order, run_experiment, summary_path, write_outputs, ExperimentOutput, RunError};
pub use fit::{fit_loglog, fit_order, OrderFit};
pub use record::{read_csv, write_csv, write_records, ErrorRecord, CSV_HEADER};
