use std::io::Write;

use serde::{Deserialize, Serialize};

use super::config::OutputFormat;

/// One output row. Empty cells are `None`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorRecord {
    pub experiment: String,
    pub n: usize,
    pub x_or_k: f64,
    pub err_trunc: Option<f64>,
    pub err_interp1: Option<f64>,
    pub err_interp2: Option<f64>,
    pub err_best: Option<f64>,
    pub asym_pred: Option<f64>,
    pub order_n: Option<f64>,
    pub order_ln: Option<u32>,
}

impl ErrorRecord {
    pub fn new(experiment: &str, n: usize, x_or_k: f64) -> Self {
        ErrorRecord {
            experiment: experiment.to_string(),
            n,
            x_or_k,
            err_trunc: None,
            err_interp1: None,
            err_interp2: None,
            err_best: None,
            asym_pred: None,
            order_n: None,
            order_ln: None,
        }
    }

    /// Every present value is finite.
    pub fn is_finite(&self) -> bool {
        self.x_or_k.is_finite()
            && [
                self.err_trunc,
                self.err_interp1,
                self.err_interp2,
                self.err_best,
                self.asym_pred,
                self.order_n,
            ]
            .iter()
            .all(|v| v.is_none_or(f64::is_finite))
    }
}

pub const CSV_HEADER: [&str; 10] = [
    "experiment",
    "n",
    "x_or_k",
    "err_trunc",
    "err_interp1",
    "err_interp2",
    "err_best",
    "asym_pred",
    "order_n",
    "order_ln",
];

/// Shortest round-trip representation, so output is byte-stable.
fn real(v: f64) -> String {
    format!("{v:e}")
}

fn opt(v: Option<f64>) -> String {
    v.map(real).unwrap_or_default()
}

pub fn write_csv<W: Write>(records: &[ErrorRecord], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in records {
        w.write_record([
            r.experiment.clone(),
            r.n.to_string(),
            real(r.x_or_k),
            opt(r.err_trunc),
            opt(r.err_interp1),
            opt(r.err_interp2),
            opt(r.err_best),
            opt(r.asym_pred),
            opt(r.order_n),
            r.order_ln.map(|p| p.to_string()).unwrap_or_default(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_records<W: Write>(records: &[ErrorRecord], format: OutputFormat, mut out: W) -> std::io::Result<()> {
    match format {
        OutputFormat::Csv => write_csv(records, out).map_err(std::io::Error::other),
        OutputFormat::Json => {
            serde_json::to_writer_pretty(&mut out, records)?;
            writeln!(out)
        }
    }
}

/// Reads records written by [`write_csv`].
pub fn read_csv<R: std::io::Read>(input: R) -> csv::Result<Vec<ErrorRecord>> {
    csv::Reader::from_reader(input).deserialize().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_round_trip() {
        let mut r = ErrorRecord::new("trunc-error", 16, 0.5);
        r.err_trunc = Some(-1.25e-7);
        r.order_n = Some(3.0);
        r.order_ln = Some(0);
        let mut buf = Vec::new();
        write_csv(&[r.clone()], &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert_eq!(
            text,
            "experiment,n,x_or_k,err_trunc,err_interp1,err_interp2,err_best,asym_pred,order_n,order_ln\n\
             trunc-error,16,5e-1,-1.25e-7,,,,,3e0,0\n"
        );
        assert_eq!(read_csv(buf.as_slice()).unwrap(), vec![r]);
    }
}
