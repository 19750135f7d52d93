use std::io::{Read, Write};

use super::{BenchRecord, SummaryRow};
use crate::error::{Error, Result};
use crate::instrument::Counters;

/// Leading columns of a record row; the counter columns follow.
pub const RECORD_HEADER: [&str; 9] = [
    "algorithm",
    "strategy",
    "distribution",
    "n",
    "trial",
    "seed",
    "block_size",
    "elapsed_ns",
    "ns_per_nlnn",
];

const SUMMARY_HEADER: [&str; 10] = [
    "algorithm",
    "strategy",
    "block_size",
    "distribution",
    "n",
    "trials",
    "mean_ns",
    "mean_ns_per_nlnn",
    "mean_total_cmp",
    "mean_total_ma",
];

fn csv_err(e: impl std::fmt::Display) -> Error {
    Error::Csv(e.to_string())
}

fn write_metadata<W: Write>(w: &mut W, metadata: &[(String, String)]) -> Result<()> {
    for (k, v) in metadata {
        writeln!(w, "# {k}: {v}").map_err(csv_err)?;
    }
    Ok(())
}

/// Writes `# key: value` metadata lines, the header and one row per record.
/// Counter columns are empty for records without counters.
pub fn write_records<W: Write>(
    mut w: W,
    records: &[BenchRecord],
    metadata: &[(String, String)],
) -> Result<()> {
    write_metadata(&mut w, metadata)?;
    let mut out = csv::Writer::from_writer(w);
    let header = RECORD_HEADER
        .iter()
        .copied()
        .chain(Counters::FIELD_NAMES.iter().copied());
    out.write_record(header).map_err(csv_err)?;
    for r in records {
        let mut row = vec![
            r.algorithm.clone(),
            r.strategy.clone(),
            r.distribution.to_string(),
            r.n.to_string(),
            r.trial.to_string(),
            r.seed.to_string(),
            r.block_size.to_string(),
            r.elapsed_ns.to_string(),
            format!("{:.6}", r.ns_per_n_ln_n()),
        ];
        match &r.counters {
            Some(c) => row.extend(c.values().iter().map(u64::to_string)),
            None => row.extend(std::iter::repeat_n(String::new(), Counters::FIELD_NAMES.len())),
        }
        out.write_record(&row).map_err(csv_err)?;
    }
    out.flush().map_err(csv_err)?;
    Ok(())
}

pub fn write_summary<W: Write>(
    mut w: W,
    rows: &[SummaryRow],
    metadata: &[(String, String)],
) -> Result<()> {
    write_metadata(&mut w, metadata)?;
    let mut out = csv::Writer::from_writer(w);
    out.write_record(SUMMARY_HEADER).map_err(csv_err)?;
    let opt = |x: Option<f64>| x.map(|v| format!("{v:.3}")).unwrap_or_default();
    for r in rows {
        out.write_record([
            r.algorithm.clone(),
            r.strategy.clone(),
            r.block_size.to_string(),
            r.distribution.to_string(),
            r.n.to_string(),
            r.trials.to_string(),
            format!("{:.1}", r.mean_ns),
            format!("{:.6}", r.mean_ns_per_n_ln_n),
            opt(r.mean_total_cmp),
            opt(r.mean_total_ma),
        ])
        .map_err(csv_err)?;
    }
    out.flush().map_err(csv_err)?;
    Ok(())
}

/// Reads a record CSV and returns, per row, the identifying columns
/// (algorithm through block size) followed by the counter columns; timings
/// are dropped.
pub fn read_counter_columns<R: Read>(r: R) -> Result<Vec<Vec<String>>> {
    let mut reader = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(r);
    let headers = reader.headers().map_err(csv_err)?.clone();
    let keep: Vec<usize> = headers
        .iter()
        .enumerate()
        .filter(|(_, h)| !matches!(*h, "elapsed_ns" | "ns_per_nlnn"))
        .map(|(i, _)| i)
        .collect();
    let mut rows = Vec::new();
    for rec in reader.records() {
        let rec = rec.map_err(csv_err)?;
        rows.push(keep.iter().map(|&i| rec[i].to_string()).collect());
    }
    Ok(rows)
}
