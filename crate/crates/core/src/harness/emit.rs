use std::io::Write;
use std::path::Path;

use super::config::Format;
use super::sweep::{SweepTable, SCHEMA_VERSION};
use super::HarnessError;

pub const CSV_COLUMNS: [&str; 9] = ["c", "n", "trials", "p_hat_ham", "p_hat_d2", "p_hat_gap", "predicted", "ci_lo", "ci_hi"];

pub fn write_csv<W: Write>(table: &SweepTable, out: W) -> Result<(), HarnessError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_COLUMNS)?;
    for r in &table.rows {
        w.write_record([
            r.c.to_string(),
            r.n.to_string(),
            r.trials.to_string(),
            r.p_hat_ham.to_string(),
            r.p_hat_d2.to_string(),
            r.p_hat_gap.to_string(),
            r.predicted.to_string(),
            r.ci_lo.to_string(),
            r.ci_hi.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn to_csv_string(table: &SweepTable) -> String {
    let mut buf = Vec::new();
    write_csv(table, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("csv is utf-8")
}

pub fn to_json_string(table: &SweepTable) -> String {
    serde_json::to_string_pretty(table).expect("table serializes")
}

pub fn parse_sweep_json(text: &str) -> Result<SweepTable, HarnessError> {
    let table: SweepTable = serde_json::from_str(text)?;
    if table.schema_version != SCHEMA_VERSION {
        return Err(HarnessError::Schema(table.schema_version));
    }
    Ok(table)
}

pub fn write_table(table: &SweepTable, format: Format, path: &Path) -> Result<(), HarnessError> {
    let text = match format {
        Format::Csv => to_csv_string(table),
        Format::Json => to_json_string(table),
    };
    std::fs::write(path, text)?;
    Ok(())
}
