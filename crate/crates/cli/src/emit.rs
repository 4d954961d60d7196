//! CSV and JSON writers. Both carry the same keys; CSV numbers use 17
//! significant digits, JSON numbers the shortest exact representation.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::config::Format;
use crate::error::CliError;
use crate::run::Row;

pub const COLUMNS: [&str; 11] =
    ["sweep_value", "m_V", "m_V0", "delta_m", "g0_sq", "g_sq", "x", "z_standard", "z_regularized", "regime", "error"];

/// Flat form of a [`Row`], one field per output column.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub sweep_value: Option<f64>,
    #[serde(rename = "m_V")]
    pub m_v: Option<f64>,
    #[serde(rename = "m_V0")]
    pub m_v0: Option<f64>,
    pub delta_m: Option<f64>,
    pub g0_sq: Option<f64>,
    pub g_sq: Option<f64>,
    pub x: Option<f64>,
    pub z_standard: Option<f64>,
    pub z_regularized: Option<f64>,
    pub regime: Option<String>,
    pub error: Option<String>,
}

impl From<&Row> for Record {
    fn from(row: &Row) -> Self {
        let r = row.report.as_ref();
        Record {
            sweep_value: row.sweep_value,
            m_v: r.map(|r| r.m_v),
            m_v0: r.and_then(|r| r.m_v0),
            delta_m: r.and_then(|r| r.delta_m),
            g0_sq: r.and_then(|r| r.g0_sq),
            g_sq: r.map(|r| r.g_sq),
            x: r.map(|r| r.x),
            z_standard: r.map(|r| r.z_standard),
            z_regularized: r.map(|r| r.z_regularized),
            regime: r.map(|r| r.regime.to_string()),
            error: row.error.clone(),
        }
    }
}

fn number(v: Option<f64>) -> String {
    v.map(|v| format!("{v:.16e}")).unwrap_or_default()
}

pub fn write_csv<W: Write>(rows: &[Row], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(COLUMNS)?;
    for row in rows {
        let r = Record::from(row);
        w.write_record([
            number(r.sweep_value),
            number(r.m_v),
            number(r.m_v0),
            number(r.delta_m),
            number(r.g0_sq),
            number(r.g_sq),
            number(r.x),
            number(r.z_standard),
            number(r.z_regularized),
            r.regime.unwrap_or_default(),
            r.error.unwrap_or_default(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_json<W: Write>(rows: &[Row], mut out: W) -> std::io::Result<()> {
    let records: Vec<Record> = rows.iter().map(Record::from).collect();
    serde_json::to_writer_pretty(&mut out, &records)?;
    out.write_all(b"\n")?;
    out.flush()
}

pub fn emit(rows: &[Row], format: Format, path: &Path) -> Result<(), CliError> {
    let io = |source| CliError::Io { path: path.to_path_buf(), source };
    let file = File::create(path).map_err(io)?;
    let out = BufWriter::new(file);
    match format {
        Format::Csv => write_csv(rows, out).map_err(|e| match e.into_kind() {
            csv::ErrorKind::Io(source) => io(source),
            other => io(std::io::Error::other(format!("{other:?}"))),
        }),
        Format::Json => write_json(rows, out).map_err(io),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use lee_core::{Regime, RenormReport};

    fn trivial_row() -> Row {
        Row {
            sweep_value: Some(0.0),
            report: Some(RenormReport {
                m_v: 1.8,
                m_v0: Some(1.8),
                delta_m: Some(0.0),
                g0_sq: Some(0.0),
                g_sq: 0.0,
                x: 0.0,
                z_standard: 1.0,
                z_regularized: 1.0,
                regime: Regime::Normal,
            }),
            error: None,
        }
    }

    #[test]
    fn empty_table_is_header_only() {
        let mut buf = Vec::new();
        write_csv(&[], &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), format!("{}\n", COLUMNS.join(",")));
    }

    #[test]
    fn trivial_row_both_formats() {
        let rows = vec![trivial_row()];
        let mut csv_buf = Vec::new();
        write_csv(&rows, &mut csv_buf).unwrap();
        let text = String::from_utf8(csv_buf).unwrap();
        let line = text.lines().nth(1).unwrap();
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields.len(), COLUMNS.len());
        assert_eq!(fields[7], "1.0000000000000000e0");
        assert_eq!(fields[8], "1.0000000000000000e0");
        assert_eq!(fields[9], "Normal");
        assert_eq!(fields[10], "");

        let mut json_buf = Vec::new();
        write_json(&rows, &mut json_buf).unwrap();
        let back: Vec<Record> = serde_json::from_slice(&json_buf).unwrap();
        assert_eq!(back[0].z_standard, Some(1.0));
        assert_eq!(back[0].z_regularized, Some(1.0));
    }

    #[test]
    fn seventeen_significant_digits() {
        assert_eq!(number(Some(0.1)), "1.0000000000000001e-1");
        assert_eq!(number(Some(-2.5)), "-2.5000000000000000e0");
        assert_eq!(number(None), "");
        let v = std::f64::consts::PI;
        assert_eq!(number(Some(v)).parse::<f64>().unwrap(), v);
    }

    #[test]
    fn json_keys_match_columns() {
        let mut buf = Vec::new();
        write_json(&[trivial_row()], &mut buf).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        let obj = v[0].as_object().unwrap();
        let mut keys: Vec<&str> = obj.keys().map(String::as_str).collect();
        let mut cols = COLUMNS.to_vec();
        keys.sort();
        cols.sort();
        assert_eq!(keys, cols);
    }

    #[test]
    fn errors_are_quoted() {
        let row = Row { sweep_value: Some(1.0), report: None, error: Some("bad, very bad".into()) };
        let mut buf = Vec::new();
        write_csv(&[row], &mut buf).unwrap();
        assert!(String::from_utf8(buf).unwrap().contains("\"bad, very bad\""));
    }
}
