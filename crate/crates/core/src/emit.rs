//! CSV and JSON encoding of spectra and figure datasets.
//!
//! CSV output starts with one `#`-prefixed line holding the metadata as JSON;
//! the remaining lines are a header and rows. Floats are written with 17
//! significant digits so that output is byte-for-byte reproducible and
//! round-trips exactly. Non-finite values are written as `inf`, `-inf`, `nan`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::{self, Write};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::config::PendulumConfig;
use crate::error::{Error, Result};
use crate::figures::FigureDataset;
use crate::mathieu::SpectrumTable;

pub const PROVENANCE: &str = concat!("pendulum-core ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(Error::InvalidArgument(format!("unknown format '{other}'"))),
        }
    }
}

/// Physical output carries energies; the Mathieu frame only `a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Frame {
    #[default]
    Physical,
    Mathieu,
}

impl FromStr for Frame {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "physical" => Ok(Frame::Physical),
            "mathieu" => Ok(Frame::Mathieu),
            other => Err(Error::InvalidArgument(format!("unknown frame '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub provenance: String,
    pub kind: String,
    pub frame: Frame,
    /// Absent when the run was parameterized by `q` alone.
    pub config: Option<PendulumConfig>,
    pub q: f64,
    pub energy_unit: f64,
    /// Echo of the options that shaped the output.
    pub args: BTreeMap<String, String>,
}

impl Metadata {
    pub fn new(
        kind: impl Into<String>,
        frame: Frame,
        config: Option<PendulumConfig>,
        q: f64,
        energy_unit: f64,
    ) -> Self {
        Self {
            provenance: PROVENANCE.to_string(),
            kind: kind.into(),
            frame,
            config,
            q,
            energy_unit,
            args: BTreeMap::new(),
        }
    }

    pub fn with_arg(mut self, key: &str, value: impl ToString) -> Self {
        self.args.insert(key.to_string(), value.to_string());
        self
    }
}

/// `{:.16e}` for finite values; `inf`, `-inf`, `nan` otherwise.
pub fn format_float(v: f64) -> String {
    if v.is_nan() {
        "nan".into()
    } else if v.is_infinite() {
        if v > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        }
    } else {
        format!("{v:.16e}")
    }
}

/// JSON has no infinities; they become the same strings as in CSV.
fn json_float(v: f64) -> Value {
    if v.is_finite() {
        json!(v)
    } else {
        Value::String(format_float(v))
    }
}

fn json_floats(values: &[f64]) -> Value {
    Value::Array(values.iter().map(|&v| json_float(v)).collect())
}

fn metadata_value(meta: &Metadata) -> Result<Value> {
    let mut v = serde_json::to_value(meta).map_err(|e| Error::InvalidArgument(e.to_string()))?;
    // q may legitimately be any finite float; keep the object JSON-clean.
    v["q"] = json_float(meta.q);
    v["energy_unit"] = json_float(meta.energy_unit);
    Ok(v)
}

fn header_line(meta: &Value) -> String {
    format!("# {meta}\n")
}

pub fn spectrum_csv(table: &SpectrumTable, meta: &Metadata) -> Result<String> {
    let mut out = header_line(&metadata_value(meta)?);
    match meta.frame {
        Frame::Physical => out.push_str("global_index,parity,r,a,E\n"),
        Frame::Mathieu => out.push_str("global_index,parity,r,a\n"),
    }
    for e in &table.entries {
        let l = &e.label;
        let _ = write!(out, "{},{},{},{}", l.global_index, l.parity, l.r, format_float(e.a));
        if meta.frame == Frame::Physical {
            let _ = write!(out, ",{}", format_float(e.energy));
        }
        out.push('\n');
    }
    Ok(out)
}

pub fn spectrum_json(table: &SpectrumTable, meta: &Metadata) -> Result<String> {
    let rows: Vec<Value> = table
        .entries
        .iter()
        .map(|e| {
            let mut row = json!({
                "global_index": e.label.global_index,
                "parity": e.label.parity.as_str(),
                "r": e.label.r,
                "a": json_float(e.a),
            });
            if meta.frame == Frame::Physical {
                row["E"] = json_float(e.energy);
            }
            row
        })
        .collect();
    let doc = json!({ "metadata": metadata_value(meta)?, "rows": rows });
    Ok(format!("{doc:#}\n"))
}

/// Long-format CSV: one `series,x,y` row per point. Axis labels of every
/// series are listed in the metadata line.
pub fn figure_csv(dataset: &FigureDataset, meta: &Metadata) -> Result<String> {
    let mut header = metadata_value(meta)?;
    header["figure_id"] = json!(dataset.figure_id.as_str());
    header["series"] = Value::Array(
        dataset
            .series
            .iter()
            .map(|s| json!({ "id": s.id, "x_label": s.x_label, "y_label": s.y_label, "points": s.len() }))
            .collect(),
    );
    let mut out = header_line(&header);
    out.push_str("series,x,y\n");
    for s in &dataset.series {
        for (&x, &y) in s.x.iter().zip(&s.y) {
            let _ = writeln!(out, "{},{},{}", s.id, format_float(x), format_float(y));
        }
    }
    Ok(out)
}

pub fn figure_json(dataset: &FigureDataset, meta: &Metadata) -> Result<String> {
    let mut header = metadata_value(meta)?;
    header["figure_id"] = json!(dataset.figure_id.as_str());
    let series: Vec<Value> = dataset
        .series
        .iter()
        .map(|s| {
            json!({
                "id": s.id,
                "x_label": s.x_label,
                "y_label": s.y_label,
                "x": json_floats(&s.x),
                "y": json_floats(&s.y),
            })
        })
        .collect();
    let doc = json!({ "metadata": header, "series": series });
    Ok(format!("{doc:#}\n"))
}

pub fn encode_spectrum(table: &SpectrumTable, meta: &Metadata, format: Format) -> Result<String> {
    match format {
        Format::Csv => spectrum_csv(table, meta),
        Format::Json => spectrum_json(table, meta),
    }
}

pub fn encode_figure(dataset: &FigureDataset, meta: &Metadata, format: Format) -> Result<String> {
    match format {
        Format::Csv => figure_csv(dataset, meta),
        Format::Json => figure_json(dataset, meta),
    }
}

/// Parse the metadata line of a CSV document back into JSON.
pub fn read_csv_metadata(text: &str) -> Result<Value> {
    let first = text.lines().next().unwrap_or_default();
    let body = first
        .strip_prefix("# ")
        .ok_or_else(|| Error::InvalidArgument("missing metadata line".into()))?;
    serde_json::from_str(body).map_err(|e| Error::InvalidArgument(format!("bad metadata: {e}")))
}

pub fn write_to(mut w: impl Write, text: &str) -> io::Result<()> {
    w.write_all(text.as_bytes())?;
    w.flush()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::figures::{FigureId, Series};
    use crate::mathieu::spectrum;

    #[test]
    fn float_formatting() {
        assert_eq!(format_float(1.0), "1.0000000000000000e0");
        assert_eq!(format_float(-0.1), "-1.0000000000000001e-1");
        assert_eq!(format_float(f64::INFINITY), "inf");
        assert_eq!(format_float(f64::NEG_INFINITY), "-inf");
        assert_eq!(format_float(f64::NAN), "nan");
        let v = 0.1 + 0.2;
        assert_eq!(format_float(v).parse::<f64>().unwrap(), v);
    }

    #[test]
    fn spectrum_csv_shape_and_metadata() {
        let cfg = PendulumConfig::nominal();
        let table = spectrum(&cfg, 6).unwrap();
        let meta =
            Metadata::new("spectrum", Frame::Physical, Some(cfg), cfg.q(), cfg.energy_unit()).with_arg("count", 6);
        let text = spectrum_csv(&table, &meta).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 8);
        assert_eq!(lines[1], "global_index,parity,r,a,E");
        assert!(lines[2].starts_with("0,even,0,"));
        let back = read_csv_metadata(&text).unwrap();
        assert_eq!(back["q"], json!(160.0));
        assert_eq!(back["args"]["count"], json!("6"));
        let round: Metadata = serde_json::from_value(back).unwrap();
        assert_eq!(round, meta);

        let mathieu = Metadata {
            frame: Frame::Mathieu,
            ..meta
        };
        let text = spectrum_csv(&table, &mathieu).unwrap();
        assert_eq!(text.lines().nth(1).unwrap(), "global_index,parity,r,a");
        assert_eq!(text.lines().nth(2).unwrap().split(',').count(), 4);
    }

    #[test]
    fn figure_json_encodes_infinity_as_string() {
        let ds = FigureDataset {
            figure_id: FigureId::Fig6,
            series: vec![Series {
                id: "s".into(),
                x_label: "E".into(),
                y_label: "T_rev".into(),
                x: vec![1.0, 2.0],
                y: vec![f64::INFINITY, 3.0],
            }],
        };
        let meta = Metadata::new("figure", Frame::Physical, None, 1.0, 0.25);
        let doc: Value = serde_json::from_str(&figure_json(&ds, &meta).unwrap()).unwrap();
        assert_eq!(doc["series"][0]["y"][0], json!("inf"));
        assert_eq!(doc["metadata"]["figure_id"], json!("fig6"));
        let csv = figure_csv(&ds, &meta).unwrap();
        assert!(csv.contains("s,1.0000000000000000e0,inf\n"));
    }

    #[test]
    fn parse_format_and_frame() {
        assert_eq!("json".parse::<Format>().unwrap(), Format::Json);
        assert!("xml".parse::<Format>().is_err());
        assert_eq!("mathieu".parse::<Frame>().unwrap(), Frame::Mathieu);
        assert!("lab".parse::<Frame>().is_err());
    }
}
