//! Tabular report rendering.
//!
//! Every report is a [`Table`] of a named kind. It renders as CSV (header
//! row first), as JSON lines (one object per row, keys in column order,
//! preceded by `"schema": "chaosnet.<kind>.v<REPORT_SCHEMA_VERSION>"`), or as
//! an aligned plain-text table. Feature columns are reported 1-based.

use std::fmt::Write as _;
use std::str::FromStr;

use serde_json::Value;

use super::{CurvePoint, EvalReport, GridPoint, SubsetResult};
use crate::classifier::Prediction;
use crate::error::{Error, Result};
use crate::ttss::TtssParams;

pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Jsonl,
    Table,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "jsonl" | "json" => Ok(Format::Jsonl),
            "table" => Ok(Format::Table),
            _ => Err(Error::invalid("format", s, "expected csv, jsonl or table")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
    Json(Value),
    Null,
}

impl Cell {
    fn plain(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => format!("{v:?}"),
            Cell::Text(s) => s.clone(),
            Cell::Json(v) => v.to_string(),
            Cell::Null => String::new(),
        }
    }

    fn pretty(&self) -> String {
        match self {
            Cell::Float(v) => format!("{v:.4}"),
            Cell::Null => "-".into(),
            other => other.plain(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => Value::from(*v),
            Cell::Float(v) => serde_json::Number::from_f64(*v).map_or(Value::Null, Value::Number),
            Cell::Text(s) => Value::from(s.as_str()),
            Cell::Json(v) => v.clone(),
            Cell::Null => Value::Null,
        }
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Self {
        v.map_or(Cell::Null, Into::into)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub kind: &'static str,
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(kind: &'static str, header: &[&str]) -> Self {
        Self {
            kind,
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn schema(&self) -> String {
        format!("chaosnet.{}.v{REPORT_SCHEMA_VERSION}", self.kind)
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Csv => self.to_csv(),
            Format::Jsonl => Ok(self.to_jsonl()),
            Format::Table => Ok(self.to_text()),
        }
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::plain))?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io {
            path: "<buffer>".into(),
            source: e.into_error(),
        })?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    pub fn to_jsonl(&self) -> String {
        let schema = Value::from(self.schema()).to_string();
        let mut out = String::new();
        for row in &self.rows {
            let _ = write!(out, "{{\"schema\":{schema}");
            for (k, c) in self.header.iter().zip(row) {
                let _ = write!(out, ",{}:{}", Value::from(k.as_str()), c.json());
            }
            out.push_str("}\n");
        }
        out
    }

    pub fn to_text(&self) -> String {
        let cells: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(Cell::pretty).collect())
            .collect();
        let widths: Vec<usize> = (0..self.header.len())
            .map(|j| {
                cells
                    .iter()
                    .map(|r| r[j].len())
                    .chain(std::iter::once(self.header[j].len()))
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let mut out = String::new();
        let line = |out: &mut String, items: &[String]| {
            let parts: Vec<String> = items
                .iter()
                .zip(&widths)
                .map(|(s, w)| format!("{s:>w$}"))
                .collect();
            let _ = writeln!(out, "{}", parts.join("  ").trim_end());
        };
        line(&mut out, &self.header);
        for r in &cells {
            line(&mut out, r);
        }
        out
    }
}

fn params_cells(p: &TtssParams) -> Vec<Cell> {
    vec![
        p.map_kind().as_str().into(),
        p.b().into(),
        p.q().into(),
        p.epsilon().into(),
    ]
}

fn one_based(cols: &[usize]) -> String {
    cols.iter()
        .map(|c| (c + 1).to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn evaluation_table(reports: &[EvalReport]) -> Table {
    let mut t = Table::new(
        "evaluation",
        &[
            "seed",
            "split",
            "folds",
            "map",
            "b",
            "q",
            "epsilon",
            "features",
            "n_train",
            "n_test",
            "accuracy",
            "labels",
            "recall",
            "confusion",
        ],
    );
    for r in reports {
        let mut row: Vec<Cell> = vec![r.seed.into(), r.split.to_string().into(), r.folds.into()];
        row.extend(params_cells(&r.params));
        row.push(r.feature_subset.as_deref().map(one_based).into());
        row.push(r.n_train.into());
        row.push(r.n_test.into());
        row.push(r.accuracy.into());
        row.push(Cell::Json(serde_json::json!(r.confusion.labels())));
        row.push(Cell::Json(serde_json::json!(r.per_class_recall)));
        row.push(Cell::Json(serde_json::json!(r.confusion.counts())));
        t.push(row);
    }
    t
}

pub fn grid_table(points: &[GridPoint]) -> Table {
    let mut t = Table::new(
        "grid",
        &[
            "map",
            "b",
            "q",
            "epsilon",
            "mean_accuracy",
            "std_accuracy",
            "error",
        ],
    );
    for p in points {
        let mut row = params_cells(&p.params);
        row.push(p.mean_accuracy.into());
        row.push(p.std_accuracy.into());
        row.push(p.error.clone().into());
        t.push(row);
    }
    t
}

pub fn curve_table(points: &[CurvePoint]) -> Table {
    let mut t = Table::new("curve", &["m", "repeats", "mean_accuracy", "std_accuracy"]);
    for p in points {
        t.push(vec![
            p.m.into(),
            p.accuracies.len().into(),
            p.mean_accuracy.into(),
            p.std_accuracy.into(),
        ]);
    }
    t
}

pub fn subset_table(rows: &[SubsetResult], names: &[String]) -> Table {
    let mut t = Table::new(
        "subsets",
        &[
            "rank",
            "features",
            "names",
            "repeats",
            "mean_accuracy",
            "std_accuracy",
        ],
    );
    for (rank, r) in rows.iter().enumerate() {
        let n: Vec<&str> = r.subset.iter().map(|&j| names[j].as_str()).collect();
        t.push(vec![
            (rank + 1).into(),
            one_based(&r.subset).into(),
            n.join(" ").into(),
            r.repeats.into(),
            r.mean_accuracy.into(),
            r.std_accuracy.into(),
        ]);
    }
    t
}

/// One row per prediction; `truth` is included when known.
pub fn prediction_table(
    predictions: &[Prediction],
    class_labels: &[i64],
    truth: Option<&[i64]>,
) -> Table {
    let mut header: Vec<String> = vec!["row".into(), "label".into()];
    if truth.is_some() {
        header.push("truth".into());
    }
    header.extend(class_labels.iter().map(|l| format!("similarity_{l}")));
    let mut t = Table {
        kind: "predictions",
        header,
        rows: Vec::new(),
    };
    for (i, p) in predictions.iter().enumerate() {
        let mut row: Vec<Cell> = vec![i.into(), p.label.into()];
        if let Some(tr) = truth {
            row.push(tr[i].into());
        }
        row.extend(p.similarities.iter().map(|&s| Cell::Float(s)));
        t.push(row);
    }
    t
}
