use std::path::Path;
use std::str::FromStr;

use super::{write_atomic, Dataset};
use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// Which CSV column holds the integer class label.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum LabelColumn {
    Name(String),
    /// 0-based position.
    Index(usize),
    #[default]
    Last,
    /// No label column; every row gets label 0.
    None,
}

impl FromStr for LabelColumn {
    type Err = std::convert::Infallible;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Ok(match s {
            "last" => LabelColumn::Last,
            "none" => LabelColumn::None,
            _ => match s.parse::<usize>() {
                Ok(i) => LabelColumn::Index(i),
                Err(_) => LabelColumn::Name(s.to_string()),
            },
        })
    }
}

impl LabelColumn {
    fn resolve(&self, headers: &csv::StringRecord) -> Result<Option<usize>> {
        match self {
            LabelColumn::None => Ok(None),
            LabelColumn::Last if !headers.is_empty() => Ok(Some(headers.len() - 1)),
            LabelColumn::Last => Err(Error::MissingLabelColumn("last".into())),
            LabelColumn::Index(i) if *i < headers.len() => Ok(Some(*i)),
            LabelColumn::Index(i) => Err(Error::MissingLabelColumn(i.to_string())),
            LabelColumn::Name(n) => headers
                .iter()
                .position(|h| h.trim() == n)
                .map(Some)
                .ok_or_else(|| Error::MissingLabelColumn(n.clone())),
        }
    }
}

/// Read a comma-separated file with a header row.
///
/// Rows in parse errors are numbered from 1 starting at the first data row
/// (the header is not counted).
pub fn load_csv(path: impl AsRef<Path>, label_column: &LabelColumn) -> Result<Dataset> {
    let path = path.as_ref();
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    read_csv(file, label_column)
}

pub(crate) fn read_csv<R: std::io::Read>(reader: R, label_column: &LabelColumn) -> Result<Dataset> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let headers = rdr.headers()?.clone();
    let label_idx = label_column.resolve(&headers)?;
    let names: Vec<String> = headers
        .iter()
        .enumerate()
        .filter(|&(j, _)| Some(j) != label_idx)
        .map(|(_, h)| h.to_string())
        .collect();
    let mut data = Vec::new();
    let mut labels = Vec::new();
    for (r, record) in rdr.records().enumerate() {
        let row = r + 1;
        let record = record.map_err(|e| Error::Parse {
            row,
            column: "-".into(),
            message: e.to_string(),
        })?;
        if label_idx.is_none() {
            labels.push(0);
        }
        for (j, cell) in record.iter().enumerate() {
            let column = &headers[j];
            if Some(j) == label_idx {
                let l = cell.parse::<i64>().map_err(|_| Error::Parse {
                    row,
                    column: column.to_string(),
                    message: format!("label {cell:?} is not an integer"),
                })?;
                labels.push(l);
            } else {
                let v = cell.parse::<f64>().ok().filter(|v| v.is_finite());
                let v = v.ok_or_else(|| Error::Parse {
                    row,
                    column: column.to_string(),
                    message: format!("{cell:?} is not a finite number"),
                })?;
                data.push(v);
            }
        }
    }
    let m = Matrix::from_vec(labels.len(), names.len(), data)?;
    Dataset::new(m, labels, names)
}

/// Serialize with feature columns first and a trailing `label` column.
pub fn write_csv_bytes(dataset: &Dataset) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header: Vec<&str> = dataset.feature_names().iter().map(String::as_str).collect();
    header.push("label");
    w.write_record(&header)?;
    for (row, label) in dataset.features().iter_rows().zip(dataset.labels()) {
        let mut rec: Vec<String> = row.iter().map(|v| format!("{v:?}")).collect();
        rec.push(label.to_string());
        w.write_record(&rec)?;
    }
    w.into_inner().map_err(|e| Error::Io {
        path: "<buffer>".into(),
        source: e.into_error(),
    })
}

pub fn save_csv(dataset: &Dataset, path: impl AsRef<Path>) -> Result<()> {
    write_atomic(path, &write_csv_bytes(dataset)?)
}
