//! Datasets, CSV I/O, normalization and synthetic data.

mod csv_io;
mod normalize;
mod synthetic;

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};
use crate::matrix::Matrix;

pub use csv_io::{load_csv, save_csv, write_csv_bytes, LabelColumn};
pub use normalize::{normalize, Normalization};
pub use synthetic::generate_synthetic;

/// Raw tabular data: an `m x n` feature matrix with one integer label per row.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    features: Matrix,
    labels: Vec<i64>,
    feature_names: Vec<String>,
    normalization: Option<Normalization>,
}

impl Dataset {
    pub fn new(features: Matrix, labels: Vec<i64>, feature_names: Vec<String>) -> Result<Self> {
        if labels.len() != features.rows() {
            return Err(Error::DimensionMismatch {
                context: "labels vs rows",
                expected: features.rows(),
                found: labels.len(),
            });
        }
        if feature_names.len() != features.cols() {
            return Err(Error::DimensionMismatch {
                context: "feature names vs columns",
                expected: features.cols(),
                found: feature_names.len(),
            });
        }
        Ok(Self {
            features,
            labels,
            feature_names,
            normalization: None,
        })
    }

    /// Dataset with generated names `f1..fn`.
    pub fn unnamed(features: Matrix, labels: Vec<i64>) -> Result<Self> {
        let names = (1..=features.cols()).map(|j| format!("f{j}")).collect();
        Self::new(features, labels, names)
    }

    pub fn features(&self) -> &Matrix {
        &self.features
    }

    pub fn labels(&self) -> &[i64] {
        &self.labels
    }

    pub fn feature_names(&self) -> &[String] {
        &self.feature_names
    }

    pub fn normalization(&self) -> Option<&Normalization> {
        self.normalization.as_ref()
    }

    pub fn rows(&self) -> usize {
        self.features.rows()
    }

    pub fn cols(&self) -> usize {
        self.features.cols()
    }

    /// Distinct labels, ascending.
    pub fn classes(&self) -> Vec<i64> {
        let mut l = self.labels.clone();
        l.sort_unstable();
        l.dedup();
        l
    }

    /// Row indices of each class, in row order, keyed by ascending label.
    pub fn class_indices(&self) -> BTreeMap<i64, Vec<usize>> {
        let mut map: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for (i, &l) in self.labels.iter().enumerate() {
            map.entry(l).or_default().push(i);
        }
        map
    }

    pub fn select_rows(&self, idx: &[usize]) -> Dataset {
        Dataset {
            features: self.features.select_rows(idx),
            labels: idx.iter().map(|&i| self.labels[i]).collect(),
            feature_names: self.feature_names.clone(),
            normalization: self.normalization.clone(),
        }
    }

    /// Keep only the given (0-based) columns, in the given order.
    pub fn select_columns(&self, idx: &[usize]) -> Result<Dataset> {
        if idx.is_empty() {
            return Err(Error::invalid("feature subset", "[]", "must not be empty"));
        }
        if let Some(&bad) = idx.iter().find(|&&j| j >= self.cols()) {
            return Err(Error::invalid(
                "feature column",
                bad,
                "out of range for this dataset",
            ));
        }
        Ok(Dataset {
            features: self.features.select_columns(idx),
            labels: self.labels.clone(),
            feature_names: idx.iter().map(|&j| self.feature_names[j].clone()).collect(),
            normalization: self.normalization.as_ref().map(|n| n.select(idx)),
        })
    }

    pub(crate) fn with_normalized(&self, features: Matrix, norm: Normalization) -> Dataset {
        Dataset {
            features,
            labels: self.labels.clone(),
            feature_names: self.feature_names.clone(),
            normalization: Some(norm),
        }
    }

    /// Min-max scale every column to `[0, 1]`; see [`normalize`].
    pub fn normalized(&self) -> Dataset {
        normalize(self)
    }
}

/// Write `bytes` to `path` via a temporary file in the same directory, so a
/// failed write never leaves a partial file at `path`.
pub fn write_atomic(path: impl AsRef<Path>, bytes: &[u8]) -> Result<()> {
    let path = path.as_ref();
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| Error::io(path, e))?;
    tmp.write_all(bytes).map_err(|e| Error::io(path, e))?;
    tmp.persist(path).map_err(|e| Error::io(path, e.error))?;
    Ok(())
}
