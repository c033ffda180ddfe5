use serde::Serialize;

use crate::error::{Error, Result};

/// Diagonal over total.
pub fn accuracy(confusion: &[Vec<u64>]) -> Result<f64> {
    let total: u64 = confusion.iter().flatten().sum();
    if total == 0 {
        return Err(Error::EmptyTestSet);
    }
    let diag: u64 = confusion
        .iter()
        .enumerate()
        .map(|(i, row)| row.get(i).copied().unwrap_or(0))
        .sum();
    Ok(diag as f64 / total as f64)
}

/// Counts indexed `[true class][predicted class]`, both in ascending label order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Confusion {
    labels: Vec<i64>,
    counts: Vec<Vec<u64>>,
}

impl Confusion {
    pub fn new(labels: Vec<i64>) -> Self {
        let k = labels.len();
        Self {
            labels,
            counts: vec![vec![0; k]; k],
        }
    }

    pub fn from_predictions(labels: Vec<i64>, truth: &[i64], predicted: &[i64]) -> Result<Self> {
        if truth.len() != predicted.len() {
            return Err(Error::DimensionMismatch {
                context: "truth vs predictions",
                expected: truth.len(),
                found: predicted.len(),
            });
        }
        let mut c = Self::new(labels);
        for (&t, &p) in truth.iter().zip(predicted) {
            c.record(t, p)?;
        }
        Ok(c)
    }

    pub fn record(&mut self, truth: i64, predicted: i64) -> Result<()> {
        let i = self.index(truth)?;
        let j = self.index(predicted)?;
        self.counts[i][j] += 1;
        Ok(())
    }

    fn index(&self, label: i64) -> Result<usize> {
        self.labels
            .binary_search(&label)
            .map_err(|_| Error::invalid("label", label, "not in confusion matrix"))
    }

    /// Element-wise sum; both matrices must share the label list.
    pub fn merge(&mut self, other: &Confusion) -> Result<()> {
        if self.labels != other.labels {
            return Err(Error::DimensionMismatch {
                context: "confusion labels",
                expected: self.labels.len(),
                found: other.labels.len(),
            });
        }
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
        }
        Ok(())
    }

    pub fn labels(&self) -> &[i64] {
        &self.labels
    }

    pub fn counts(&self) -> &[Vec<u64>] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().flatten().sum()
    }

    pub fn accuracy(&self) -> Result<f64> {
        accuracy(&self.counts)
    }

    /// Recall per true class; `None` for classes absent from the test set.
    pub fn recall(&self) -> Vec<Option<f64>> {
        self.counts
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let n: u64 = row.iter().sum();
                (n > 0).then(|| row[i] as f64 / n as f64)
            })
            .collect()
    }
}

/// Mean and sample standard deviation (0 for fewer than two values).
pub fn mean_std(values: &[f64]) -> (f64, f64) {
    if values.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}
