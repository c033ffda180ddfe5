use serde::Serialize;

use super::{evaluate_repeated, mean_std, NormalizationMode, SplitMode, SplitSpec};
use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::ttss::TtssParams;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurvePoint {
    /// Training rows per class.
    pub m: usize,
    pub mean_accuracy: f64,
    pub std_accuracy: f64,
    pub accuracies: Vec<f64>,
}

/// Accuracy against training rows per class. Each `m` is evaluated on
/// `repeats` random `PerClassCount(m)` splits seeded `seed, seed + 1, ...`;
/// all remaining rows form the test set.
pub fn learning_curve(
    dataset: &Dataset,
    params: &TtssParams,
    m_values: &[usize],
    repeats: usize,
    seed: u64,
    normalization: NormalizationMode,
) -> Result<Vec<CurvePoint>> {
    if m_values.is_empty() {
        return Err(Error::invalid("m values", "[]", "must not be empty"));
    }
    m_values
        .iter()
        .map(|&m| {
            let spec = SplitSpec::new(SplitMode::PerClassCount(m), seed)?;
            let reports = evaluate_repeated(dataset, &spec, params, None, normalization, repeats)?;
            let accuracies: Vec<f64> = reports.iter().map(|r| r.accuracy).collect();
            let (mean, std) = mean_std(&accuracies);
            Ok(CurvePoint {
                m,
                mean_accuracy: mean,
                std_accuracy: std,
                accuracies,
            })
        })
        .collect()
}
