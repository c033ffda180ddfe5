//! Experiment harness: splits, metrics and the evaluation protocols built on
//! top of feature extraction and the classifier.

mod curve;
mod metrics;
pub mod report;
mod search;
mod split;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::classifier::ClassModel;
use crate::data::{Dataset, Normalization};
use crate::error::{Error, Result};
use crate::rng::repeat_seed;
use crate::ttss::{extract_features, TtssParams};

pub use curve::{learning_curve, CurvePoint};
pub use metrics::{accuracy, mean_std, Confusion};
pub use search::{
    grid_search, parse_values, value_range, GridPoint, GridSearchResult, GridSpec, SelectionMetric,
};
pub use split::{partitions, split, Partition, SplitMode, SplitOutcome, SplitSpec};

/// Where min-max statistics come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NormalizationMode {
    /// Fit on the whole dataset before splitting.
    #[default]
    FullDataset,
    /// Fit on the training rows only; test rows are scaled with the same
    /// statistics and clamped to `[0, 1]`.
    TrainOnly,
}

impl fmt::Display for NormalizationMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NormalizationMode::FullDataset => "full-dataset",
            NormalizationMode::TrainOnly => "train-only",
        })
    }
}

impl FromStr for NormalizationMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full-dataset" | "full" => Ok(NormalizationMode::FullDataset),
            "train-only" | "strict" => Ok(NormalizationMode::TrainOnly),
            _ => Err(Error::invalid(
                "normalization",
                s,
                "expected full-dataset or train-only",
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvalReport {
    pub accuracy: f64,
    pub confusion: Confusion,
    /// Aligned with `confusion.labels()`; `None` where a class has no test rows.
    pub per_class_recall: Vec<Option<f64>>,
    /// Training rows; summed over folds for k-fold.
    pub n_train: usize,
    pub n_test: usize,
    pub folds: usize,
    pub seed: u64,
    pub split: SplitMode,
    pub params: TtssParams,
    /// 0-based columns, when a subset was evaluated.
    pub feature_subset: Option<Vec<usize>>,
}

/// Run one partition: extract, fit, predict, tally.
fn run_partition(
    dataset: &Dataset,
    train_idx: &[usize],
    test_idx: &[usize],
    classes: &[i64],
    params: &TtssParams,
    normalization: NormalizationMode,
) -> Result<(Confusion, usize, usize)> {
    if test_idx.is_empty() {
        return Err(Error::EmptyTestSet);
    }
    let train = dataset.select_rows(train_idx);
    let test = dataset.select_rows(test_idx);
    let (train_x, test_x) = match normalization {
        NormalizationMode::FullDataset => (train.features().clone(), test.features().clone()),
        NormalizationMode::TrainOnly => {
            let stats = Normalization::fit(train.features());
            (stats.apply(train.features()), stats.apply(test.features()))
        }
    };
    let train_f = extract_features(&train_x, params)?;
    let model = ClassModel::fit(&train_f, train.labels(), *params)?;
    let test_f = extract_features(&test_x, params)?;
    let predicted: Vec<i64> = model
        .predict(&test_f)?
        .into_iter()
        .map(|p| p.label)
        .collect();
    let confusion = Confusion::from_predictions(classes.to_vec(), test.labels(), &predicted)?;
    Ok((confusion, train.rows(), test.rows()))
}

/// Full pipeline: (subset) → normalize → split → extract → fit → predict → metrics.
///
/// For k-fold splits the confusion matrix pools all folds, so every row is
/// tested exactly once.
pub fn evaluate_once(
    dataset: &Dataset,
    spec: &SplitSpec,
    params: &TtssParams,
    feature_subset: Option<&[usize]>,
    normalization: NormalizationMode,
) -> Result<EvalReport> {
    let classes = dataset.classes();
    if classes.len() < 2 {
        let label = classes.first().copied().unwrap_or_default();
        return Err(Error::InsufficientClassCount {
            label,
            available: 0,
            requested: 1,
        });
    }
    let selected;
    let data = match feature_subset {
        Some(cols) => {
            selected = dataset.select_columns(cols)?;
            &selected
        }
        None => dataset,
    };
    let prepared;
    let data = match normalization {
        NormalizationMode::FullDataset => {
            prepared = data.normalized();
            &prepared
        }
        NormalizationMode::TrainOnly => data,
    };
    let parts = partitions(data, spec)?;
    let mut confusion = Confusion::new(classes.clone());
    let (mut n_train, mut n_test) = (0, 0);
    for p in &parts {
        let (c, tr, te) = run_partition(data, &p.train, &p.test, &classes, params, normalization)?;
        confusion.merge(&c)?;
        n_train += tr;
        n_test += te;
    }
    Ok(EvalReport {
        accuracy: confusion.accuracy()?,
        per_class_recall: confusion.recall(),
        confusion,
        n_train,
        n_test,
        folds: parts.len(),
        seed: spec.seed,
        split: spec.mode,
        params: *params,
        feature_subset: feature_subset.map(<[usize]>::to_vec),
    })
}

/// `evaluate_once` for seeds `spec.seed, spec.seed + 1, ...`.
pub fn evaluate_repeated(
    dataset: &Dataset,
    spec: &SplitSpec,
    params: &TtssParams,
    feature_subset: Option<&[usize]>,
    normalization: NormalizationMode,
    repeats: usize,
) -> Result<Vec<EvalReport>> {
    if repeats == 0 {
        return Err(Error::invalid("repeats", 0, "must be at least 1"));
    }
    (0..repeats)
        .map(|r| {
            let s = spec.with_seed(repeat_seed(spec.seed, r));
            evaluate_once(dataset, &s, params, feature_subset, normalization)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SubsetResult {
    /// 0-based columns.
    pub subset: Vec<usize>,
    pub mean_accuracy: f64,
    pub std_accuracy: f64,
    pub repeats: usize,
}

/// Evaluate every column subset and rank by mean accuracy, best first.
/// Equal accuracies keep their input order.
pub fn feature_subset_eval(
    dataset: &Dataset,
    subsets: &[Vec<usize>],
    spec: &SplitSpec,
    params: &TtssParams,
    normalization: NormalizationMode,
    repeats: usize,
) -> Result<Vec<SubsetResult>> {
    let mut rows = subsets
        .iter()
        .map(|s| {
            let reports =
                evaluate_repeated(dataset, spec, params, Some(s), normalization, repeats)?;
            let acc: Vec<f64> = reports.iter().map(|r| r.accuracy).collect();
            let (mean, std) = mean_std(&acc);
            Ok(SubsetResult {
                subset: s.clone(),
                mean_accuracy: mean,
                std_accuracy: std,
                repeats,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    rows.sort_by(|a, b| b.mean_accuracy.total_cmp(&a.mean_accuracy));
    Ok(rows)
}
