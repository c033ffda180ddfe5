use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::rng::ExperimentRng;

// Guards ceil() against products such as 0.3 * 10 = 3.0000000000000004.
const FRACTION_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "mode", content = "value", rename_all = "kebab-case")]
pub enum SplitMode {
    /// Train on `ceil(fraction * count)` rows of every class.
    FractionStratified(f64),
    /// Train on exactly `m` rows of every class.
    PerClassCount(usize),
    /// Stratified `k`-fold cross-validation.
    KFold(usize),
}

impl SplitMode {
    pub fn validate(&self) -> Result<()> {
        match *self {
            SplitMode::FractionStratified(f) if !(f > 0.0 && f < 1.0) => Err(Error::invalid(
                "train fraction",
                f,
                "must lie in the open interval (0, 1)",
            )),
            SplitMode::PerClassCount(0) => {
                Err(Error::invalid("per-class count", 0, "must be at least 1"))
            }
            SplitMode::KFold(k) if k < 2 => Err(Error::invalid("folds", k, "must be at least 2")),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for SplitMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SplitMode::FractionStratified(x) => write!(f, "fraction:{x}"),
            SplitMode::PerClassCount(m) => write!(f, "per-class:{m}"),
            SplitMode::KFold(k) => write!(f, "kfold:{k}"),
        }
    }
}

impl FromStr for SplitMode {
    type Err = Error;

    /// `fraction:0.2`, `per-class:20` or `kfold:10`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::invalid("split", s, "expected fraction:F, per-class:M or kfold:K");
        let (kind, value) = s.split_once(':').ok_or_else(bad)?;
        let mode = match kind {
            "fraction" => SplitMode::FractionStratified(value.parse().map_err(|_| bad())?),
            "per-class" => SplitMode::PerClassCount(value.parse().map_err(|_| bad())?),
            "kfold" => SplitMode::KFold(value.parse().map_err(|_| bad())?),
            _ => return Err(bad()),
        };
        mode.validate()?;
        Ok(mode)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SplitSpec {
    pub mode: SplitMode,
    pub seed: u64,
}

impl SplitSpec {
    pub fn new(mode: SplitMode, seed: u64) -> Result<Self> {
        mode.validate()?;
        Ok(Self { mode, seed })
    }

    pub fn with_seed(self, seed: u64) -> Self {
        Self { seed, ..self }
    }
}

/// Row indices of one train/test partition, each ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    pub train: Vec<usize>,
    pub test: Vec<usize>,
}

/// Random partition(s) of the dataset's rows.
///
/// Holdout modes return one partition. `KFold(k)` returns `k`, where
/// partition `i` tests on fold `i`. Classes are visited in ascending label
/// order drawing from one generator seeded with `spec.seed`.
pub fn partitions(dataset: &Dataset, spec: &SplitSpec) -> Result<Vec<Partition>> {
    spec.mode.validate()?;
    let mut rng = ExperimentRng::new(spec.seed);
    let by_class = dataset.class_indices();
    match spec.mode {
        SplitMode::FractionStratified(_) | SplitMode::PerClassCount(_) => {
            let mut train = Vec::new();
            let mut test = Vec::new();
            for (&label, idx) in &by_class {
                let take = match spec.mode {
                    SplitMode::FractionStratified(f) => {
                        ((f * idx.len() as f64) - FRACTION_SLACK).ceil().max(1.0) as usize
                    }
                    SplitMode::PerClassCount(m) => m,
                    SplitMode::KFold(_) => unreachable!(),
                };
                if take > idx.len() {
                    return Err(Error::InsufficientClassCount {
                        label,
                        available: idx.len(),
                        requested: take,
                    });
                }
                let mut shuffled = idx.clone();
                rng.shuffle(&mut shuffled);
                train.extend_from_slice(&shuffled[..take]);
                test.extend_from_slice(&shuffled[take..]);
            }
            train.sort_unstable();
            test.sort_unstable();
            Ok(vec![Partition { train, test }])
        }
        SplitMode::KFold(k) => {
            let mut folds = vec![Vec::new(); k];
            let mut next = 0usize;
            for (&label, idx) in &by_class {
                if idx.len() < k {
                    return Err(Error::InsufficientClassCount {
                        label,
                        available: idx.len(),
                        requested: k,
                    });
                }
                let mut shuffled = idx.clone();
                rng.shuffle(&mut shuffled);
                for i in shuffled {
                    folds[next % k].push(i);
                    next += 1;
                }
            }
            for f in &mut folds {
                f.sort_unstable();
            }
            Ok((0..k)
                .map(|i| {
                    let mut train: Vec<usize> = folds
                        .iter()
                        .enumerate()
                        .filter(|&(j, _)| j != i)
                        .flat_map(|(_, f)| f.iter().copied())
                        .collect();
                    train.sort_unstable();
                    Partition {
                        train,
                        test: folds[i].clone(),
                    }
                })
                .collect())
        }
    }
}

/// Result of [`split`]: either one holdout pair or `k` folds.
#[derive(Debug, Clone, PartialEq)]
#[allow(clippy::large_enum_variant)]
pub enum SplitOutcome {
    Holdout { train: Dataset, test: Dataset },
    Folds(Vec<(Dataset, Dataset)>),
}

pub fn split(dataset: &Dataset, spec: &SplitSpec) -> Result<SplitOutcome> {
    let parts = partitions(dataset, spec)?;
    let pairs: Vec<(Dataset, Dataset)> = parts
        .iter()
        .map(|p| (dataset.select_rows(&p.train), dataset.select_rows(&p.test)))
        .collect();
    Ok(match spec.mode {
        SplitMode::KFold(_) => SplitOutcome::Folds(pairs),
        _ => {
            let (train, test) = pairs.into_iter().next().expect("holdout has one partition");
            SplitOutcome::Holdout { train, test }
        }
    })
}
