//! Firing-time feature extraction.
//!
//! Every feature column is served by one GLS neuron started at the shared
//! initial activity `q`. The neuron fires until its activity enters the open
//! `epsilon`-neighbourhood of the stimulus; the firing time is `N`, and the
//! extracted feature is the fraction `h / N` of visited activities
//! `A(0), ..., A(N-1)` that lie strictly above the threshold `b`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gls::{GlsNeuron, MapKind};
use crate::matrix::Matrix;

pub const DEFAULT_B: f64 = 0.89;
pub const DEFAULT_Q: f64 = 0.499;
pub const DEFAULT_EPSILON: f64 = 0.043;
pub const DEFAULT_MAX_ITERATIONS: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TtssParams {
    neuron: GlsNeuron,
    q: f64,
    epsilon: f64,
    max_iterations: u64,
}

impl TtssParams {
    pub fn new(neuron: GlsNeuron, q: f64, epsilon: f64, max_iterations: u64) -> Result<Self> {
        if !(0.0..=1.0).contains(&q) {
            return Err(Error::invalid("q", q, "must lie in [0, 1]"));
        }
        if !(epsilon > 0.0 && epsilon.is_finite()) {
            return Err(Error::invalid("epsilon", epsilon, "must be positive"));
        }
        if max_iterations < 1 {
            return Err(Error::invalid(
                "max_iterations",
                max_iterations,
                "must be at least 1",
            ));
        }
        Ok(Self {
            neuron,
            q,
            epsilon,
            max_iterations,
        })
    }

    /// Skew-tent neuron with the default iteration cap.
    pub fn skew_tent(b: f64, q: f64, epsilon: f64) -> Result<Self> {
        Self::new(GlsNeuron::skew_tent(b)?, q, epsilon, DEFAULT_MAX_ITERATIONS)
    }

    pub fn with_max_iterations(mut self, max_iterations: u64) -> Result<Self> {
        if max_iterations < 1 {
            return Err(Error::invalid(
                "max_iterations",
                max_iterations,
                "must be at least 1",
            ));
        }
        self.max_iterations = max_iterations;
        Ok(self)
    }

    pub fn neuron(&self) -> GlsNeuron {
        self.neuron
    }

    pub fn map_kind(&self) -> MapKind {
        self.neuron.kind()
    }

    pub fn b(&self) -> f64 {
        self.neuron.b()
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn max_iterations(&self) -> u64 {
        self.max_iterations
    }
}

impl Default for TtssParams {
    fn default() -> Self {
        Self {
            neuron: GlsNeuron::skew_tent(DEFAULT_B).expect("default b is valid"),
            q: DEFAULT_Q,
            epsilon: DEFAULT_EPSILON,
            max_iterations: DEFAULT_MAX_ITERATIONS,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FiringResult {
    /// Firing time.
    pub n: u64,
    /// Number of activities strictly above `b` among `A(0..n)`.
    pub h: u64,
    pub p: f64,
}

impl FiringResult {
    fn new(n: u64, h: u64) -> Self {
        let p = if n == 0 { 0.0 } else { h as f64 / n as f64 };
        Self { n, h, p }
    }
}

/// Fire one neuron at `stimulus` until the activity is within `epsilon`.
pub fn firing_time(params: &TtssParams, stimulus: f64) -> Result<FiringResult> {
    if !(0.0..=1.0).contains(&stimulus) {
        return Err(Error::invalid("stimulus", stimulus, "must lie in [0, 1]"));
    }
    let neuron = params.neuron;
    let b = neuron.b();
    let mut activity = params.q;
    let mut h = 0u64;
    for t in 0..=params.max_iterations {
        if (activity - stimulus).abs() < params.epsilon {
            return Ok(FiringResult::new(t, h));
        }
        if activity > b {
            h += 1;
        }
        activity = neuron.apply(activity);
    }
    Err(Error::NonConvergence {
        stimulus,
        max_iterations: params.max_iterations,
        row: None,
        column: None,
    })
}

/// An `m x n` matrix of firing-time features, each in `[0, 1]`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FeatureMatrix(Matrix);

impl FeatureMatrix {
    /// Wraps an existing matrix, checking that every entry is in `[0, 1]`.
    pub fn new(matrix: Matrix) -> Result<Self> {
        if let Some(v) = matrix.as_slice().iter().find(|v| !(0.0..=1.0).contains(*v)) {
            return Err(Error::invalid("feature", v, "must lie in [0, 1]"));
        }
        Ok(Self(matrix))
    }

    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        Self::new(Matrix::from_rows(rows)?)
    }

    pub fn rows(&self) -> usize {
        self.0.rows()
    }

    pub fn cols(&self) -> usize {
        self.0.cols()
    }

    pub fn row(&self, i: usize) -> &[f64] {
        self.0.row(i)
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix {
        self.0
    }
}

fn extract_row(params: &TtssParams, row: &[f64], i: usize) -> Result<Vec<f64>> {
    row.iter()
        .enumerate()
        .map(|(k, &x)| match firing_time(params, x) {
            Ok(r) => Ok(r.p),
            Err(Error::NonConvergence {
                stimulus,
                max_iterations,
                ..
            }) => Err(Error::NonConvergence {
                stimulus,
                max_iterations,
                row: Some(i),
                column: Some(k),
            }),
            Err(e) => Err(e),
        })
        .collect()
}

/// Extract the feature of every cell; column `k` is the `k`-th neuron.
///
/// Rows are processed in parallel. The output and any reported error are
/// the same as for sequential row-major evaluation: on failure the error of
/// the first failing cell is returned.
pub fn extract_features(data: &Matrix, params: &TtssParams) -> Result<FeatureMatrix> {
    let rows: Vec<Result<Vec<f64>>> = (0..data.rows())
        .into_par_iter()
        .map(|i| extract_row(params, data.row(i), i))
        .collect();
    let mut out = Vec::with_capacity(data.rows() * data.cols());
    for r in rows {
        out.extend(r?);
    }
    Ok(FeatureMatrix(Matrix::from_vec(
        data.rows(),
        data.cols(),
        out,
    )?))
}

/// Sequential variant of [`extract_features`].
pub fn extract_features_sequential(data: &Matrix, params: &TtssParams) -> Result<FeatureMatrix> {
    let mut out = Vec::with_capacity(data.rows() * data.cols());
    for (i, row) in data.iter_rows().enumerate() {
        out.extend(extract_row(params, row, i)?);
    }
    Ok(FeatureMatrix(Matrix::from_vec(
        data.rows(),
        data.cols(),
        out,
    )?))
}
