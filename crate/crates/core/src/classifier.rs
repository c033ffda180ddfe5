//! Mean-representation-vector classifier.
//!
//! Training stores, per class, the column mean of that class's feature rows.
//! Prediction labels a feature vector with the class whose mean vector has
//! the largest cosine similarity, ties going to the smaller class label.
//! Similarities within [`TIE_TOLERANCE`] of the maximum count as tied, so
//! rounding noise cannot split classes that are equal in exact arithmetic.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use crate::data::Normalization;
use crate::error::{Error, Result};
use crate::gls::{GlsNeuron, MapKind};
use crate::matrix::Matrix;
use crate::ttss::{FeatureMatrix, TtssParams};

pub const MODEL_FORMAT_VERSION: u32 = 1;
const MODEL_MAGIC: &str = "chaosnet-model";

/// Absolute slack under which two similarities are treated as equal.
pub const TIE_TOLERANCE: f64 = 1e-12;

/// Cosine similarity; 0 when either vector has zero norm.
pub fn cosine_similarity(f: &[f64], m: &[f64]) -> Result<f64> {
    if f.len() != m.len() {
        return Err(Error::DimensionMismatch {
            context: "cosine similarity",
            expected: m.len(),
            found: f.len(),
        });
    }
    if f.is_empty() {
        return Err(Error::invalid("vector length", 0, "must be at least 1"));
    }
    let dot: f64 = f.iter().zip(m).map(|(a, b)| a * b).sum();
    let nf2: f64 = f.iter().map(|a| a * a).sum();
    let nm2: f64 = m.iter().map(|a| a * a).sum();
    if nf2 == 0.0 || nm2 == 0.0 {
        return Ok(0.0);
    }
    // sqrt of the product keeps cos(f, f) == 1 exactly.
    Ok((dot / (nf2 * nm2).sqrt()).clamp(-1.0, 1.0))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Prediction {
    pub label: i64,
    /// Aligned with [`ClassModel::class_labels`].
    pub similarities: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassModel {
    class_labels: Vec<i64>,
    mean_vectors: Matrix,
    params: TtssParams,
    normalization: Option<Normalization>,
}

impl ClassModel {
    /// Per-class column means of `features`.
    pub fn fit(features: &FeatureMatrix, labels: &[i64], params: TtssParams) -> Result<Self> {
        let classes: Vec<i64> = {
            let mut l = labels.to_vec();
            l.sort_unstable();
            l.dedup();
            l
        };
        Self::fit_with_classes(features, labels, &classes, params)
    }

    /// Like [`fit`](Self::fit) but with an explicit class list; every listed
    /// class must have at least one row.
    pub fn fit_with_classes(
        features: &FeatureMatrix,
        labels: &[i64],
        classes: &[i64],
        params: TtssParams,
    ) -> Result<Self> {
        if labels.len() != features.rows() {
            return Err(Error::DimensionMismatch {
                context: "labels vs feature rows",
                expected: features.rows(),
                found: labels.len(),
            });
        }
        let mut class_labels = classes.to_vec();
        class_labels.sort_unstable();
        class_labels.dedup();
        if class_labels.len() < 2 {
            return Err(Error::TooFewClasses(class_labels.len()));
        }
        let n = features.cols();
        let index: BTreeMap<i64, usize> = class_labels
            .iter()
            .enumerate()
            .map(|(s, &l)| (l, s))
            .collect();
        let mut sums = Matrix::zeros(class_labels.len(), n);
        let mut counts = vec![0usize; class_labels.len()];
        for (i, label) in labels.iter().enumerate() {
            let Some(&s) = index.get(label) else {
                return Err(Error::invalid(
                    "label",
                    label,
                    "not among the declared classes",
                ));
            };
            counts[s] += 1;
            for (acc, v) in sums.row_mut(s).iter_mut().zip(features.row(i)) {
                *acc += v;
            }
        }
        for (s, &c) in counts.iter().enumerate() {
            if c == 0 {
                return Err(Error::EmptyClass(class_labels[s]));
            }
            let c = c as f64;
            for v in sums.row_mut(s) {
                *v /= c;
            }
        }
        Ok(Self {
            class_labels,
            mean_vectors: sums,
            params,
            normalization: None,
        })
    }

    pub fn with_normalization(mut self, normalization: Option<Normalization>) -> Self {
        self.normalization = normalization;
        self
    }

    pub fn class_labels(&self) -> &[i64] {
        &self.class_labels
    }

    pub fn mean_vectors(&self) -> &Matrix {
        &self.mean_vectors
    }

    pub fn mean_vector(&self, label: i64) -> Option<&[f64]> {
        self.class_labels
            .iter()
            .position(|&l| l == label)
            .map(|s| self.mean_vectors.row(s))
    }

    pub fn params(&self) -> &TtssParams {
        &self.params
    }

    /// Column statistics of the training data, when recorded.
    pub fn normalization(&self) -> Option<&Normalization> {
        self.normalization.as_ref()
    }

    pub fn n_features(&self) -> usize {
        self.mean_vectors.cols()
    }

    pub fn predict_one(&self, f: &[f64]) -> Result<Prediction> {
        let similarities = self
            .mean_vectors
            .iter_rows()
            .map(|m| cosine_similarity(f, m))
            .collect::<Result<Vec<_>>>()?;
        let top = similarities
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max);
        let best = similarities
            .iter()
            .position(|&v| v >= top - TIE_TOLERANCE)
            .unwrap_or(0);
        Ok(Prediction {
            label: self.class_labels[best],
            similarities,
        })
    }

    pub fn predict(&self, features: &FeatureMatrix) -> Result<Vec<Prediction>> {
        if features.cols() != self.n_features() {
            return Err(Error::DimensionMismatch {
                context: "feature columns vs model",
                expected: self.n_features(),
                found: features.cols(),
            });
        }
        (0..features.rows())
            .map(|i| self.predict_one(features.row(i)))
            .collect()
    }

    /// Text serialization; floats use shortest round-trip formatting so a
    /// reloaded model predicts bit-identically.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let p = &self.params;
        let _ = writeln!(s, "{MODEL_MAGIC}");
        let _ = writeln!(s, "format_version = {MODEL_FORMAT_VERSION}");
        let _ = writeln!(s, "map = {}", p.map_kind());
        let _ = writeln!(s, "b = {:?}", p.b());
        let _ = writeln!(s, "q = {:?}", p.q());
        let _ = writeln!(s, "epsilon = {:?}", p.epsilon());
        let _ = writeln!(s, "max_iterations = {}", p.max_iterations());
        let _ = writeln!(s, "classes = {}", self.class_labels.len());
        let _ = writeln!(s, "features = {}", self.n_features());
        let _ = writeln!(s, "labels = {}", join(self.class_labels.iter()));
        let _ = writeln!(s, "[mean_vectors]");
        for row in self.mean_vectors.iter_rows() {
            let _ = writeln!(s, "{}", join_f64(row));
        }
        if let Some(norm) = &self.normalization {
            let _ = writeln!(s, "[normalization]");
            let _ = writeln!(s, "{}", join_f64(&norm.min));
            let _ = writeln!(s, "{}", join_f64(&norm.max));
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        ModelParser::new(text).parse()
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        crate::data::write_atomic(path, self.to_text().as_bytes())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_text(&text)
    }
}

pub fn fit(features: &FeatureMatrix, labels: &[i64], params: TtssParams) -> Result<ClassModel> {
    ClassModel::fit(features, labels, params)
}

pub fn predict(model: &ClassModel, features: &FeatureMatrix) -> Result<Vec<Prediction>> {
    model.predict(features)
}

fn join<T: std::fmt::Display>(it: impl Iterator<Item = T>) -> String {
    it.map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

fn join_f64(v: &[f64]) -> String {
    v.iter()
        .map(|x| format!("{x:?}"))
        .collect::<Vec<_>>()
        .join(" ")
}

struct ModelParser<'a> {
    lines: std::iter::Peekable<std::iter::Enumerate<std::str::Lines<'a>>>,
}

impl<'a> ModelParser<'a> {
    fn new(text: &'a str) -> Self {
        Self {
            lines: text.lines().enumerate().peekable(),
        }
    }

    fn next_line(&mut self) -> Result<(usize, &'a str)> {
        for (i, line) in self.lines.by_ref() {
            let line = line.trim();
            if !line.is_empty() && !line.starts_with('#') {
                return Ok((i + 1, line));
            }
        }
        Err(Error::ModelFormat {
            line: 0,
            message: "unexpected end of file".into(),
        })
    }

    fn key(&mut self, key: &str) -> Result<(usize, &'a str)> {
        let (n, line) = self.next_line()?;
        match line.split_once('=') {
            Some((k, v)) if k.trim() == key => Ok((n, v.trim())),
            _ => Err(bad(n, format!("expected `{key} = ...`"))),
        }
    }

    fn parsed<T: std::str::FromStr>(&mut self, key: &str) -> Result<T> {
        let (n, v) = self.key(key)?;
        v.parse()
            .map_err(|_| bad(n, format!("cannot parse {key} value {v:?}")))
    }

    fn floats(&mut self, expected: usize) -> Result<Vec<f64>> {
        let (n, line) = self.next_line()?;
        let v = line
            .split_whitespace()
            .map(|t| t.parse::<f64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| bad(n, e.to_string()))?;
        if v.len() != expected {
            return Err(bad(
                n,
                format!("expected {expected} values, found {}", v.len()),
            ));
        }
        Ok(v)
    }

    fn parse(mut self) -> Result<ClassModel> {
        let (n, magic) = self.next_line()?;
        if magic != MODEL_MAGIC {
            return Err(bad(n, "missing chaosnet-model header".into()));
        }
        let version: u32 = self.parsed("format_version")?;
        if version != MODEL_FORMAT_VERSION {
            return Err(bad(n + 1, format!("unsupported format_version {version}")));
        }
        let kind: MapKind = self.parsed("map")?;
        let b: f64 = self.parsed("b")?;
        let q: f64 = self.parsed("q")?;
        let epsilon: f64 = self.parsed("epsilon")?;
        let max_iterations: u64 = self.parsed("max_iterations")?;
        let params = TtssParams::new(GlsNeuron::new(kind, b)?, q, epsilon, max_iterations)?;
        let k: usize = self.parsed("classes")?;
        let n_features: usize = self.parsed("features")?;
        let (ln, labels) = self.key("labels")?;
        let class_labels = labels
            .split_whitespace()
            .map(|t| t.parse::<i64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| bad(ln, e.to_string()))?;
        if class_labels.len() != k {
            return Err(bad(ln, format!("expected {k} labels")));
        }
        if k < 2 || class_labels.windows(2).any(|w| w[0] >= w[1]) {
            return Err(bad(
                ln,
                "labels must be at least two, strictly ascending".into(),
            ));
        }
        let (sn, section) = self.next_line()?;
        if section != "[mean_vectors]" {
            return Err(bad(sn, "expected [mean_vectors]".into()));
        }
        let mut data = Vec::with_capacity(k * n_features);
        for _ in 0..k {
            data.extend(self.floats(n_features)?);
        }
        let mean_vectors = Matrix::from_vec(k, n_features, data)?;
        let normalization = match self.next_line() {
            Ok((_, "[normalization]")) => {
                let min = self.floats(n_features)?;
                let max = self.floats(n_features)?;
                Some(Normalization { min, max })
            }
            Ok((n, other)) => return Err(bad(n, format!("unexpected line {other:?}"))),
            Err(_) => None,
        };
        Ok(ClassModel {
            class_labels,
            mean_vectors,
            params,
            normalization,
        })
    }
}

fn bad(line: usize, message: String) -> Error {
    Error::ModelFormat { line, message }
}
