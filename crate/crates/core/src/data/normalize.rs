use serde::{Deserialize, Serialize};

use super::Dataset;
use crate::matrix::Matrix;

/// Per-column `(min, max)` used for min-max scaling.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Normalization {
    pub min: Vec<f64>,
    pub max: Vec<f64>,
}

impl Normalization {
    pub fn fit(data: &Matrix) -> Self {
        let n = data.cols();
        let mut min = vec![f64::INFINITY; n];
        let mut max = vec![f64::NEG_INFINITY; n];
        for row in data.iter_rows() {
            for (j, &v) in row.iter().enumerate() {
                min[j] = min[j].min(v);
                max[j] = max[j].max(v);
            }
        }
        if data.rows() == 0 {
            min.fill(0.0);
            max.fill(0.0);
        }
        Self { min, max }
    }

    /// Scale with the recorded statistics. Constant columns map to 0 and
    /// values outside the recorded range are clamped into `[0, 1]`.
    pub fn apply(&self, data: &Matrix) -> Matrix {
        let mut out = data.clone();
        for i in 0..out.rows() {
            for (j, v) in out.row_mut(i).iter_mut().enumerate() {
                *v = scale(*v, self.min[j], self.max[j]);
            }
        }
        out
    }

    pub fn select(&self, idx: &[usize]) -> Normalization {
        Normalization {
            min: idx.iter().map(|&j| self.min[j]).collect(),
            max: idx.iter().map(|&j| self.max[j]).collect(),
        }
    }

    pub fn cols(&self) -> usize {
        self.min.len()
    }
}

fn scale(x: f64, min: f64, max: f64) -> f64 {
    let range = max - min;
    if range > 0.0 {
        ((x - min) / range).clamp(0.0, 1.0)
    } else {
        0.0
    }
}

/// Min-max scale every column to `[0, 1]` using the dataset's own statistics.
pub fn normalize(dataset: &Dataset) -> Dataset {
    let norm = Normalization::fit(dataset.features());
    let features = norm.apply(dataset.features());
    dataset.with_normalized(features, norm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn column(values: &[f64]) -> Vec<f64> {
        let m = Matrix::from_vec(values.len(), 1, values.to_vec()).unwrap();
        let d = Dataset::unnamed(m, vec![0; values.len()]).unwrap();
        normalize(&d).features().column(0).collect()
    }

    #[test]
    fn examples() {
        assert_eq!(column(&[2.0, 4.0, 6.0]), vec![0.0, 0.5, 1.0]);
        assert_eq!(column(&[3.0, 3.0, 3.0]), vec![0.0, 0.0, 0.0]);
        assert_eq!(column(&[0.0, 1.0, 0.0]), vec![0.0, 1.0, 0.0]);
    }

    #[test]
    fn records_statistics() {
        let m = Matrix::from_rows(&[[1.0, -2.0], [3.0, 2.0]]).unwrap();
        let d = normalize(&Dataset::unnamed(m, vec![0, 1]).unwrap());
        let n = d.normalization().unwrap();
        assert_eq!(n.min, vec![1.0, -2.0]);
        assert_eq!(n.max, vec![3.0, 2.0]);
    }

    #[test]
    fn apply_clamps_out_of_range() {
        let n = Normalization {
            min: vec![0.0],
            max: vec![10.0],
        };
        let m = Matrix::from_rows(&[[-5.0], [5.0], [20.0]]).unwrap();
        assert_eq!(n.apply(&m).as_slice(), &[0.0, 0.5, 1.0]);
    }

    proptest! {
        #[test]
        fn output_in_unit_interval(values in prop::collection::vec(-1e6f64..1e6, 1..40)) {
            for v in column(&values) {
                prop_assert!((0.0..=1.0).contains(&v));
            }
        }

        #[test]
        fn idempotent_on_unit_data(mut values in prop::collection::vec(0.0f64..=1.0, 1..40)) {
            values.push(0.0);
            values.push(1.0);
            let once = column(&values);
            prop_assert_eq!(&once, &values);
            prop_assert_eq!(column(&once), once);
        }
    }
}
