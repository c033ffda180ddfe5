use super::Dataset;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rng::ExperimentRng;

/// Two well-separated classes for desk-scale experiments.
///
/// Class 0 features are uniform on `[0, 0.5 - separation / 2]` and class 1
/// features on `[0.5 + separation / 2, 1]`. The first `n_per_class` rows are
/// class 0, the rest class 1; values are drawn row by row.
pub fn generate_synthetic(
    n_per_class: usize,
    n_features: usize,
    separation: f64,
    seed: u64,
) -> Result<Dataset> {
    if n_per_class < 1 {
        return Err(Error::invalid(
            "n_per_class",
            n_per_class,
            "must be at least 1",
        ));
    }
    if n_features < 1 {
        return Err(Error::invalid(
            "n_features",
            n_features,
            "must be at least 1",
        ));
    }
    if !(separation > 0.0 && separation < 1.0) {
        return Err(Error::invalid(
            "separation",
            separation,
            "must lie in the open interval (0, 1)",
        ));
    }
    let half = separation / 2.0;
    let ranges = [(0.0, 0.5 - half), (0.5 + half, 1.0)];
    let mut rng = ExperimentRng::new(seed);
    let mut data = Vec::with_capacity(2 * n_per_class * n_features);
    let mut labels = Vec::with_capacity(2 * n_per_class);
    for (label, &(lo, hi)) in ranges.iter().enumerate() {
        for _ in 0..n_per_class {
            for _ in 0..n_features {
                data.push(rng.uniform(lo, hi));
            }
            labels.push(label as i64);
        }
    }
    let m = Matrix::from_vec(2 * n_per_class, n_features, data)?;
    Dataset::unnamed(m, labels)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shape_and_balance() {
        let d = generate_synthetic(50, 9, 0.4, 7).unwrap();
        assert_eq!((d.rows(), d.cols()), (100, 9));
        assert_eq!(d.labels().iter().filter(|&&l| l == 0).count(), 50);
        for (row, &l) in d.features().iter_rows().zip(d.labels()) {
            for &v in row {
                if l == 0 {
                    assert!((0.0..=0.3).contains(&v));
                } else {
                    assert!((0.7..=1.0).contains(&v));
                }
            }
        }
    }

    #[test]
    fn wide_separation() {
        let d = generate_synthetic(20, 3, 0.9, 1).unwrap();
        for (row, &l) in d.features().iter_rows().zip(d.labels()) {
            for &v in row {
                assert!(if l == 0 {
                    v <= 0.05 + 1e-12
                } else {
                    v >= 0.95 - 1e-12
                });
            }
        }
    }

    #[test]
    fn seeded() {
        assert_eq!(
            generate_synthetic(10, 4, 0.2, 99).unwrap(),
            generate_synthetic(10, 4, 0.2, 99).unwrap()
        );
        assert_ne!(
            generate_synthetic(10, 4, 0.2, 99).unwrap(),
            generate_synthetic(10, 4, 0.2, 100).unwrap()
        );
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(generate_synthetic(0, 3, 0.4, 1).is_err());
        assert!(generate_synthetic(3, 0, 0.4, 1).is_err());
        assert!(generate_synthetic(3, 3, 0.0, 1).is_err());
        assert!(generate_synthetic(3, 3, 1.0, 1).is_err());
    }
}
