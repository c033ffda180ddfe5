use rayon::prelude::*;
use serde::Serialize;

use super::{evaluate_repeated, mean_std, NormalizationMode, SplitSpec};
use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::gls::GlsNeuron;
use crate::ttss::TtssParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SelectionMetric {
    #[default]
    Accuracy,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridSpec {
    pub b_values: Vec<f64>,
    pub q_values: Vec<f64>,
    pub epsilon_values: Vec<f64>,
    pub selection_metric: SelectionMetric,
    /// Drop points with `b == q`; the skew-tent orbit of `q = b` is 1, 0, 0, ...
    pub skip_b_equal_q: bool,
}

impl GridSpec {
    pub fn new(b_values: Vec<f64>, q_values: Vec<f64>, epsilon_values: Vec<f64>) -> Result<Self> {
        let g = Self {
            b_values,
            q_values,
            epsilon_values,
            selection_metric: SelectionMetric::Accuracy,
            skip_b_equal_q: true,
        };
        g.validate()?;
        Ok(g)
    }

    /// b and q over 0.05..=0.95 step 0.05, epsilon over 0.01..=0.10 step 0.01.
    pub fn coarse() -> Self {
        Self::new(
            value_range(0.05, 0.95, 0.05).expect("static range"),
            value_range(0.05, 0.95, 0.05).expect("static range"),
            value_range(0.01, 0.10, 0.01).expect("static range"),
        )
        .expect("static grid")
    }

    pub fn validate(&self) -> Result<()> {
        if self.b_values.is_empty() || self.q_values.is_empty() || self.epsilon_values.is_empty() {
            return Err(Error::invalid(
                "grid",
                "[]",
                "every value list must be non-empty",
            ));
        }
        for &b in &self.b_values {
            crate::gls::check_b(b)?;
        }
        if let Some(&q) = self.q_values.iter().find(|q| !(0.0..=1.0).contains(*q)) {
            return Err(Error::invalid("q", q, "must lie in [0, 1]"));
        }
        if let Some(&e) = self.epsilon_values.iter().find(|e| e.is_nan() || **e <= 0.0) {
            return Err(Error::invalid("epsilon", e, "must be positive"));
        }
        Ok(())
    }

    /// Grid points in b-major, then q, then epsilon order.
    pub fn points(&self, base: &TtssParams) -> Result<Vec<TtssParams>> {
        let mut out = Vec::new();
        for &b in &self.b_values {
            let neuron = GlsNeuron::new(base.map_kind(), b)?;
            for &q in &self.q_values {
                if self.skip_b_equal_q && q == b {
                    continue;
                }
                for &e in &self.epsilon_values {
                    out.push(TtssParams::new(neuron, q, e, base.max_iterations())?);
                }
            }
        }
        Ok(out)
    }
}

/// Parse `start:stop:step` (inclusive) or a comma-separated list.
pub fn parse_values(s: &str) -> Result<Vec<f64>> {
    let bad = || Error::invalid("value list", s, "expected start:stop:step or v1,v2,...");
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        [start, stop, step] => {
            let start: f64 = start.trim().parse().map_err(|_| bad())?;
            let stop: f64 = stop.trim().parse().map_err(|_| bad())?;
            let step: f64 = step.trim().parse().map_err(|_| bad())?;
            value_range(start, stop, step)
        }
        [_] => s
            .split(',')
            .map(|t| t.trim().parse::<f64>().map_err(|_| bad()))
            .collect(),
        _ => Err(bad()),
    }
}

/// `start, start + step, ...` up to `stop` inclusive, rounded to 10 decimals
/// so that accumulated error does not produce values like 0.30000000000000004.
pub fn value_range(start: f64, stop: f64, step: f64) -> Result<Vec<f64>> {
    if step.is_nan() || step <= 0.0 || !start.is_finite() || !stop.is_finite() || stop < start {
        return Err(Error::invalid(
            "range",
            format!("{start}:{stop}:{step}"),
            "need finite start <= stop and step > 0",
        ));
    }
    let n = ((stop - start) / step + 1e-9).floor() as usize;
    Ok((0..=n)
        .map(|i| ((start + i as f64 * step) * 1e10).round() / 1e10)
        .collect())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridPoint {
    pub params: TtssParams,
    /// `None` when some repeat failed to converge.
    pub mean_accuracy: Option<f64>,
    pub std_accuracy: Option<f64>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridSearchResult {
    pub best: TtssParams,
    pub best_accuracy: f64,
    pub table: Vec<GridPoint>,
}

fn better(a: &GridPoint, b: &GridPoint) -> bool {
    let (Some(x), Some(y)) = (a.mean_accuracy, b.mean_accuracy) else {
        return a.mean_accuracy.is_some();
    };
    if x != y {
        return x > y;
    }
    let key = |p: &TtssParams| (p.b(), p.q(), p.epsilon());
    let (ka, kb) = (key(&a.params), key(&b.params));
    ka.0.total_cmp(&kb.0)
        .then(ka.1.total_cmp(&kb.1))
        .then(ka.2.total_cmp(&kb.2))
        .is_lt()
}

/// Evaluate every grid point over `repeats` reseeded splits and return the
/// point with the highest mean accuracy (ties: smaller b, then q, then
/// epsilon).
///
/// Points whose extraction does not converge are kept in the table with no
/// accuracy and cannot be selected; any other error aborts the search.
pub fn grid_search(
    dataset: &Dataset,
    grid: &GridSpec,
    spec: &SplitSpec,
    repeats: usize,
    base: &TtssParams,
    normalization: NormalizationMode,
) -> Result<GridSearchResult> {
    grid.validate()?;
    let points = grid.points(base)?;
    if points.is_empty() {
        return Err(Error::invalid(
            "grid",
            "[]",
            "no points left after filtering b == q",
        ));
    }
    let table = points
        .par_iter()
        .map(
            |p| match evaluate_repeated(dataset, spec, p, None, normalization, repeats) {
                Ok(reports) => {
                    let acc: Vec<f64> = reports.iter().map(|r| r.accuracy).collect();
                    let (m, s) = mean_std(&acc);
                    Ok(GridPoint {
                        params: *p,
                        mean_accuracy: Some(m),
                        std_accuracy: Some(s),
                        error: None,
                    })
                }
                Err(e @ Error::NonConvergence { .. }) => Ok(GridPoint {
                    params: *p,
                    mean_accuracy: None,
                    std_accuracy: None,
                    error: Some(e.to_string()),
                }),
                Err(e) => Err(e),
            },
        )
        .collect::<Vec<Result<GridPoint>>>()
        .into_iter()
        .collect::<Result<Vec<_>>>()?;

    let mut best = &table[0];
    for p in &table[1..] {
        if better(p, best) {
            best = p;
        }
    }
    let Some(best_accuracy) = best.mean_accuracy else {
        return Err(Error::NoConvergedGridPoint(table.len()));
    };
    Ok(GridSearchResult {
        best: best.params,
        best_accuracy,
        table,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::generate_synthetic;
    use crate::eval::SplitMode;

    fn spec() -> SplitSpec {
        SplitSpec::new(SplitMode::PerClassCount(5), 3).unwrap()
    }

    #[test]
    fn ranges() {
        assert_eq!(value_range(0.1, 0.3, 0.1).unwrap(), vec![0.1, 0.2, 0.3]);
        assert_eq!(value_range(0.5, 0.5, 0.1).unwrap(), vec![0.5]);
        assert_eq!(parse_values("0.89, 0.5").unwrap(), vec![0.89, 0.5]);
        assert_eq!(parse_values("0.01:0.05:0.01").unwrap().len(), 5);
        assert!(parse_values("1:0:0.1").is_err());
        assert!(parse_values("0:1:0").is_err());
        assert!(parse_values("a,b").is_err());
        assert_eq!(GridSpec::coarse().b_values.len(), 19);
        assert_eq!(GridSpec::coarse().epsilon_values.len(), 10);
    }

    #[test]
    fn grid_validation() {
        assert!(GridSpec::new(vec![], vec![0.5], vec![0.01]).is_err());
        assert!(GridSpec::new(vec![1.0], vec![0.5], vec![0.01]).is_err());
        assert!(GridSpec::new(vec![0.5], vec![1.5], vec![0.01]).is_err());
        assert!(GridSpec::new(vec![0.5], vec![0.5], vec![0.0]).is_err());
    }

    #[test]
    fn single_point() {
        let d = generate_synthetic(15, 3, 0.4, 1).unwrap();
        let g = GridSpec::new(vec![0.89], vec![0.499], vec![0.043]).unwrap();
        let r = grid_search(
            &d,
            &g,
            &spec(),
            2,
            &TtssParams::default(),
            NormalizationMode::FullDataset,
        )
        .unwrap();
        assert_eq!(r.best, TtssParams::default());
        assert_eq!(r.table.len(), 1);
    }

    #[test]
    fn b_equal_q_is_filtered() {
        let g = GridSpec::new(vec![0.3, 0.6], vec![0.3], vec![0.05]).unwrap();
        let pts = g.points(&TtssParams::default()).unwrap();
        assert_eq!(pts.len(), 1);
        assert_eq!(pts[0].b(), 0.6);
    }

    #[test]
    fn best_is_maximal_with_tie_break() {
        let d = generate_synthetic(15, 3, 0.4, 2).unwrap();
        let g = GridSpec::new(vec![0.89, 0.6, 0.3], vec![0.499, 0.2], vec![0.043, 0.02]).unwrap();
        let r = grid_search(
            &d,
            &g,
            &spec(),
            2,
            &TtssParams::default(),
            NormalizationMode::FullDataset,
        )
        .unwrap();
        assert_eq!(r.table.len(), 12);
        let max = r
            .table
            .iter()
            .filter_map(|p| p.mean_accuracy)
            .fold(f64::NEG_INFINITY, f64::max);
        assert_eq!(r.best_accuracy, max);
        let first_at_max = r
            .table
            .iter()
            .filter(|p| p.mean_accuracy == Some(max))
            .min_by(|a, b| {
                a.params
                    .b()
                    .total_cmp(&b.params.b())
                    .then(a.params.q().total_cmp(&b.params.q()))
                    .then(a.params.epsilon().total_cmp(&b.params.epsilon()))
            })
            .unwrap();
        assert_eq!(first_at_max.params, r.best);
    }

    #[test]
    fn non_converging_points_are_skipped() {
        let d = generate_synthetic(10, 2, 0.4, 3).unwrap();
        // b = 0.5 collapses to 0 in binary floating point.
        let base = TtssParams::default().with_max_iterations(100_000).unwrap();
        let g = GridSpec::new(vec![0.5, 0.89], vec![0.499], vec![0.001]).unwrap();
        let r = grid_search(&d, &g, &spec(), 1, &base, NormalizationMode::FullDataset).unwrap();
        assert!(r.table[0].mean_accuracy.is_none());
        assert!(r.table[0].error.is_some());
        assert_eq!(r.best.b(), 0.89);
    }
}
