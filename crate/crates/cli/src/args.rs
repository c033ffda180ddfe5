use std::path::PathBuf;

use chaosnet::data::LabelColumn;
use chaosnet::eval::report::Format;
use chaosnet::eval::{NormalizationMode, SplitMode};
use chaosnet::ttss::{DEFAULT_B, DEFAULT_EPSILON, DEFAULT_MAX_ITERATIONS, DEFAULT_Q};
use chaosnet::{GlsNeuron, MapKind, TtssParams};
use clap::Args;

#[derive(Debug, Clone, Args)]
pub struct HyperArgs {
    /// Neuron map: skew-tent or skew-binary.
    #[arg(long, default_value = "skew-tent", value_parser = parse_from_str::<MapKind>)]
    pub map: MapKind,
    /// Discrimination threshold / skew parameter, in (0, 1).
    #[arg(long, default_value_t = DEFAULT_B, allow_negative_numbers = true)]
    pub b: f64,
    /// Initial neural activity, in [0, 1].
    #[arg(long, default_value_t = DEFAULT_Q, allow_negative_numbers = true)]
    pub q: f64,
    /// Half-width of the stopping neighbourhood, > 0.
    #[arg(long, default_value_t = DEFAULT_EPSILON, allow_negative_numbers = true)]
    pub epsilon: f64,
    /// Iteration cap per neuron before reporting non-convergence.
    #[arg(long, default_value_t = DEFAULT_MAX_ITERATIONS)]
    pub max_iterations: u64,
}

impl HyperArgs {
    pub fn params(&self) -> chaosnet::Result<TtssParams> {
        TtssParams::new(
            GlsNeuron::new(self.map, self.b)?,
            self.q,
            self.epsilon,
            self.max_iterations,
        )
    }
}

#[derive(Debug, Clone, Args)]
pub struct InputArgs {
    /// Input CSV with a header row.
    #[arg(long, short)]
    pub input: PathBuf,
    /// Label column: a header name, a 0-based index, `last` or `none`.
    #[arg(long, default_value = "last", value_parser = parse_label_column)]
    pub label_column: LabelColumn,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Output file; standard output when omitted.
    #[arg(long, short)]
    pub out: Option<PathBuf>,
    /// Report format: csv, jsonl or table.
    #[arg(long, default_value = "csv", value_parser = parse_from_str::<Format>)]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct ProtocolArgs {
    /// fraction:F, per-class:M or kfold:K.
    #[arg(long, default_value = "fraction:0.2", value_parser = parse_from_str::<SplitMode>)]
    pub split: SplitMode,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Number of reseeded evaluations (seed, seed + 1, ...).
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub repeats: u64,
    /// Where min-max statistics come from: full-dataset or train-only.
    #[arg(long, default_value = "full-dataset", value_parser = parse_from_str::<NormalizationMode>)]
    pub normalization: NormalizationMode,
}

pub fn parse_from_str<T>(s: &str) -> Result<T, String>
where
    T: std::str::FromStr<Err = chaosnet::Error>,
{
    s.parse::<T>().map_err(|e| e.to_string())
}

fn parse_label_column(s: &str) -> Result<LabelColumn, String> {
    Ok(s.parse().expect("infallible"))
}

/// 1-based column list such as `1,5,7,8,9`, returned 0-based.
pub fn parse_feature_list(s: &str) -> Result<Vec<usize>, String> {
    let cols = s
        .split(',')
        .map(|t| match t.trim().parse::<usize>() {
            Ok(c) if c >= 1 => Ok(c - 1),
            _ => Err(format!("invalid feature number {t:?} (1-based)")),
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut sorted = cols.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != cols.len() {
        return Err(format!("duplicate feature in {s:?}"));
    }
    Ok(cols)
}

/// `a:b` (inclusive range) or `a,b,c` list of positive counts.
pub fn parse_counts(s: &str) -> Result<Vec<usize>, String> {
    let bad = || format!("invalid count list {s:?}");
    let values: Vec<usize> = if let Some((a, b)) = s.split_once(':') {
        let a: usize = a.trim().parse().map_err(|_| bad())?;
        let b: usize = b.trim().parse().map_err(|_| bad())?;
        if a > b {
            return Err(bad());
        }
        (a..=b).collect()
    } else {
        s.split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| bad()))
            .collect::<Result<_, _>>()?
    };
    if values.contains(&0) {
        return Err(format!("counts must be at least 1 in {s:?}"));
    }
    Ok(values)
}

pub fn parse_values(s: &str) -> Result<Vec<f64>, String> {
    chaosnet::eval::parse_values(s).map_err(|e| e.to_string())
}
