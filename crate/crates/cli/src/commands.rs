use std::io::Write;
use std::path::Path;

use chaosnet::data::{self, generate_synthetic, load_csv, Dataset, LabelColumn};
use chaosnet::eval::report::{self, Format, Table};
use chaosnet::eval::{
    evaluate_repeated, feature_subset_eval, grid_search, learning_curve, mean_std, GridSpec,
    SplitSpec,
};
use chaosnet::{ttss, ClassModel, Error, GlsNeuron};

use crate::args::{InputArgs, OutputArgs};
use crate::Command;

pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::InvalidParameter { .. } => 1,
        Error::NonConvergence { .. } | Error::NoConvergedGridPoint(_) => 3,
        _ => 2,
    }
}

fn emit(out: Option<&Path>, bytes: &[u8]) -> chaosnet::Result<()> {
    match out {
        Some(p) => data::write_atomic(p, bytes),
        None => std::io::stdout().write_all(bytes).map_err(|e| Error::Io {
            path: "<stdout>".into(),
            source: e,
        }),
    }
}

fn emit_table(table: &Table, output: &OutputArgs) -> chaosnet::Result<()> {
    emit(
        output.out.as_deref(),
        table.render(output.format)?.as_bytes(),
    )
}

fn load(input: &InputArgs) -> chaosnet::Result<Dataset> {
    load_csv(&input.input, &input.label_column)
}

pub fn run(command: Command) -> chaosnet::Result<()> {
    match command {
        Command::Synth {
            n_per_class,
            n_features,
            separation,
            seed,
            out,
        } => {
            let d = generate_synthetic(n_per_class, n_features, separation, seed)?;
            emit(out.as_deref(), &data::write_csv_bytes(&d)?)
        }

        Command::Extract { input, hyper, out } => {
            let params = hyper.params()?;
            let d = load(&input)?.normalized();
            let f = ttss::extract_features(d.features(), &params)?;
            let features = Dataset::new(
                f.into_matrix(),
                d.labels().to_vec(),
                d.feature_names().to_vec(),
            )?;
            emit(out.as_deref(), &data::write_csv_bytes(&features)?)
        }

        Command::Train {
            input,
            hyper,
            model,
        } => {
            let params = hyper.params()?;
            let d = load(&input)?.normalized();
            let f = ttss::extract_features(d.features(), &params)?;
            let m = ClassModel::fit(&f, d.labels(), params)?
                .with_normalization(d.normalization().cloned());
            m.save(&model)?;
            eprintln!(
                "trained {} classes on {} rows x {} features",
                m.class_labels().len(),
                d.rows(),
                d.cols()
            );
            Ok(())
        }

        Command::Predict {
            input,
            model,
            unlabelled,
            output,
        } => {
            let model = ClassModel::load(&model)?;
            let (x, truth) = if unlabelled {
                let d = load_csv(&input.input, &LabelColumn::None)?;
                (d.features().clone(), None)
            } else {
                let d = load(&input)?;
                let truth = d.labels().to_vec();
                (d.features().clone(), Some(truth))
            };
            if x.cols() != model.n_features() {
                return Err(Error::DimensionMismatch {
                    context: "input columns vs model",
                    expected: model.n_features(),
                    found: x.cols(),
                });
            }
            let x = match model.normalization() {
                Some(n) => n.apply(&x),
                None => data::Normalization::fit(&x).apply(&x),
            };
            let f = ttss::extract_features(&x, model.params())?;
            let predictions = model.predict(&f)?;
            let table =
                report::prediction_table(&predictions, model.class_labels(), truth.as_deref());
            emit_table(&table, &output)
        }

        Command::Evaluate {
            input,
            hyper,
            protocol,
            features,
            output,
        } => {
            let params = hyper.params()?;
            let spec = SplitSpec::new(protocol.split, protocol.seed)?;
            let d = load(&input)?;
            let reports = evaluate_repeated(
                &d,
                &spec,
                &params,
                features.as_deref(),
                protocol.normalization,
                protocol.repeats as usize,
            )?;
            let table = report::evaluation_table(&reports);
            emit_table(&table, &output)?;
            let acc: Vec<f64> = reports.iter().map(|r| r.accuracy).collect();
            let (mean, std) = mean_std(&acc);
            if output.format == Format::Table || output.out.is_some() {
                eprintln!(
                    "mean accuracy over {} run(s): {mean:.4} (std {std:.4})",
                    acc.len()
                );
            }
            Ok(())
        }

        Command::Tune {
            input,
            hyper,
            protocol,
            b_values,
            q_values,
            epsilon_values,
            keep_b_equal_q,
            output,
        } => {
            let base = hyper.params()?;
            let spec = SplitSpec::new(protocol.split, protocol.seed)?;
            let mut grid = GridSpec::new(b_values, q_values, epsilon_values)?;
            grid.skip_b_equal_q = !keep_b_equal_q;
            let d = load(&input)?;
            let result = grid_search(
                &d,
                &grid,
                &spec,
                protocol.repeats as usize,
                &base,
                protocol.normalization,
            )?;
            emit_table(&report::grid_table(&result.table), &output)?;
            let b = result.best;
            eprintln!(
                "best map={} b={} q={} epsilon={} mean_accuracy={:.4}",
                b.map_kind(),
                b.b(),
                b.q(),
                b.epsilon(),
                result.best_accuracy
            );
            Ok(())
        }

        Command::Curve {
            input,
            hyper,
            m_values,
            repeats,
            seed,
            normalization,
            output,
        } => {
            let params = hyper.params()?;
            let d = load(&input)?;
            let curve = learning_curve(
                &d,
                &params,
                &m_values,
                repeats as usize,
                seed,
                normalization,
            )?;
            emit_table(&report::curve_table(&curve), &output)
        }

        Command::Subsets {
            input,
            hyper,
            protocol,
            subsets,
            output,
        } => {
            let params = hyper.params()?;
            let spec = SplitSpec::new(protocol.split, protocol.seed)?;
            let d = load(&input)?;
            let rows = feature_subset_eval(
                &d,
                &subsets,
                &spec,
                &params,
                protocol.normalization,
                protocol.repeats as usize,
            )?;
            emit_table(&report::subset_table(&rows, d.feature_names()), &output)
        }

        Command::Trajectory {
            map,
            b,
            q,
            steps,
            out,
        } => {
            let neuron = GlsNeuron::new(map, b)?;
            let traj = neuron.iterate(q, steps)?;
            let mut text = String::new();
            for v in traj.values() {
                text.push_str(&format!("{v:?}\n"));
            }
            emit(out.as_deref(), text.as_bytes())
        }
    }
}
