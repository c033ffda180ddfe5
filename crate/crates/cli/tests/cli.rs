use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn chaosnet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chaosnet"))
        .args(args)
        .env_remove("CHAOSNET_THREADS")
        .output()
        .expect("spawn chaosnet")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn synth(dir: &TempDir) -> String {
    let path = dir.path().join("data.csv");
    let p = path.to_str().unwrap().to_string();
    let o = chaosnet(&["synth", "--n-per-class", "30", "--seed", "5", "-o", &p]);
    assert!(o.status.success(), "{}", stderr(&o));
    p
}

const TUNED: [&str; 6] = ["--b", "0.7", "--q", "0.05", "--epsilon", "0.07"];

#[test]
fn trajectory_prints_each_activity() {
    let o = chaosnet(&["trajectory", "--b", "0.5", "--q", "0.25", "--steps", "2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "0.25\n0.5\n1.0\n");
}

#[test]
fn invalid_epsilon_exits_one_before_reading_input() {
    let o = chaosnet(&[
        "evaluate",
        "-i",
        "/definitely/missing.csv",
        "--epsilon",
        "0",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("epsilon"), "{}", stderr(&o));
    assert!(o.stdout.is_empty());
}

#[test]
fn usage_errors_exit_one_on_a_single_line() {
    for args in [
        &["bogus"][..],
        &["evaluate"],
        &["curve", "-i", "x.csv", "--m-values", "0:3"],
        &["evaluate", "-i", "x.csv", "--split", "thirds"],
    ] {
        let o = chaosnet(args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert_eq!(stderr(&o).trim_end().lines().count(), 1, "{}", stderr(&o));
    }
}

#[test]
fn missing_file_names_the_path() {
    let o = chaosnet(&["evaluate", "-i", "/definitely/missing.csv"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("/definitely/missing.csv"));
}

#[test]
fn bad_cell_reports_row_and_column() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("bad.csv");
    std::fs::write(&path, "a,b,label\n0.1,0.2,0\n0.3,oops,1\n").unwrap();
    let o = chaosnet(&["extract", "-i", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("row 2") && err.contains("b"), "{err}");
}

#[test]
fn extract_keeps_shape() {
    let dir = TempDir::new().unwrap();
    let data = synth(&dir);
    let o = chaosnet(&["extract", "-i", &data]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 61);
    assert_eq!(lines[0], "f1,f2,f3,f4,f5,f6,f7,f8,f9,label");
    for line in &lines[1..] {
        let cells: Vec<&str> = line.split(',').collect();
        assert_eq!(cells.len(), 10);
        for c in &cells[..9] {
            let v: f64 = c.parse().unwrap();
            assert!((0.0..=1.0).contains(&v));
        }
    }
}

#[test]
fn single_point_grid_reports_that_point() {
    let dir = TempDir::new().unwrap();
    let data = synth(&dir);
    let o = chaosnet(&[
        "tune",
        "-i",
        &data,
        "--b-values",
        "0.7",
        "--q-values",
        "0.05",
        "--epsilon-values",
        "0.07",
        "--format",
        "jsonl",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stderr(&o).contains("best map=skew-tent b=0.7 q=0.05 epsilon=0.07"));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 1);
    assert!(text.starts_with(r#"{"schema":"chaosnet.grid.v1","map":"skew-tent","b":0.7,"#));
}

#[test]
fn grid_without_converged_points_exits_three() {
    let dir = TempDir::new().unwrap();
    let data = synth(&dir);
    // b = 0.5 collapses every trajectory to 0 in binary floating point.
    let o = chaosnet(&[
        "tune",
        "-i",
        &data,
        "--b-values",
        "0.5",
        "--q-values",
        "0.3",
        "--epsilon-values",
        "0.01",
        "--max-iterations",
        "1000",
    ]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
}

#[test]
fn non_convergence_exits_three() {
    let dir = TempDir::new().unwrap();
    let data = synth(&dir);
    let o = chaosnet(&[
        "extract",
        "-i",
        &data,
        "--b",
        "0.5",
        "--q",
        "0.3",
        "--max-iterations",
        "1000",
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("row"), "{}", stderr(&o));
}

#[test]
fn train_then_predict_round_trip() {
    let dir = TempDir::new().unwrap();
    let data = synth(&dir);
    let model = dir.path().join("model.txt");
    let m = model.to_str().unwrap();
    let mut args = vec!["train", "-i", &data, "-m", m];
    args.extend(TUNED);
    let o = chaosnet(&args);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = std::fs::read_to_string(&model).unwrap();
    assert!(text.starts_with("chaosnet-model\nformat_version = 1\n"));
    assert!(text.contains("[normalization]"));

    let o = chaosnet(&["predict", "-i", &data, "-m", m]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("row,label,truth,similarity_0,similarity_1")
    );
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 60);
    let correct = rows.iter().filter(|r| r[1] == r[2]).count();
    assert!(correct >= 57, "{correct}/60");

    let unlabelled = dir.path().join("unlabelled.csv");
    let stripped: String = std::fs::read_to_string(&data)
        .unwrap()
        .lines()
        .map(|l| l.rsplit_once(',').unwrap().0.to_string() + "\n")
        .collect();
    std::fs::write(&unlabelled, stripped).unwrap();
    let o = chaosnet(&[
        "predict",
        "-i",
        unlabelled.to_str().unwrap(),
        "-m",
        m,
        "--unlabelled",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text2 = stdout(&o);
    assert!(text2.starts_with("row,label,similarity_0,similarity_1\n"));
    let labels_a: Vec<&str> = rows.iter().map(|r| r[1]).collect();
    let labels_b: Vec<&str> = text2
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap())
        .collect();
    assert_eq!(labels_a, labels_b);
}

#[test]
fn predict_rejects_wrong_width() {
    let dir = TempDir::new().unwrap();
    let data = synth(&dir);
    let model = dir.path().join("model.txt");
    let m = model.to_str().unwrap();
    assert!(chaosnet(&["train", "-i", &data, "-m", m]).status.success());
    let narrow = dir.path().join("narrow.csv");
    std::fs::write(&narrow, "a,label\n0.5,0\n").unwrap();
    let o = chaosnet(&["predict", "-i", narrow.to_str().unwrap(), "-m", m]);
    assert_eq!(o.status.code(), Some(2));
}

fn assert_absent(p: &Path) {
    assert!(!p.exists(), "{} should not exist", p.display());
}

#[test]
fn failed_runs_leave_no_output_file() {
    let dir = TempDir::new().unwrap();
    let data = synth(&dir);
    let out = dir.path().join("report.csv");
    let o = chaosnet(&[
        "extract",
        "-i",
        &data,
        "--b",
        "0.5",
        "--q",
        "0.3",
        "--max-iterations",
        "1000",
        "-o",
        out.to_str().unwrap(),
    ]);
    assert!(!o.status.success());
    assert_absent(&out);
    let o = chaosnet(&[
        "evaluate",
        "-i",
        &data,
        "--split",
        "per-class:31",
        "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
    assert_absent(&out);
    let leftovers = std::fs::read_dir(dir.path()).unwrap().count();
    assert_eq!(leftovers, 1, "only the input should remain");
}

#[test]
fn evaluate_reports_every_repeat() {
    let dir = TempDir::new().unwrap();
    let data = synth(&dir);
    let mut args = vec![
        "evaluate",
        "-i",
        &data,
        "--repeats",
        "4",
        "--seed",
        "10",
        "--features",
        "1,5,7,8,9",
    ];
    args.extend(TUNED);
    let o = chaosnet(&args);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("seed,split,folds,map,b,q,epsilon,features,"));
    assert_eq!(lines.len(), 5);
    let seeds: Vec<&str> = lines[1..]
        .iter()
        .map(|l| l.split(',').next().unwrap())
        .collect();
    assert_eq!(seeds, ["10", "11", "12", "13"]);
    assert!(lines[1].contains(",1 5 7 8 9,"));
}

#[test]
fn curve_and_subsets_produce_one_row_each() {
    let dir = TempDir::new().unwrap();
    let data = synth(&dir);
    let o = chaosnet(&[
        "curve",
        "-i",
        &data,
        "--m-values",
        "1,2,3",
        "--repeats",
        "2",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert_eq!(
        text.lines().next(),
        Some("m,repeats,mean_accuracy,std_accuracy")
    );
    assert_eq!(text.lines().count(), 4);

    let o = chaosnet(&[
        "subsets", "-i", &data, "--subset", "1,2", "--subset", "3", "--format", "jsonl",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 2);
    assert!(text
        .lines()
        .all(|l| l.starts_with(r#"{"schema":"chaosnet.subsets.v1""#)));
}
