use chaosnet::data::{generate_synthetic, load_csv, save_csv, LabelColumn};
use chaosnet::eval::{
    evaluate_once, feature_subset_eval, grid_search, GridSpec, NormalizationMode, SplitMode,
    SplitSpec,
};
use chaosnet::ttss::extract_features;
use chaosnet::{ClassModel, Error, TtssParams};

fn tuned() -> TtssParams {
    TtssParams::skew_tent(0.7, 0.05, 0.07).unwrap()
}

#[test]
fn csv_round_trip_then_evaluate() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("data.csv");
    let d = generate_synthetic(40, 5, 0.4, 3).unwrap();
    save_csv(&d, &path).unwrap();
    let back = load_csv(&path, &LabelColumn::Last).unwrap();
    assert_eq!(back, d);

    let spec = SplitSpec::new(SplitMode::FractionStratified(0.2), 1).unwrap();
    let r = evaluate_once(&back, &spec, &tuned(), None, NormalizationMode::FullDataset).unwrap();
    assert_eq!((r.n_train, r.n_test), (16, 64));
    assert_eq!(r.confusion.total(), 64);
    assert!(r.accuracy >= 0.95, "{}", r.accuracy);
}

#[test]
fn kfold_tests_every_row_once() {
    let d = generate_synthetic(25, 4, 0.4, 8).unwrap();
    let spec = SplitSpec::new(SplitMode::KFold(5), 2).unwrap();
    for mode in [NormalizationMode::FullDataset, NormalizationMode::TrainOnly] {
        let r = evaluate_once(&d, &spec, &tuned(), None, mode).unwrap();
        assert_eq!(r.folds, 5);
        assert_eq!(r.n_test, 50);
        assert_eq!(r.confusion.total(), 50);
        assert_eq!(r.n_train, 4 * 50);
    }
}

#[test]
fn saved_model_predicts_identically() {
    let dir = tempfile::tempdir().unwrap();
    let d = generate_synthetic(30, 6, 0.3, 11).unwrap().normalized();
    let f = extract_features(d.features(), &tuned()).unwrap();
    let model = ClassModel::fit(&f, d.labels(), tuned())
        .unwrap()
        .with_normalization(d.normalization().cloned());
    let path = dir.path().join("model.txt");
    model.save(&path).unwrap();
    let loaded = ClassModel::load(&path).unwrap();
    assert_eq!(loaded, model);
    assert_eq!(loaded.predict(&f).unwrap(), model.predict(&f).unwrap());
}

#[test]
fn subset_ranking_and_grid_agree_on_useful_columns() {
    let d = generate_synthetic(30, 3, 0.4, 4).unwrap();
    let spec = SplitSpec::new(SplitMode::PerClassCount(5), 0).unwrap();
    let ranked = feature_subset_eval(
        &d,
        &[vec![0], vec![0, 1, 2]],
        &spec,
        &tuned(),
        NormalizationMode::FullDataset,
        3,
    )
    .unwrap();
    assert_eq!(ranked[0].subset, vec![0, 1, 2]);

    let grid = GridSpec::new(vec![0.6, 0.7], vec![0.05], vec![0.07]).unwrap();
    let result = grid_search(
        &d,
        &grid,
        &spec,
        2,
        &tuned(),
        NormalizationMode::FullDataset,
    )
    .unwrap();
    assert_eq!(result.table.len(), 2);
    assert!(result.best_accuracy >= 0.95);
}

#[test]
fn impossible_protocols_are_reported() {
    let d = generate_synthetic(5, 2, 0.4, 0).unwrap();
    let spec = SplitSpec::new(SplitMode::PerClassCount(6), 0).unwrap();
    assert!(matches!(
        evaluate_once(&d, &spec, &tuned(), None, NormalizationMode::FullDataset),
        Err(Error::InsufficientClassCount { .. })
    ));
    let spec = SplitSpec::new(SplitMode::PerClassCount(5), 0).unwrap();
    let r = evaluate_once(&d, &spec, &tuned(), None, NormalizationMode::FullDataset);
    assert!(matches!(r, Err(Error::EmptyTestSet)), "{r:?}");
    let spec = SplitSpec::new(SplitMode::KFold(6), 0).unwrap();
    assert!(evaluate_once(&d, &spec, &tuned(), None, NormalizationMode::FullDataset).is_err());
    let spec = SplitSpec::new(SplitMode::FractionStratified(0.2), 0).unwrap();
    assert!(matches!(
        evaluate_once(
            &d,
            &spec,
            &tuned(),
            Some(&[2]),
            NormalizationMode::FullDataset
        ),
        Err(Error::InvalidParameter { .. })
    ));
}
