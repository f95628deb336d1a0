use std::io::Write;

use super::{
    cross_validate_grid, default_grid, f1_score, oversample_indices, stratified_split_indices, Model, ModelKind,
    SeedStream,
};
use crate::error::Result;
use crate::features::{FeatureResources, FeatureSet, FittedFeatures, LabeledSample};

/// Printed next to every report: duplicated minority rows can land on both
/// sides of the split.
pub const OVERSAMPLING_NOTE: &str = "note: minority samples are oversampled before the train/test split, \
so duplicates of a training tweet can appear in the test set and test F1 is optimistic";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BenchmarkConfig {
    pub seed: u64,
    pub test_fraction: f64,
    pub folds: usize,
}

impl BenchmarkConfig {
    pub fn new(seed: u64) -> Self {
        BenchmarkConfig {
            seed,
            test_fraction: 0.3,
            folds: 5,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub feature_set: String,
    pub model: ModelKind,
    pub f1: f64,
    pub params_json: String,
    pub seed: u64,
    pub train_n: usize,
    pub test_n: usize,
}

/// One row per (feature set, model) pair.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ModelReport {
    pub rows: Vec<ReportRow>,
}

impl ModelReport {
    pub const HEADER: [&'static str; 7] = ["feature_set", "model", "f1", "params_json", "seed", "train_n", "test_n"];

    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(Self::HEADER)?;
        for r in &self.rows {
            w.write_record([
                r.feature_set.clone(),
                r.model.to_string(),
                format!("{:.6}", r.f1),
                r.params_json.clone(),
                r.seed.to_string(),
                r.train_n.to_string(),
                r.test_n.to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn get(&self, feature_set: &str, model: ModelKind) -> Option<&ReportRow> {
        self.rows
            .iter()
            .find(|r| r.feature_set == feature_set && r.model == model)
    }
}

#[derive(Debug, Clone)]
pub struct BenchmarkOutcome {
    pub report: ModelReport,
    /// Refit winners, aligned with `report.rows`.
    pub models: Vec<Model>,
}

/// Oversample, split, fit each feature set on the training side, tune
/// every model by cross-validation and score it on the held-out side.
pub fn run_benchmark(
    samples: &[LabeledSample],
    feature_sets: &[FeatureSet],
    models: &[ModelKind],
    resources: &FeatureResources,
    config: BenchmarkConfig,
) -> Result<BenchmarkOutcome> {
    let root = SeedStream::new(config.seed);
    let labels: Vec<u8> = samples.iter().map(|s| s.label).collect();
    let balanced = oversample_indices(&labels, root.named("oversample").value())?;
    let balanced_labels: Vec<u8> = balanced.iter().map(|&i| labels[i]).collect();
    let (train_pos, test_pos) =
        stratified_split_indices(&balanced_labels, config.test_fraction, root.named("split").value())?;
    let train: Vec<&LabeledSample> = train_pos.iter().map(|&p| &samples[balanced[p]]).collect();
    let test: Vec<&LabeledSample> = test_pos.iter().map(|&p| &samples[balanced[p]]).collect();
    let y_train: Vec<u8> = train.iter().map(|s| s.label).collect();
    let y_test: Vec<u8> = test.iter().map(|s| s.label).collect();
    let train_ids: Vec<String> = train.iter().map(|s| s.tweet_id.clone()).collect();

    let model_seed = root.named("model").value();
    let fold_seed = root.named("folds").value();
    let mut report = ModelReport::default();
    let mut fitted_models = Vec::new();
    for set in feature_sets {
        let fitted = FittedFeatures::fit(set, &train, resources)?;
        let x_train = fitted.transform(&train)?;
        let x_test = fitted.transform(&test)?;
        let data = super::Dataset::new(x_train, y_train.clone(), train_ids.clone())?;
        for &kind in models {
            let outcome = cross_validate_grid(&default_grid(kind, model_seed), &data, config.folds, fold_seed)?;
            let pred = outcome.model.predict(&x_test)?;
            report.rows.push(ReportRow {
                feature_set: set.to_string(),
                model: kind,
                f1: f1_score(&y_test, &pred, 1)?,
                params_json: outcome.best.params.to_json(),
                seed: config.seed,
                train_n: train.len(),
                test_n: test.len(),
            });
            fitted_models.push(outcome.model);
        }
    }
    Ok(BenchmarkOutcome {
        report,
        models: fitted_models,
    })
}
