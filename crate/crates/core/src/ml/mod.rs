//! Binary win/lose classifiers, class balancing, splitting,
//! cross-validated grid search and the full benchmark pipeline.
//!
//! Six model families are available: RBF-kernel SVM (simplified SMO),
//! L2 logistic regression, CART decision tree (Gini), random forest,
//! SAMME AdaBoost over stumps, and Gaussian naive Bayes. Every model is
//! deterministic given its [`ModelSpec::seed`].

mod adaboost;
mod benchmark;
mod cv;
mod logistic;
mod metrics;
mod naive_bayes;
mod persist;
mod rng;
mod sampling;
mod svm;
mod tree;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::features::FeatureMatrix;

pub use adaboost::AdaBoost;
pub use benchmark::{run_benchmark, BenchmarkConfig, BenchmarkOutcome, ModelReport, ReportRow, OVERSAMPLING_NOTE};
pub use cv::{cross_validate_grid, default_grid, stratified_folds, CvOutcome};
pub use logistic::LogisticRegression;
pub use metrics::{accuracy, f1_score};
pub use naive_bayes::GaussianNb;
pub use rng::SeedStream;
pub use sampling::{oversample_indices, random_oversample, stratified_split, stratified_split_indices};
pub use svm::{Gram, SvmRbf};
pub use tree::{DecisionTree, RandomForest, TreeParams};

/// Feature matrix with aligned binary labels.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub features: FeatureMatrix,
    pub labels: Vec<u8>,
    pub sample_ids: Vec<String>,
}

impl Dataset {
    pub fn new(features: FeatureMatrix, labels: Vec<u8>, sample_ids: Vec<String>) -> Result<Self> {
        if labels.len() != features.n_rows() || sample_ids.len() != labels.len() {
            return Err(Error::RowMismatch {
                expected: features.n_rows(),
                found: labels.len().min(sample_ids.len()),
            });
        }
        if labels.iter().any(|&l| l > 1) {
            return Err(Error::invalid("labels must be 0 or 1"));
        }
        Ok(Dataset {
            features,
            labels,
            sample_ids,
        })
    }

    /// Ids default to the row number.
    pub fn unnamed(features: FeatureMatrix, labels: Vec<u8>) -> Result<Self> {
        let ids = (0..labels.len()).map(|i| i.to_string()).collect();
        Dataset::new(features, labels, ids)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn class_counts(&self) -> [usize; 2] {
        let pos = self.labels.iter().filter(|&&l| l == 1).count();
        [self.labels.len() - pos, pos]
    }

    pub fn select(&self, indices: &[usize]) -> Dataset {
        Dataset {
            features: self.features.select_rows(indices),
            labels: indices.iter().map(|&i| self.labels[i]).collect(),
            sample_ids: indices.iter().map(|&i| self.sample_ids[i].clone()).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    SvmRbf,
    LogisticRegression,
    DecisionTree,
    RandomForest,
    Adaboost,
    GaussianNb,
}

impl ModelKind {
    pub const ALL: [ModelKind; 6] = [
        ModelKind::SvmRbf,
        ModelKind::LogisticRegression,
        ModelKind::DecisionTree,
        ModelKind::RandomForest,
        ModelKind::Adaboost,
        ModelKind::GaussianNb,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ModelKind::SvmRbf => "svm_rbf",
            ModelKind::LogisticRegression => "logistic_regression",
            ModelKind::DecisionTree => "decision_tree",
            ModelKind::RandomForest => "random_forest",
            ModelKind::Adaboost => "adaboost",
            ModelKind::GaussianNb => "gaussian_nb",
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        let alias = match s.as_str() {
            "svm" => "svm_rbf",
            "lr" => "logistic_regression",
            "dt" => "decision_tree",
            "rf" => "random_forest",
            "ab" => "adaboost",
            "gnb" => "gaussian_nb",
            other => other,
        };
        ModelKind::ALL
            .into_iter()
            .find(|k| k.as_str() == alias)
            .ok_or_else(|| Error::invalid(format!("unknown model `{s}`")))
    }
}

/// Hyperparameters, one variant per model family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ModelParams {
    SvmRbf { c: f64, gamma: f64 },
    LogisticRegression { c: f64 },
    DecisionTree { max_depth: Option<usize> },
    RandomForest { n_trees: usize, max_depth: Option<usize> },
    Adaboost { n_rounds: usize },
    GaussianNb,
}

impl ModelParams {
    pub fn kind(&self) -> ModelKind {
        match self {
            ModelParams::SvmRbf { .. } => ModelKind::SvmRbf,
            ModelParams::LogisticRegression { .. } => ModelKind::LogisticRegression,
            ModelParams::DecisionTree { .. } => ModelKind::DecisionTree,
            ModelParams::RandomForest { .. } => ModelKind::RandomForest,
            ModelParams::Adaboost { .. } => ModelKind::Adaboost,
            ModelParams::GaussianNb => ModelKind::GaussianNb,
        }
    }

    /// Hyperparameters only, as a compact JSON object with sorted keys.
    pub fn to_json(&self) -> String {
        let mut value = serde_json::to_value(self).expect("params serialize");
        if let Some(obj) = value.as_object_mut() {
            obj.remove("kind");
        }
        value.to_string()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelSpec {
    pub params: ModelParams,
    pub seed: u64,
}

impl ModelSpec {
    pub fn new(params: ModelParams, seed: u64) -> Self {
        ModelSpec { params, seed }
    }

    pub fn kind(&self) -> ModelKind {
        self.params.kind()
    }
}

/// Learned parameters of one of the six families.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Learned {
    SvmRbf(SvmRbf),
    LogisticRegression(LogisticRegression),
    DecisionTree(DecisionTree),
    RandomForest(RandomForest),
    Adaboost(AdaBoost),
    GaussianNb(GaussianNb),
}

/// A trained classifier. Immutable and shareable across threads.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Model {
    pub spec: ModelSpec,
    pub n_features: usize,
    pub learned: Learned,
}

impl Model {
    pub fn predict(&self, features: &FeatureMatrix) -> Result<Vec<u8>> {
        if features.n_cols() != self.n_features {
            return Err(Error::invalid(format!(
                "model expects {} features, got {}",
                self.n_features,
                features.n_cols()
            )));
        }
        let rows: Vec<usize> = (0..features.n_rows()).collect();
        Ok(self.predict_rows(features, &rows))
    }

    pub(crate) fn predict_rows(&self, x: &FeatureMatrix, rows: &[usize]) -> Vec<u8> {
        use rayon::prelude::*;
        rows.par_iter()
            .map(|&i| {
                let row = x.row(i);
                match &self.learned {
                    Learned::SvmRbf(m) => m.predict_row(row),
                    Learned::LogisticRegression(m) => m.predict_row(row),
                    Learned::DecisionTree(m) => m.predict_row(row),
                    Learned::RandomForest(m) => m.predict_row(row),
                    Learned::Adaboost(m) => m.predict_row(row),
                    Learned::GaussianNb(m) => m.predict_row(row),
                }
            })
            .collect()
    }
}

/// Training rows `idx` of `x`, optionally with a precomputed RBF Gram
/// matrix over all rows of `x`.
#[derive(Clone, Copy)]
pub(crate) struct TrainView<'a> {
    pub x: &'a FeatureMatrix,
    pub y: &'a [u8],
    pub idx: &'a [usize],
    pub gram: Option<&'a Gram>,
}

impl TrainView<'_> {
    pub fn len(&self) -> usize {
        self.idx.len()
    }

    pub fn label(&self, k: usize) -> u8 {
        self.y[self.idx[k]]
    }
}

pub(crate) fn validate(view: &TrainView<'_>) -> Result<()> {
    if view.idx.is_empty() {
        return Err(Error::NoData("empty training set".into()));
    }
    let pos = view.idx.iter().filter(|&&i| view.y[i] == 1).count();
    if pos == 0 || pos == view.idx.len() {
        return Err(Error::invalid("training labels are all one class"));
    }
    if !view.x.all_finite() {
        return Err(Error::invalid("training features contain non-finite values"));
    }
    Ok(())
}

pub(crate) fn fit_view(spec: &ModelSpec, view: TrainView<'_>) -> Result<Model> {
    validate(&view)?;
    let stream = SeedStream::new(spec.seed);
    let learned = match spec.params {
        ModelParams::SvmRbf { c, gamma } => Learned::SvmRbf(SvmRbf::fit(view, c, gamma, stream)?),
        ModelParams::LogisticRegression { c } => Learned::LogisticRegression(LogisticRegression::fit(view, c)?),
        ModelParams::DecisionTree { max_depth } => Learned::DecisionTree(DecisionTree::fit_unweighted(
            view,
            TreeParams {
                max_depth,
                max_features: None,
            },
        )),
        ModelParams::RandomForest { n_trees, max_depth } => {
            Learned::RandomForest(RandomForest::fit(view, n_trees, max_depth, stream)?)
        }
        ModelParams::Adaboost { n_rounds } => Learned::Adaboost(AdaBoost::fit(view, n_rounds)?),
        ModelParams::GaussianNb => Learned::GaussianNb(GaussianNb::fit(view)),
    };
    Ok(Model {
        spec: *spec,
        n_features: view.x.n_cols(),
        learned,
    })
}

/// Trains `spec` on every row of `data`.
pub fn train(spec: &ModelSpec, data: &Dataset) -> Result<Model> {
    let idx: Vec<usize> = (0..data.len()).collect();
    fit_view(
        spec,
        TrainView {
            x: &data.features,
            y: &data.labels,
            idx: &idx,
            gram: None,
        },
    )
}

pub fn predict(model: &Model, features: &FeatureMatrix) -> Result<Vec<u8>> {
    model.predict(features)
}

pub use persist::{model_from_bytes, model_to_bytes, BLOB_MAGIC};

#[cfg(test)]
pub(crate) mod testutil {
    use super::*;
    use rand::Rng;
    use rand_distr::{Distribution, Normal};

    /// Two 2-D Gaussian blobs centred at (0,0) (label 0) and (5,5) (label 1).
    pub fn blobs(n_per_class: usize, sigma: f64, seed: u64) -> Dataset {
        let mut rng = SeedStream::new(seed).rng();
        let noise = Normal::new(0.0, sigma).unwrap();
        let mut rows = Vec::new();
        let mut labels = Vec::new();
        for i in 0..2 * n_per_class {
            let label = (i % 2) as u8;
            let c = 5.0 * f64::from(label);
            rows.push(vec![c + noise.sample(&mut rng), c + noise.sample(&mut rng)]);
            labels.push(label);
        }
        let _: f64 = rng.random();
        let x = FeatureMatrix::from_dense_rows(vec!["x".into(), "y".into()], rows).unwrap();
        Dataset::unnamed(x, labels).unwrap()
    }
}
