use rand::seq::SliceRandom;
use rayon::prelude::*;

use super::svm::KERNEL_CACHE_LIMIT;
use super::{f1_score, fit_view, Dataset, Gram, Model, ModelKind, ModelParams, ModelSpec, SeedStream, TrainView};
use crate::error::{Error, Result};

/// Hyperparameter grid for `kind`, in declaration order.
pub fn default_grid(kind: ModelKind, seed: u64) -> Vec<ModelSpec> {
    const DEPTHS: [Option<usize>; 3] = [Some(5), Some(10), None];
    let params: Vec<ModelParams> = match kind {
        ModelKind::LogisticRegression => [0.01, 0.1, 1.0, 10.0]
            .into_iter()
            .map(|c| ModelParams::LogisticRegression { c })
            .collect(),
        ModelKind::DecisionTree => DEPTHS
            .into_iter()
            .map(|max_depth| ModelParams::DecisionTree { max_depth })
            .collect(),
        ModelKind::RandomForest => [50, 100]
            .into_iter()
            .flat_map(|n_trees| {
                DEPTHS
                    .into_iter()
                    .map(move |max_depth| ModelParams::RandomForest { n_trees, max_depth })
            })
            .collect(),
        ModelKind::Adaboost => [50, 100]
            .into_iter()
            .map(|n_rounds| ModelParams::Adaboost { n_rounds })
            .collect(),
        ModelKind::SvmRbf => [0.1, 1.0, 10.0]
            .into_iter()
            .flat_map(|c| {
                [0.01, 0.1, 1.0]
                    .into_iter()
                    .map(move |gamma| ModelParams::SvmRbf { c, gamma })
            })
            .collect(),
        ModelKind::GaussianNb => vec![ModelParams::GaussianNb],
    };
    params.into_iter().map(|p| ModelSpec::new(p, seed)).collect()
}

/// `k` disjoint sorted test folds. Each class is shuffled and dealt
/// round-robin, so fold class counts differ by at most one.
pub fn stratified_folds(labels: &[u8], k: usize, seed: u64) -> Result<Vec<Vec<usize>>> {
    if k < 2 {
        return Err(Error::invalid("cross-validation needs k >= 2"));
    }
    if labels.len() < k {
        return Err(Error::invalid(format!(
            "{} samples cannot fill {k} folds",
            labels.len()
        )));
    }
    let stream = SeedStream::new(seed);
    let mut folds = vec![Vec::new(); k];
    let mut next = 0;
    for class in [0u8, 1] {
        let mut members: Vec<usize> = (0..labels.len()).filter(|&i| labels[i] == class).collect();
        if members.len() < k {
            return Err(Error::invalid(format!(
                "class {class} has {} samples, fewer than {k} folds",
                members.len()
            )));
        }
        members.shuffle(&mut stream.derive(u64::from(class)).rng());
        for i in members {
            folds[next % k].push(i);
            next += 1;
        }
    }
    for f in &mut folds {
        f.sort_unstable();
    }
    Ok(folds)
}

#[derive(Debug, Clone)]
pub struct CvOutcome {
    pub best: ModelSpec,
    /// Mean fold F1 per grid point, in grid order.
    pub scores: Vec<f64>,
    /// The winner refit on the whole training set.
    pub model: Model,
}

/// Scores every grid point by mean F1 over `k` stratified folds, picks the
/// best (earliest on ties) and refits it on all of `train`.
pub fn cross_validate_grid(grid: &[ModelSpec], train: &Dataset, k: usize, seed: u64) -> Result<CvOutcome> {
    if grid.is_empty() {
        return Err(Error::invalid("empty hyperparameter grid"));
    }
    let folds = stratified_folds(&train.labels, k, seed)?;
    let n = train.len();
    let fold_train: Vec<Vec<usize>> = folds
        .iter()
        .map(|test| {
            let mut in_test = vec![false; n];
            test.iter().for_each(|&i| in_test[i] = true);
            (0..n).filter(|&i| !in_test[i]).collect()
        })
        .collect();
    let wants_gram = grid.iter().any(|s| s.kind() == ModelKind::SvmRbf) && n <= KERNEL_CACHE_LIMIT;
    let gram = wants_gram.then(|| Gram::compute(&train.features));

    let mut scores = Vec::with_capacity(grid.len());
    for spec in grid {
        let per_fold: Vec<f64> = folds
            .par_iter()
            .zip(&fold_train)
            .map(|(test, tr)| -> Result<f64> {
                let view = TrainView {
                    x: &train.features,
                    y: &train.labels,
                    idx: tr,
                    gram: gram.as_ref(),
                };
                let model = fit_view(spec, view)?;
                let pred = model.predict_rows(&train.features, test);
                let truth: Vec<u8> = test.iter().map(|&i| train.labels[i]).collect();
                f1_score(&truth, &pred, 1)
            })
            .collect::<Result<_>>()?;
        scores.push(per_fold.iter().sum::<f64>() / k as f64);
    }

    let mut best = 0;
    for (i, s) in scores.iter().enumerate() {
        if *s > scores[best] {
            best = i;
        }
    }
    let all: Vec<usize> = (0..n).collect();
    let model = fit_view(
        &grid[best],
        TrainView {
            x: &train.features,
            y: &train.labels,
            idx: &all,
            gram: gram.as_ref(),
        },
    )?;
    Ok(CvOutcome {
        best: grid[best],
        scores,
        model,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ml::testutil::blobs;

    #[test]
    fn fold_sizes() {
        let labels: Vec<u8> = (0..10).map(|i| (i % 2) as u8).collect();
        let folds = stratified_folds(&labels, 5, 1).unwrap();
        assert!(folds.iter().all(|f| f.len() == 2));
        for f in &folds {
            assert_eq!(f.iter().filter(|&&i| labels[i] == 1).count(), 1);
        }
        let mut all: Vec<usize> = folds.concat();
        all.sort_unstable();
        assert_eq!(all, (0..10).collect::<Vec<_>>());
        assert!(stratified_folds(&[0, 0, 0, 1, 1, 1, 1, 1, 1, 1], 5, 1).is_err());
    }

    #[test]
    fn single_point_grid_is_selected() {
        let d = blobs(20, 0.5, 1);
        let grid = vec![ModelSpec::new(ModelParams::GaussianNb, 0)];
        let out = cross_validate_grid(&grid, &d, 5, 2).unwrap();
        assert_eq!(out.best, grid[0]);
        assert_eq!(out.scores.len(), 1);
    }

    #[test]
    fn ties_go_to_first_declared() {
        // Both depths separate blobs perfectly.
        let d = blobs(20, 0.3, 1);
        let grid = vec![
            ModelSpec::new(ModelParams::DecisionTree { max_depth: Some(10) }, 0),
            ModelSpec::new(ModelParams::DecisionTree { max_depth: Some(5) }, 0),
        ];
        let out = cross_validate_grid(&grid, &d, 5, 2).unwrap();
        assert_eq!(out.scores[0], out.scores[1]);
        assert_eq!(out.best, grid[0]);
    }

    #[test]
    fn grids_have_documented_sizes() {
        let sizes: Vec<usize> = ModelKind::ALL.iter().map(|&k| default_grid(k, 0).len()).collect();
        assert_eq!(sizes, [9, 4, 3, 6, 2, 1]);
        assert_eq!(
            default_grid(ModelKind::SvmRbf, 0)[1].params,
            ModelParams::SvmRbf { c: 0.1, gamma: 0.1 }
        );
    }
}
