use serde::{Deserialize, Serialize};

use super::tree::{DecisionTree, TreeParams};
use super::TrainView;
use crate::error::{Error, Result};
use crate::features::Row;

/// Weight given to a stump with zero training error.
const PERFECT_ALPHA: f64 = 10.0;

/// Two-class SAMME over depth-1 stumps.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdaBoost {
    pub stumps: Vec<DecisionTree>,
    pub alphas: Vec<f64>,
}

impl AdaBoost {
    pub(crate) fn fit(view: TrainView<'_>, n_rounds: usize) -> Result<Self> {
        if n_rounds == 0 {
            return Err(Error::invalid("adaboost needs at least one round"));
        }
        let n = view.len();
        let mut w = vec![1.0 / n as f64; n];
        let params = TreeParams {
            max_depth: Some(1),
            max_features: None,
        };
        let mut stumps = Vec::new();
        let mut alphas = Vec::new();
        for _ in 0..n_rounds {
            let stump = DecisionTree::fit_weighted(view, &w, params, None);
            let miss: Vec<bool> = (0..n)
                .map(|k| stump.predict_row(view.x.row(view.idx[k])) != view.label(k))
                .collect();
            let total: f64 = w.iter().sum();
            let err = miss.iter().zip(&w).filter(|p| *p.0).map(|p| p.1).sum::<f64>() / total;
            if err <= 0.0 {
                stumps.push(stump);
                alphas.push(PERFECT_ALPHA);
                break;
            }
            if err >= 0.5 {
                // No better than chance: keep a lone first stump so the
                // ensemble is never empty.
                if stumps.is_empty() {
                    stumps.push(stump);
                    alphas.push(1.0);
                }
                break;
            }
            let alpha = ((1.0 - err) / err).ln();
            for (wk, &m) in w.iter_mut().zip(&miss) {
                if m {
                    *wk *= alpha.exp();
                }
            }
            let s: f64 = w.iter().sum();
            w.iter_mut().for_each(|x| *x /= s);
            stumps.push(stump);
            alphas.push(alpha);
        }
        Ok(AdaBoost { stumps, alphas })
    }

    /// Weighted vote margin; positive favours class 1.
    pub fn decision(&self, row: Row<'_>) -> f64 {
        self.stumps
            .iter()
            .zip(&self.alphas)
            .map(|(s, a)| if s.predict_row(row) == 1 { *a } else { -*a })
            .sum()
    }

    pub(crate) fn predict_row(&self, row: Row<'_>) -> u8 {
        u8::from(self.decision(row) > 0.0)
    }
}

#[cfg(test)]
mod tests {
    use crate::features::FeatureMatrix;
    use crate::ml::{accuracy, train, Dataset, Learned, ModelParams, ModelSpec};

    #[test]
    fn boosting_beats_a_single_stump_on_an_interval() {
        // Class 1 inside (3, 7): no single threshold separates it.
        let xs: Vec<f64> = (0..40).map(|i| f64::from(i) * 0.25).collect();
        let ys: Vec<u8> = xs.iter().map(|&x| u8::from(x > 3.0 && x < 7.0)).collect();
        let x = FeatureMatrix::from_dense_rows(vec!["x".into()], xs.iter().map(|&v| vec![v]).collect()).unwrap();
        let d = Dataset::unnamed(x, ys.clone()).unwrap();
        let stump = train(&ModelSpec::new(ModelParams::Adaboost { n_rounds: 1 }, 0), &d).unwrap();
        let boosted = train(&ModelSpec::new(ModelParams::Adaboost { n_rounds: 50 }, 0), &d).unwrap();
        let a1 = accuracy(&ys, &stump.predict(&d.features).unwrap()).unwrap();
        let a50 = accuracy(&ys, &boosted.predict(&d.features).unwrap()).unwrap();
        assert!(a50 > a1);
        assert_eq!(a50, 1.0);
        let Learned::Adaboost(m) = &boosted.learned else {
            unreachable!()
        };
        assert_eq!(m.stumps.len(), m.alphas.len());
        assert!(m.alphas.iter().all(|a| *a > 0.0));
    }
}
