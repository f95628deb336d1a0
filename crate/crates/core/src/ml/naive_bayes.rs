use serde::{Deserialize, Serialize};

use super::TrainView;
use crate::features::Row;

/// Gaussian naive Bayes with a variance floor.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaussianNb {
    log_prior: [f64; 2],
    mean: [Vec<f64>; 2],
    var: [Vec<f64>; 2],
    /// Log-likelihood of an all-zero row per class, prior included.
    base: [f64; 2],
}

impl GaussianNb {
    pub(crate) fn fit(view: TrainView<'_>) -> Self {
        let d = view.x.n_cols();
        let mut count = [0usize; 2];
        let mut sum = [vec![0.0; d], vec![0.0; d]];
        for k in 0..view.len() {
            let c = usize::from(view.label(k));
            count[c] += 1;
            for (j, v) in view.x.row(view.idx[k]).entries() {
                sum[c][j] += v;
            }
        }
        let mean: [Vec<f64>; 2] = [0, 1].map(|c| sum[c].iter().map(|s| s / count[c] as f64).collect());
        // Two-pass variance; zeros contribute (0 - mean)^2 each.
        let mut sq = [vec![0.0; d], vec![0.0; d]];
        let mut nnz = [vec![0usize; d], vec![0usize; d]];
        for k in 0..view.len() {
            let c = usize::from(view.label(k));
            for (j, v) in view.x.row(view.idx[k]).entries() {
                sq[c][j] += (v - mean[c][j]).powi(2);
                nnz[c][j] += 1;
            }
        }
        let mut var: [Vec<f64>; 2] = [0, 1].map(|c| {
            (0..d)
                .map(|j| (sq[c][j] + (count[c] - nnz[c][j]) as f64 * mean[c][j].powi(2)) / count[c] as f64)
                .collect()
        });

        // Overall per-feature variance for the floor.
        let n = view.len() as f64;
        let mut max_var: f64 = 0.0;
        for j in 0..d {
            let m = (sum[0][j] + sum[1][j]) / n;
            let mut s = 0.0;
            for c in 0..2 {
                // within-class scatter plus between-class term
                s += var[c][j] * count[c] as f64 + count[c] as f64 * (mean[c][j] - m).powi(2);
            }
            max_var = max_var.max(s / n);
        }
        let eps = if max_var > 0.0 { 1e-9 * max_var } else { 1e-9 };
        for v in var.iter_mut().flatten() {
            *v += eps;
        }

        let log_prior = [0, 1].map(|c| (count[c] as f64 / n).ln());
        let base = [0, 1].map(|c| {
            log_prior[c]
                + (0..d)
                    .map(|j| {
                        -0.5 * (2.0 * std::f64::consts::PI * var[c][j]).ln() - mean[c][j].powi(2) / (2.0 * var[c][j])
                    })
                    .sum::<f64>()
        });
        GaussianNb {
            log_prior,
            mean,
            var,
            base,
        }
    }

    pub fn joint_log_likelihood(&self, row: Row<'_>) -> [f64; 2] {
        let mut out = self.base;
        for (j, x) in row.entries() {
            for (c, o) in out.iter_mut().enumerate() {
                let (m, v) = (self.mean[c][j], self.var[c][j]);
                *o += (m * m - (x - m).powi(2)) / (2.0 * v);
            }
        }
        out
    }

    pub(crate) fn predict_row(&self, row: Row<'_>) -> u8 {
        let ll = self.joint_log_likelihood(row);
        u8::from(ll[1] > ll[0])
    }

    pub fn class_log_prior(&self) -> [f64; 2] {
        self.log_prior
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::features::FeatureMatrix;
    use crate::ml::{testutil::blobs, train, Dataset, Learned, ModelParams, ModelSpec};
    use proptest::prelude::*;

    fn gnb(d: &Dataset) -> GaussianNb {
        match train(&ModelSpec::new(ModelParams::GaussianNb, 0), d).unwrap().learned {
            Learned::GaussianNb(m) => m,
            _ => unreachable!(),
        }
    }

    /// Direct per-feature Gaussian log density, no sparse shortcut.
    fn oracle(m: &GaussianNb, x: &[f64]) -> [f64; 2] {
        [0, 1].map(|c| {
            m.log_prior[c]
                + x.iter()
                    .enumerate()
                    .map(|(j, &v)| {
                        let (mu, var) = (m.mean[c][j], m.var[c][j]);
                        -0.5 * (2.0 * std::f64::consts::PI * var).ln() - (v - mu).powi(2) / (2.0 * var)
                    })
                    .sum::<f64>()
        })
    }

    #[test]
    fn sparse_shortcut_matches_direct_density() {
        let rows = vec![
            vec![0.0, 1.0, 2.0],
            vec![3.0, 0.0, 0.0],
            vec![1.0, 1.0, 0.0],
            vec![0.0, 0.0, 5.0],
        ];
        let x = FeatureMatrix::from_dense_rows(vec!["a".into(), "b".into(), "c".into()], rows.clone()).unwrap();
        let d = Dataset::unnamed(x, vec![0, 1, 1, 0]).unwrap();
        let m = gnb(&d);
        for r in &rows {
            let got = m.joint_log_likelihood(Row::Dense(r));
            let want = oracle(&m, r);
            for c in 0..2 {
                assert!((got[c] - want[c]).abs() < 1e-9 * want[c].abs().max(1.0));
            }
        }
    }

    #[test]
    fn separates_blobs() {
        let d = blobs(50, 0.5, 3);
        let m = gnb(&d);
        assert_eq!(m.predict_row(Row::Dense(&[0.1, -0.2])), 0);
        assert_eq!(m.predict_row(Row::Dense(&[5.1, 4.8])), 1);
    }

    proptest! {
        #[test]
        fn affine_rescaling_keeps_decisions(scale in 0.1f64..10.0, shift in -5.0f64..5.0, seed in 0u64..50) {
            let d = blobs(20, 1.5, seed);
            let probe: Vec<Vec<f64>> = (0..15).map(|i| vec![i as f64 * 0.4 - 0.5, 5.0 - i as f64 * 0.35]).collect();
            let m = gnb(&d);
            let before: Vec<u8> = probe.iter().map(|r| m.predict_row(Row::Dense(r))).collect();
            let tf = |r: &Vec<f64>| vec![r[0] * scale + shift, r[1] * scale + shift];
            let rows: Vec<Vec<f64>> = (0..d.len()).map(|i| tf(&d.features.row(i).to_dense(2))).collect();
            let x = FeatureMatrix::from_dense_rows(vec!["x".into(), "y".into()], rows).unwrap();
            let m2 = gnb(&Dataset::unnamed(x, d.labels.clone()).unwrap());
            let after: Vec<u8> = probe.iter().map(|r| m2.predict_row(Row::Dense(&tf(r)))).collect();
            prop_assert_eq!(before, after);
        }
    }
}
