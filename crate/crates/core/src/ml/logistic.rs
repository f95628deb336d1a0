use serde::{Deserialize, Serialize};

use super::TrainView;
use crate::error::{Error, Result};
use crate::features::Row;

pub const MAX_EPOCHS: usize = 5000;
pub const GRAD_TOL: f64 = 1e-6;
const CHECK_EVERY: usize = 10;

/// L2-regularized logistic regression. Minimizes
/// `mean logloss + ||w||² / (2·C·n)`; the intercept is not penalized.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LogisticRegression {
    pub weights: Vec<f64>,
    pub intercept: f64,
    pub epochs: usize,
}

fn sigmoid(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

impl LogisticRegression {
    pub(crate) fn fit(view: TrainView<'_>, c: f64) -> Result<Self> {
        if !(c > 0.0 && c.is_finite()) {
            return Err(Error::invalid("logistic regression C must be positive"));
        }
        let d = view.x.n_cols();
        let n = view.len() as f64;
        let lambda = 1.0 / (c * n);
        let max_norm = view
            .idx
            .iter()
            .map(|&i| view.x.row(i).squared_norm())
            .fold(0.0, f64::max);
        let step = 1.0 / (0.25 * (max_norm + 1.0) + lambda);

        // Parameters are [w.., b].
        let gradient = |theta: &[f64], grad: &mut [f64]| {
            grad.iter_mut().for_each(|g| *g = 0.0);
            for k in 0..view.len() {
                let row = view.x.row(view.idx[k]);
                let z = row.dot_dense(&theta[..d]) + theta[d];
                let r = (sigmoid(z) - f64::from(view.label(k))) / n;
                for (j, v) in row.entries() {
                    grad[j] += r * v;
                }
                grad[d] += r;
            }
            for j in 0..d {
                grad[j] += lambda * theta[j];
            }
        };

        let mut theta = vec![0.0; d + 1];
        let mut prev = theta.clone();
        let mut look = theta.clone();
        let mut grad = vec![0.0; d + 1];
        let mut t: f64 = 1.0;
        let mut epochs = 0;
        while epochs < MAX_EPOCHS {
            // Convergence is judged at the iterate itself, every few epochs.
            if epochs % CHECK_EVERY == 0 {
                gradient(&theta, &mut grad);
                if grad.iter().map(|g| g * g).sum::<f64>().sqrt() < GRAD_TOL {
                    break;
                }
            }
            epochs += 1;
            gradient(&look, &mut grad);
            prev.copy_from_slice(&theta);
            for j in 0..=d {
                theta[j] = look[j] - step * grad[j];
            }
            // Restart momentum when the step points uphill.
            let uphill: f64 = grad
                .iter()
                .zip(theta.iter().zip(&prev))
                .map(|(g, (a, b))| g * (a - b))
                .sum();
            if uphill > 0.0 {
                t = 1.0;
            }
            let t_next = (1.0 + (1.0 + 4.0 * t * t).sqrt()) / 2.0;
            let beta = (t - 1.0) / t_next;
            for j in 0..=d {
                look[j] = theta[j] + beta * (theta[j] - prev[j]);
            }
            t = t_next;
        }
        let intercept = theta.pop().expect("bias slot");
        Ok(LogisticRegression {
            weights: theta,
            intercept,
            epochs,
        })
    }

    pub fn decision(&self, row: Row<'_>) -> f64 {
        row.dot_dense(&self.weights) + self.intercept
    }

    pub(crate) fn predict_row(&self, row: Row<'_>) -> u8 {
        u8::from(self.decision(row) > 0.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::features::FeatureMatrix;
    use crate::ml::{train, Dataset, Learned, ModelParams, ModelSpec};

    fn fit(d: &Dataset, c: f64) -> LogisticRegression {
        match train(&ModelSpec::new(ModelParams::LogisticRegression { c }, 0), d)
            .unwrap()
            .learned
        {
            Learned::LogisticRegression(m) => m,
            _ => unreachable!(),
        }
    }

    #[test]
    fn reaches_stationary_point() {
        // Overlapping 1-D classes have a finite optimum.
        let xs = [0.0, 1.0, 2.0, 3.0, 1.5, 2.5, 3.5, 4.5];
        let ys = [0, 0, 0, 0, 1, 1, 1, 1];
        let x = FeatureMatrix::from_dense_rows(vec!["x".into()], xs.iter().map(|&v| vec![v]).collect()).unwrap();
        let d = Dataset::unnamed(x, ys.to_vec()).unwrap();
        let m = fit(&d, 1.0);
        assert!(m.epochs < MAX_EPOCHS);
        // Independent check of the gradient at the solution.
        let n = xs.len() as f64;
        let (mut gw, mut gb) = (m.weights[0] / n, 0.0);
        for (&xv, &yv) in xs.iter().zip(&ys) {
            let p = 1.0 / (1.0 + (-(m.weights[0] * xv + m.intercept)).exp());
            gw += (p - f64::from(yv)) * xv / n;
            gb += (p - f64::from(yv)) / n;
        }
        assert!((gw * gw + gb * gb).sqrt() < 1e-5);
        assert!(m.weights[0] > 0.0);
    }

    #[test]
    fn stronger_regularization_shrinks_weights() {
        let xs = [0.0, 1.0, 2.0, 3.0, 1.5, 2.5, 3.5, 4.5];
        let x = FeatureMatrix::from_dense_rows(vec!["x".into()], xs.iter().map(|&v| vec![v]).collect()).unwrap();
        let d = Dataset::unnamed(x, vec![0, 0, 0, 0, 1, 1, 1, 1]).unwrap();
        assert!(fit(&d, 0.01).weights[0].abs() < fit(&d, 10.0).weights[0].abs());
    }
}
