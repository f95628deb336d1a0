use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{SeedStream, TrainView};
use crate::error::{Error, Result};
use crate::features::{FeatureMatrix, Row};

pub const TOLERANCE: f64 = 1e-3;
pub const MAX_PASSES: usize = 10;
/// Hard cap on full sweeps over the training set.
pub const MAX_SWEEPS: usize = 100;
/// Largest training set for which the kernel matrix is held in memory.
pub const KERNEL_CACHE_LIMIT: usize = 6000;
const MIN_ALPHA_STEP: f64 = 1e-5;

/// Pairwise dot products of every row of a matrix, reusable for any γ.
#[derive(Debug, Clone)]
pub struct Gram {
    n: usize,
    norms: Vec<f64>,
    dots: Vec<f64>,
}

impl Gram {
    pub fn compute(x: &FeatureMatrix) -> Gram {
        let n = x.n_rows();
        let norms: Vec<f64> = (0..n).map(|i| x.row(i).squared_norm()).collect();
        let upper: Vec<Vec<f64>> = (0..n)
            .into_par_iter()
            .map(|i| (i..n).map(|j| x.row(i).dot(x.row(j))).collect())
            .collect();
        let mut dots = vec![0.0; n * n];
        for (i, row) in upper.into_iter().enumerate() {
            for (off, v) in row.into_iter().enumerate() {
                dots[i * n + i + off] = v;
                dots[(i + off) * n + i] = v;
            }
        }
        Gram { n, norms, dots }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    fn dot(&self, i: usize, j: usize) -> f64 {
        self.dots[i * self.n + j]
    }
}

fn rbf(gamma: f64, norm_a: f64, norm_b: f64, dot: f64) -> f64 {
    (-gamma * (norm_a + norm_b - 2.0 * dot).max(0.0)).exp()
}

/// Kernel values among training positions, cached or computed per row.
enum Kernel<'a> {
    Cached {
        m: usize,
        k: Vec<f64>,
    },
    Direct {
        view: TrainView<'a>,
        norms: Vec<f64>,
        gamma: f64,
    },
}

impl Kernel<'_> {
    fn build(view: TrainView<'_>, gamma: f64) -> Kernel<'_> {
        let m = view.len();
        if m > KERNEL_CACHE_LIMIT {
            let norms = view.idx.iter().map(|&i| view.x.row(i).squared_norm()).collect();
            return Kernel::Direct { view, norms, gamma };
        }
        let k: Vec<f64> = match view.gram {
            Some(g) => (0..m * m)
                .into_par_iter()
                .map(|p| {
                    let (a, b) = (view.idx[p / m], view.idx[p % m]);
                    rbf(gamma, g.norms[a], g.norms[b], g.dot(a, b))
                })
                .collect(),
            None => {
                let local = Gram::compute(&view.x.select_rows(view.idx));
                (0..m * m)
                    .into_par_iter()
                    .map(|p| {
                        let (a, b) = (p / m, p % m);
                        rbf(gamma, local.norms[a], local.norms[b], local.dot(a, b))
                    })
                    .collect()
            }
        };
        Kernel::Cached { m, k }
    }

    fn get(&self, a: usize, b: usize) -> f64 {
        match self {
            Kernel::Cached { m, k } => k[a * m + b],
            Kernel::Direct { view, norms, gamma } => {
                let dot = view.x.row(view.idx[a]).dot(view.x.row(view.idx[b]));
                rbf(*gamma, norms[a], norms[b], dot)
            }
        }
    }

    fn row_into(&self, a: usize, out: &mut Vec<f64>) {
        match self {
            Kernel::Cached { m, k } => {
                out.clear();
                out.extend_from_slice(&k[a * m..(a + 1) * m]);
            }
            Kernel::Direct { view, .. } => {
                out.clear();
                out.extend((0..view.len()).map(|b| self.get(a, b)));
            }
        }
    }
}

/// Soft-margin RBF support vector machine trained by simplified SMO.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SvmRbf {
    pub gamma: f64,
    pub bias: f64,
    /// `alpha_k · y_k` per support vector.
    pub coefficients: Vec<f64>,
    support: Vec<Vec<(u32, f64)>>,
    support_norms: Vec<f64>,
    pub sweeps: usize,
}

/// Mean of `y - g` over free vectors; without any, the midpoint of the
/// interval the bounded vectors allow.
fn final_bias(alpha: &[f64], y: &[f64], g: &[f64], c: f64) -> Option<f64> {
    let (mut free_sum, mut n_free) = (0.0, 0usize);
    let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
    for k in 0..alpha.len() {
        let v = y[k] - g[k];
        if alpha[k] > 0.0 && alpha[k] < c {
            free_sum += v;
            n_free += 1;
        } else if (alpha[k] == 0.0) == (y[k] > 0.0) {
            lo = lo.max(v);
        } else {
            hi = hi.min(v);
        }
    }
    if n_free > 0 {
        Some(free_sum / n_free as f64)
    } else if lo.is_finite() && hi.is_finite() {
        Some((lo + hi) / 2.0)
    } else {
        None
    }
}

impl SvmRbf {
    pub(crate) fn fit(view: TrainView<'_>, c: f64, gamma: f64, stream: SeedStream) -> Result<Self> {
        if !(c > 0.0 && c.is_finite() && gamma > 0.0 && gamma.is_finite()) {
            return Err(Error::invalid("svm needs positive C and gamma"));
        }
        let m = view.len();
        let kernel = Kernel::build(view, gamma);
        let y: Vec<f64> = (0..m).map(|k| if view.label(k) == 1 { 1.0 } else { -1.0 }).collect();
        let mut rng = stream.named("smo").rng();
        let mut alpha = vec![0.0; m];
        // g[k] = sum_l alpha_l y_l K(l, k), without the bias.
        let mut g = vec![0.0; m];
        let mut b = 0.0;
        let (mut row_i, mut row_j) = (Vec::new(), Vec::new());
        let mut passes = 0;
        let mut sweeps = 0;
        while passes < MAX_PASSES && sweeps < MAX_SWEEPS {
            let mut changed = 0;
            for i in 0..m {
                let e_i = g[i] + b - y[i];
                let r = y[i] * e_i;
                if !((r < -TOLERANCE && alpha[i] < c) || (r > TOLERANCE && alpha[i] > 0.0)) {
                    continue;
                }
                let mut j = rng.random_range(0..m - 1);
                if j >= i {
                    j += 1;
                }
                let e_j = g[j] + b - y[j];
                let (ai, aj) = (alpha[i], alpha[j]);
                let (lo, hi) = if y[i] != y[j] {
                    ((aj - ai).max(0.0), (c + aj - ai).min(c))
                } else {
                    ((ai + aj - c).max(0.0), (ai + aj).min(c))
                };
                if lo >= hi {
                    continue;
                }
                let (k_ii, k_jj, k_ij) = (kernel.get(i, i), kernel.get(j, j), kernel.get(i, j));
                let eta = 2.0 * k_ij - k_ii - k_jj;
                if eta >= 0.0 {
                    continue;
                }
                let aj_new = (aj - y[j] * (e_i - e_j) / eta).clamp(lo, hi);
                if (aj_new - aj).abs() < MIN_ALPHA_STEP {
                    continue;
                }
                let ai_new = ai + y[i] * y[j] * (aj - aj_new);
                let (di, dj) = (ai_new - ai, aj_new - aj);
                let b1 = b - e_i - y[i] * di * k_ii - y[j] * dj * k_ij;
                let b2 = b - e_j - y[i] * di * k_ij - y[j] * dj * k_jj;
                b = if ai_new > 0.0 && ai_new < c {
                    b1
                } else if aj_new > 0.0 && aj_new < c {
                    b2
                } else {
                    (b1 + b2) / 2.0
                };
                alpha[i] = ai_new;
                alpha[j] = aj_new;
                kernel.row_into(i, &mut row_i);
                kernel.row_into(j, &mut row_j);
                let (si, sj) = (y[i] * di, y[j] * dj);
                for ((gk, ki), kj) in g.iter_mut().zip(&row_i).zip(&row_j) {
                    *gk += si * ki + sj * kj;
                }
                changed += 1;
            }
            sweeps += 1;
            if changed == 0 {
                passes += 1;
            } else {
                passes = 0;
            }
        }

        // Final bias from the KKT conditions rather than the last pair update.
        let b = final_bias(&alpha, &y, &g, c).unwrap_or(b);

        let mut coefficients = Vec::new();
        let mut support = Vec::new();
        let mut support_norms = Vec::new();
        for k in 0..m {
            if alpha[k] > 0.0 {
                let row = view.x.row(view.idx[k]);
                coefficients.push(alpha[k] * y[k]);
                support.push(row.entries().map(|(j, v)| (j as u32, v)).collect());
                support_norms.push(row.squared_norm());
            }
        }
        Ok(SvmRbf {
            gamma,
            bias: b,
            coefficients,
            support,
            support_norms,
            sweeps,
        })
    }

    pub fn n_support(&self) -> usize {
        self.support.len()
    }

    pub fn decision(&self, row: Row<'_>) -> f64 {
        let norm = row.squared_norm();
        self.support
            .iter()
            .zip(&self.support_norms)
            .zip(&self.coefficients)
            .map(|((sv, sn), coef)| coef * rbf(self.gamma, *sn, norm, Row::Sparse(sv).dot(row)))
            .sum::<f64>()
            + self.bias
    }

    pub(crate) fn predict_row(&self, row: Row<'_>) -> u8 {
        u8::from(self.decision(row) > 0.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ml::{testutil::blobs, train, Learned, ModelParams, ModelSpec};

    #[test]
    fn gram_matches_direct_dots() {
        let d = blobs(10, 1.0, 2);
        let g = Gram::compute(&d.features);
        for i in 0..d.len() {
            for j in 0..d.len() {
                assert_eq!(g.dot(i, j), d.features.row(i).dot(d.features.row(j)));
            }
        }
    }

    #[test]
    fn cached_and_uncached_kernels_agree() {
        let d = blobs(30, 1.0, 4);
        let idx: Vec<usize> = (0..d.len()).filter(|i| i % 3 != 0).collect();
        let gram = Gram::compute(&d.features);
        let with = TrainView {
            x: &d.features,
            y: &d.labels,
            idx: &idx,
            gram: Some(&gram),
        };
        let without = TrainView { gram: None, ..with };
        let a = SvmRbf::fit(with, 1.0, 0.1, SeedStream::new(1)).unwrap();
        let b = SvmRbf::fit(without, 1.0, 0.1, SeedStream::new(1)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn separates_blobs_with_few_support_vectors() {
        let d = blobs(50, 0.5, 8);
        let m = train(&ModelSpec::new(ModelParams::SvmRbf { c: 1.0, gamma: 0.1 }, 3), &d).unwrap();
        let Learned::SvmRbf(svm) = &m.learned else {
            unreachable!()
        };
        assert!(svm.n_support() < d.len() / 2);
        assert_eq!(svm.predict_row(Row::Dense(&[0.0, 0.0])), 0);
        assert_eq!(svm.predict_row(Row::Dense(&[5.0, 5.0])), 1);
    }
}
