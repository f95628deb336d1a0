use rand::seq::index::sample;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{SeedStream, TrainView};
use crate::error::{Error, Result};
use crate::features::Row;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct TreeParams {
    pub max_depth: Option<usize>,
    /// Features examined per split; `None` means all of them.
    pub max_features: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
enum Node {
    Leaf {
        class: u8,
    },
    Split {
        feature: usize,
        threshold: f64,
        left: usize,
        right: usize,
    },
}

/// CART classifier over Gini impurity. Rows with `x[feature] <= threshold`
/// go left.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecisionTree {
    nodes: Vec<Node>,
}

struct Candidate {
    gain: f64,
    feature: usize,
    threshold: f64,
}

/// Weighted impurity mass `W·gini`.
fn impurity(w0: f64, w1: f64) -> f64 {
    let w = w0 + w1;
    if w <= 0.0 {
        0.0
    } else {
        w - (w0 * w0 + w1 * w1) / w
    }
}

impl DecisionTree {
    pub(crate) fn fit_unweighted(view: TrainView<'_>, params: TreeParams) -> Self {
        let w = vec![1.0; view.len()];
        DecisionTree::fit_weighted(view, &w, params, None)
    }

    /// `weights[k]` belongs to training position `k`; zero-weight rows are
    /// ignored. Feature subsets are drawn from `rng` when
    /// `params.max_features` is set.
    pub(crate) fn fit_weighted(
        view: TrainView<'_>,
        weights: &[f64],
        params: TreeParams,
        mut rng: Option<&mut ChaCha8Rng>,
    ) -> Self {
        let root_rows: Vec<usize> = (0..view.len()).filter(|&k| weights[k] > 0.0).collect();
        // Nonzero entries sorted by (feature, value) once; children inherit
        // the order through stable partitioning.
        let mut root_entries: Vec<(u32, f64, u32)> = Vec::new();
        for &k in &root_rows {
            for (j, v) in view.x.row(view.idx[k]).entries() {
                root_entries.push((j as u32, v, k as u32));
            }
        }
        root_entries.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.total_cmp(&b.1)));
        let mut nodes = vec![Node::Leaf { class: 0 }];
        let mut stack = vec![(0usize, root_rows, root_entries, 0usize)];
        let mut goes_left = vec![false; view.len()];

        while let Some((id, rows, entries, depth)) = stack.pop() {
            let (mut w0, mut w1) = (0.0, 0.0);
            for &k in &rows {
                if view.label(k) == 1 {
                    w1 += weights[k];
                } else {
                    w0 += weights[k];
                }
            }
            let class = u8::from(w1 > w0);
            let stop = w0 == 0.0 || w1 == 0.0 || rows.len() < 2 || params.max_depth.is_some_and(|m| depth >= m);
            if stop {
                nodes[id] = Node::Leaf { class };
                continue;
            }
            let best = best_split(
                view,
                weights,
                &rows,
                (w0, w1),
                params.max_features,
                rng.as_deref_mut(),
                &entries,
            );
            let Some(best) = best else {
                nodes[id] = Node::Leaf { class };
                continue;
            };
            for &k in &rows {
                goes_left[k] = view.x.row(view.idx[k]).get(best.feature) <= best.threshold;
            }
            let (left_rows, right_rows): (Vec<usize>, Vec<usize>) = rows.iter().partition(|&&k| goes_left[k]);
            let (left_entries, right_entries): (Vec<_>, Vec<_>) =
                entries.into_iter().partition(|e| goes_left[e.2 as usize]);
            let left = nodes.len();
            nodes.push(Node::Leaf { class: 0 });
            nodes.push(Node::Leaf { class: 0 });
            nodes[id] = Node::Split {
                feature: best.feature,
                threshold: best.threshold,
                left,
                right: left + 1,
            };
            // Right first so the left subtree is expanded first.
            stack.push((left + 1, right_rows, right_entries, depth + 1));
            stack.push((left, left_rows, left_entries, depth + 1));
        }
        DecisionTree { nodes }
    }

    pub fn predict_row(&self, row: Row<'_>) -> u8 {
        let mut at = 0;
        loop {
            match self.nodes[at] {
                Node::Leaf { class } => return class,
                Node::Split {
                    feature,
                    threshold,
                    left,
                    right,
                } => at = if row.get(feature) <= threshold { left } else { right },
            }
        }
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn depth(&self) -> usize {
        let mut best = 0;
        let mut stack = vec![(0usize, 0usize)];
        while let Some((at, d)) = stack.pop() {
            best = best.max(d);
            if let Node::Split { left, right, .. } = self.nodes[at] {
                stack.push((left, d + 1));
                stack.push((right, d + 1));
            }
        }
        best
    }
}

/// Distinct values of one feature in a node with per-class weights,
/// ascending. Absent entries form the implicit zero group.
fn feature_levels(
    group: &[(u32, f64, u32)],
    weights: &[f64],
    view: TrainView<'_>,
    n_rows: usize,
    totals: (f64, f64),
    out: &mut Vec<(f64, f64, f64)>,
) {
    out.clear();
    let (mut s0, mut s1) = (0.0, 0.0);
    let mut zero_pending = group.len() < n_rows;
    let push = |out: &mut Vec<(f64, f64, f64)>, v: f64, a: f64, b: f64| match out.last_mut() {
        Some(last) if last.0 == v => {
            last.1 += a;
            last.2 += b;
        }
        _ => out.push((v, a, b)),
    };
    for &(_, v, k) in group {
        let k = k as usize;
        let w = weights[k];
        let (a, b) = if view.label(k) == 1 { (0.0, w) } else { (w, 0.0) };
        s0 += a;
        s1 += b;
        if zero_pending && v > 0.0 {
            zero_pending = false;
            out.push((0.0, f64::NAN, f64::NAN));
        }
        push(out, v, a, b);
    }
    if zero_pending {
        out.push((0.0, f64::NAN, f64::NAN));
    }
    // Fill in the zero group from the node totals.
    for level in out.iter_mut() {
        if level.1.is_nan() {
            level.1 = (totals.0 - s0).max(0.0);
            level.2 = (totals.1 - s1).max(0.0);
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn best_split(
    view: TrainView<'_>,
    weights: &[f64],
    rows: &[usize],
    totals: (f64, f64),
    max_features: Option<usize>,
    rng: Option<&mut ChaCha8Rng>,
    entries: &[(u32, f64, u32)],
) -> Option<Candidate> {
    // Feature groups that can actually split this node.
    let mut groups: Vec<(usize, usize)> = Vec::new();
    let mut start = 0;
    while start < entries.len() {
        let j = entries[start].0;
        let mut end = start;
        while end < entries.len() && entries[end].0 == j {
            end += 1;
        }
        let g = &entries[start..end];
        let varies = g.len() < rows.len() || g[0].1 != g[g.len() - 1].1;
        if varies {
            groups.push((start, end));
        }
        start = end;
    }
    if let (Some(m), Some(rng)) = (max_features, rng) {
        if groups.len() > m {
            let mut pick: Vec<usize> = sample(rng, groups.len(), m).into_vec();
            pick.sort_unstable();
            groups = pick.into_iter().map(|i| groups[i]).collect();
        }
    }

    let parent = impurity(totals.0, totals.1);
    let mut best: Option<Candidate> = None;
    let mut levels = Vec::new();
    for (s, e) in groups {
        let group = &entries[s..e];
        feature_levels(group, weights, view, rows.len(), totals, &mut levels);
        let (mut l0, mut l1) = (0.0, 0.0);
        for pair in levels.windows(2) {
            l0 += pair[0].1;
            l1 += pair[0].2;
            let gain = parent - impurity(l0, l1) - impurity(totals.0 - l0, totals.1 - l1);
            let better = match &best {
                None => true,
                Some(b) => gain > b.gain + 1e-12,
            };
            if better {
                let (a, b) = (pair[0].0, pair[1].0);
                let mid = a + (b - a) / 2.0;
                best = Some(Candidate {
                    gain,
                    feature: group[0].0 as usize,
                    threshold: if mid < b { mid } else { a },
                });
            }
        }
    }
    best
}

/// Bagged CART trees with `floor(sqrt(n_features))` candidates per split.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RandomForest {
    pub trees: Vec<DecisionTree>,
}

impl RandomForest {
    pub(crate) fn fit(
        view: TrainView<'_>,
        n_trees: usize,
        max_depth: Option<usize>,
        stream: SeedStream,
    ) -> Result<Self> {
        if n_trees == 0 {
            return Err(Error::invalid("random forest needs at least one tree"));
        }
        let mtry = ((view.x.n_cols() as f64).sqrt().floor() as usize).max(1);
        let params = TreeParams {
            max_depth,
            max_features: Some(mtry),
        };
        let n = view.len();
        let trees = (0..n_trees)
            .into_par_iter()
            .map(|t| {
                let mut rng = stream.derive(t as u64).rng();
                let mut weights = vec![0.0; n];
                for _ in 0..n {
                    weights[rng.random_range(0..n)] += 1.0;
                }
                DecisionTree::fit_weighted(view, &weights, params, Some(&mut rng))
            })
            .collect();
        Ok(RandomForest { trees })
    }

    /// Majority vote; a tie goes to class 0.
    pub fn predict_row(&self, row: Row<'_>) -> u8 {
        let ones = self.trees.iter().filter(|t| t.predict_row(row) == 1).count();
        u8::from(2 * ones > self.trees.len())
    }
}
