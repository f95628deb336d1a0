//! Mann-Whitney U test, effect sizes, means and min-max scaling.
//!
//! `u1` counts pairs where the first sample is larger (ties count half),
//! so the common-language effect size is `u1 / (n1 * n2)` and the
//! rank-biserial correlation is `1 - 2 * u2 / (n1 * n2)`.
//!
//! The exact null distribution of U is used for tie-free samples with
//! `n1 + n2 <= 20`; otherwise a normal approximation with tie-corrected
//! variance and a 0.5 continuity correction.

use std::collections::BTreeMap;

use libm::erfc;
use serde::Serialize;

use crate::error::{Error, Result};

/// Largest pooled sample size for which `Auto` picks the exact method.
pub const EXACT_MAX_N: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Alternative {
    TwoSided,
    /// The first sample tends to be smaller.
    Less,
    /// The first sample tends to be larger.
    Greater,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MwuMethod {
    Exact,
    NormalApprox,
}

impl MwuMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            MwuMethod::Exact => "exact",
            MwuMethod::NormalApprox => "normal_approx",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MethodChoice {
    Auto,
    Exact,
    NormalApprox,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MwuResult {
    pub u1: f64,
    pub u2: f64,
    pub p_value: f64,
    pub effect_size_cles: f64,
    pub rank_biserial: f64,
    pub method: MwuMethod,
}

pub fn mann_whitney(x: &[f64], y: &[f64], alternative: Alternative) -> Result<MwuResult> {
    mann_whitney_with(x, y, alternative, MethodChoice::Auto)
}

/// [`mann_whitney`] with an explicit method. Forcing `Exact` on tied
/// data is an error.
pub fn mann_whitney_with(x: &[f64], y: &[f64], alternative: Alternative, choice: MethodChoice) -> Result<MwuResult> {
    if x.is_empty() || y.is_empty() {
        return Err(Error::invalid("Mann-Whitney U needs two nonempty samples"));
    }
    if x.iter().chain(y).any(|v| !v.is_finite()) {
        return Err(Error::invalid("Mann-Whitney U needs finite values"));
    }
    let (n1, n2) = (x.len(), y.len());
    let ranked = RankSummary::new(x, y);
    let nn = (n1 * n2) as f64;
    let u1 = ranked.rank_sum_x - (n1 * (n1 + 1)) as f64 / 2.0;
    let u2 = nn - u1;

    let method = match choice {
        MethodChoice::Auto if !ranked.has_ties && n1 + n2 <= EXACT_MAX_N => MwuMethod::Exact,
        MethodChoice::Auto | MethodChoice::NormalApprox => MwuMethod::NormalApprox,
        MethodChoice::Exact if ranked.has_ties => {
            return Err(Error::invalid(
                "exact Mann-Whitney distribution requires tie-free samples",
            ));
        }
        MethodChoice::Exact => MwuMethod::Exact,
    };
    let p_value = match method {
        MwuMethod::Exact => exact_p(n1, n2, u1 as u64, alternative),
        MwuMethod::NormalApprox => normal_p(n1, n2, u1, ranked.tie_term, alternative),
    };
    Ok(MwuResult {
        u1,
        u2,
        p_value,
        effect_size_cles: u1 / nn,
        rank_biserial: 1.0 - 2.0 * u2 / nn,
        method,
    })
}

struct RankSummary {
    rank_sum_x: f64,
    /// Sum of t^3 - t over tie groups.
    tie_term: f64,
    has_ties: bool,
}

impl RankSummary {
    fn new(x: &[f64], y: &[f64]) -> Self {
        let mut pooled: Vec<(f64, bool)> = x
            .iter()
            .map(|&v| (v, true))
            .chain(y.iter().map(|&v| (v, false)))
            .collect();
        pooled.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut rank_sum_x = 0.0;
        let mut tie_term = 0.0;
        let mut i = 0;
        while i < pooled.len() {
            let mut j = i + 1;
            while j < pooled.len() && pooled[j].0 == pooled[i].0 {
                j += 1;
            }
            let t = (j - i) as f64;
            // ranks i+1..=j averaged
            let avg = (i + 1 + j) as f64 / 2.0;
            rank_sum_x += avg * pooled[i..j].iter().filter(|p| p.1).count() as f64;
            tie_term += t * t * t - t;
            i = j;
        }
        RankSummary {
            rank_sum_x,
            tie_term,
            has_ties: tie_term > 0.0,
        }
    }
}

/// Number of orderings of `n1` x-values and `n2` y-values yielding each
/// U in `0..=n1*n2`, via f(m, n, u) = f(m-1, n, u-n) + f(m, n-1, u).
pub fn exact_u_counts(n1: usize, n2: usize) -> Vec<u128> {
    // table[m] holds f(m, n, .) for the current n
    let mut table: Vec<Vec<u128>> = (0..=n1).map(|_| vec![1u128]).collect();
    for n in 1..=n2 {
        let mut next: Vec<Vec<u128>> = Vec::with_capacity(n1 + 1);
        next.push(vec![1u128]);
        for m in 1..=n1 {
            let mut counts = vec![0u128; m * n + 1];
            // largest element is a y: contributes 0 to U
            for (u, &c) in table[m].iter().enumerate() {
                counts[u] += c;
            }
            // largest element is an x: exceeds all n y-values
            for (u, &c) in next[m - 1].iter().enumerate() {
                counts[u + n] += c;
            }
            next.push(counts);
        }
        table = next;
    }
    table.pop().expect("n1 + 1 rows")
}

fn exact_p(n1: usize, n2: usize, u1: u64, alternative: Alternative) -> f64 {
    let counts = exact_u_counts(n1, n2);
    let total: u128 = counts.iter().sum();
    let u = u1 as usize;
    let le: u128 = counts[..=u].iter().sum();
    let ge: u128 = counts[u..].iter().sum();
    let p_le = le as f64 / total as f64;
    let p_ge = ge as f64 / total as f64;
    match alternative {
        Alternative::Greater => p_ge,
        Alternative::Less => p_le,
        Alternative::TwoSided => (2.0 * p_le.min(p_ge)).min(1.0),
    }
}

fn normal_sf(z: f64) -> f64 {
    0.5 * erfc(z / std::f64::consts::SQRT_2)
}

fn normal_p(n1: usize, n2: usize, u1: f64, tie_term: f64, alternative: Alternative) -> f64 {
    let (a, b) = (n1 as f64, n2 as f64);
    let n = a + b;
    let mean = a * b / 2.0;
    let var = a * b / 12.0 * ((n + 1.0) - tie_term / (n * (n - 1.0)));
    if var <= 0.0 {
        return 1.0;
    }
    let sd = var.sqrt();
    let p = match alternative {
        Alternative::Greater => normal_sf((u1 - mean - 0.5) / sd),
        Alternative::Less => 1.0 - normal_sf((u1 - mean + 0.5) / sd),
        Alternative::TwoSided => 2.0 * normal_sf(((u1 - mean).abs() - 0.5) / sd),
    };
    p.clamp(0.0, 1.0)
}

pub fn mean_proportion(values: &[f64]) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::invalid("mean of an empty sample"));
    }
    Ok(values.iter().sum::<f64>() / values.len() as f64)
}

/// `(v - min) / (max - min)`; constant input maps to all zeros.
pub fn minmax_scale(values: &[f64]) -> Vec<f64> {
    let (lo, hi) = values.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
        (lo.min(v), hi.max(v))
    });
    let range = hi - lo;
    values
        .iter()
        .map(|&v| {
            if range > 0.0 {
                ((v - lo) / range).clamp(0.0, 1.0)
            } else {
                0.0
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GroupComparison {
    pub group_a: String,
    pub group_b: String,
    pub mean_a: f64,
    pub mean_b: f64,
    pub test: MwuResult,
}

/// Means of both groups plus a two-sided Mann-Whitney test of `a` against `b`.
pub fn compare_groups(a: &[f64], b: &[f64], label_a: &str, label_b: &str) -> Result<GroupComparison> {
    let test = mann_whitney(a, b, Alternative::TwoSided)?;
    Ok(GroupComparison {
        group_a: label_a.to_string(),
        group_b: label_b.to_string(),
        mean_a: mean_proportion(a)?,
        mean_b: mean_proportion(b)?,
        test,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScaledValue {
    pub raw: f64,
    pub scaled: f64,
    /// `max - min` of the attribute across entities (0 for a constant attribute).
    pub scale_factor: f64,
}

/// Attribute name to scaled value for one entity.
pub type ScaledProfile = BTreeMap<String, ScaledValue>;

/// Min-max scales each attribute across entities. Entities missing an
/// attribute are left out of that attribute's scaling.
pub fn scale_profiles(entities: &[(String, BTreeMap<String, f64>)]) -> Vec<(String, ScaledProfile)> {
    let mut out: Vec<(String, ScaledProfile)> = entities
        .iter()
        .map(|(name, _)| (name.clone(), BTreeMap::new()))
        .collect();
    let attributes: std::collections::BTreeSet<&String> = entities.iter().flat_map(|(_, a)| a.keys()).collect();
    for attr in attributes {
        let present: Vec<(usize, f64)> = entities
            .iter()
            .enumerate()
            .filter_map(|(i, (_, a))| a.get(attr).map(|&v| (i, v)))
            .collect();
        let raw: Vec<f64> = present.iter().map(|p| p.1).collect();
        let scaled = minmax_scale(&raw);
        let (lo, hi) = raw.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
            (lo.min(v), hi.max(v))
        });
        for ((i, v), s) in present.into_iter().zip(scaled) {
            out[i].1.insert(
                attr.clone(),
                ScaledValue {
                    raw: v,
                    scaled: s,
                    scale_factor: hi - lo,
                },
            );
        }
    }
    out
}
