use rand::seq::SliceRandom;
use rand::Rng;

use super::{Dataset, SeedStream};
use crate::error::{Error, Result};

fn class_indices(labels: &[u8]) -> [Vec<usize>; 2] {
    let mut out = [Vec::new(), Vec::new()];
    for (i, &l) in labels.iter().enumerate() {
        out[usize::from(l)].push(i);
    }
    out
}

/// Row indices of the balanced dataset: every original row in order,
/// followed by minority rows drawn with replacement.
pub fn oversample_indices(labels: &[u8], seed: u64) -> Result<Vec<usize>> {
    let classes = class_indices(labels);
    if classes[0].is_empty() || classes[1].is_empty() {
        return Err(Error::invalid("oversampling needs both classes present"));
    }
    let (minority, majority) = if classes[0].len() < classes[1].len() {
        (&classes[0], &classes[1])
    } else {
        (&classes[1], &classes[0])
    };
    let mut out: Vec<usize> = (0..labels.len()).collect();
    let mut rng = SeedStream::new(seed).rng();
    for _ in 0..majority.len() - minority.len() {
        out.push(minority[rng.random_range(0..minority.len())]);
    }
    Ok(out)
}

/// Duplicates minority rows until both classes have the majority count.
pub fn random_oversample(data: &Dataset, seed: u64) -> Result<Dataset> {
    let idx = oversample_indices(&data.labels, seed)?;
    Ok(data.select(&idx))
}

/// Sorted `(train, test)` row indices. The test size `round(n·fraction)`
/// is spread over the classes by largest remainder, and each class keeps
/// at least one row on both sides.
pub fn stratified_split_indices(labels: &[u8], test_fraction: f64, seed: u64) -> Result<(Vec<usize>, Vec<usize>)> {
    if !(test_fraction > 0.0 && test_fraction < 1.0) {
        return Err(Error::invalid("test fraction must be in (0, 1)"));
    }
    let classes = class_indices(labels);
    if classes.iter().any(|c| c.len() < 2) {
        return Err(Error::invalid("stratified split needs at least 2 samples per class"));
    }
    let n = labels.len() as f64;
    let total = (n * test_fraction).round() as usize;
    let exact: Vec<f64> = classes.iter().map(|c| c.len() as f64 * total as f64 / n).collect();
    let mut take: Vec<usize> = exact.iter().map(|e| e.floor() as usize).collect();
    let mut rest = total - take.iter().sum::<usize>();
    let mut order = [0usize, 1];
    order.sort_by(|&a, &b| (exact[b] - exact[b].floor()).total_cmp(&(exact[a] - exact[a].floor())));
    for c in order {
        if rest == 0 {
            break;
        }
        take[c] += 1;
        rest -= 1;
    }
    for (c, t) in take.iter_mut().enumerate() {
        *t = (*t).clamp(1, classes[c].len() - 1);
    }

    let stream = SeedStream::new(seed);
    let mut train = Vec::new();
    let mut test = Vec::new();
    for (c, members) in classes.iter().enumerate() {
        let mut shuffled = members.clone();
        shuffled.shuffle(&mut stream.derive(c as u64).rng());
        test.extend_from_slice(&shuffled[..take[c]]);
        train.extend_from_slice(&shuffled[take[c]..]);
    }
    train.sort_unstable();
    test.sort_unstable();
    Ok((train, test))
}

pub fn stratified_split(data: &Dataset, test_fraction: f64, seed: u64) -> Result<(Dataset, Dataset)> {
    let (train, test) = stratified_split_indices(&data.labels, test_fraction, seed)?;
    Ok((data.select(&train), data.select(&test)))
}
