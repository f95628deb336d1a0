use crate::error::{Error, Result};

fn check(y_true: &[u8], y_pred: &[u8]) -> Result<()> {
    if y_true.len() != y_pred.len() {
        return Err(Error::RowMismatch {
            expected: y_true.len(),
            found: y_pred.len(),
        });
    }
    if y_true.is_empty() {
        return Err(Error::NoData("no predictions to score".into()));
    }
    Ok(())
}

/// F1 of the positive class; 0 when precision and recall are both 0.
pub fn f1_score(y_true: &[u8], y_pred: &[u8], positive: u8) -> Result<f64> {
    check(y_true, y_pred)?;
    let (mut tp, mut fp, mut fne) = (0usize, 0usize, 0usize);
    for (&t, &p) in y_true.iter().zip(y_pred) {
        match (t == positive, p == positive) {
            (true, true) => tp += 1,
            (false, true) => fp += 1,
            (true, false) => fne += 1,
            (false, false) => {}
        }
    }
    // 2tp / (2tp + fp + fn) equals the harmonic mean of precision and recall.
    if tp == 0 {
        return Ok(0.0);
    }
    Ok(2.0 * tp as f64 / (2 * tp + fp + fne) as f64)
}

pub fn accuracy(y_true: &[u8], y_pred: &[u8]) -> Result<f64> {
    check(y_true, y_pred)?;
    let hits = y_true.iter().zip(y_pred).filter(|(a, b)| a == b).count();
    Ok(hits as f64 / y_true.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn f1_examples() {
        assert_eq!(f1_score(&[1, 0, 1], &[1, 0, 1], 1).unwrap(), 1.0);
        assert_eq!(f1_score(&[1, 0, 1], &[0, 0, 0], 1).unwrap(), 0.0);
        // tp=2, fp=1, fn=1
        let f = f1_score(&[1, 1, 1, 0, 0], &[1, 1, 0, 1, 0], 1).unwrap();
        let (p, r) = (2.0 / 3.0, 2.0 / 3.0);
        assert!((f - 2.0 * p * r / (p + r)).abs() < 1e-15);
        assert!(f1_score(&[1], &[1, 0], 1).is_err());
        assert!(f1_score(&[], &[], 1).is_err());
    }

    proptest! {
        #[test]
        fn f1_self_and_permutation(y in prop::collection::vec(0u8..2, 1..40), p in prop::collection::vec(0u8..2, 40), rot in 0usize..40) {
            let p = &p[..y.len()];
            if y.contains(&1) {
                prop_assert_eq!(f1_score(&y, &y, 1).unwrap(), 1.0);
            }
            let k = rot % y.len();
            let mut y2 = y.clone();
            let mut p2 = p.to_vec();
            y2.rotate_left(k);
            p2.rotate_left(k);
            prop_assert_eq!(f1_score(&y, p, 1).unwrap(), f1_score(&y2, &p2, 1).unwrap());
            let f = f1_score(&y, p, 1).unwrap();
            prop_assert!((0.0..=1.0).contains(&f));
        }
    }
}
