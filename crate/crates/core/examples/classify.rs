//! Grid-searched classifiers on two noisy clusters, scored on a held-out
//! split.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use electweet::features::FeatureMatrix;
use electweet::ml::{cross_validate_grid, default_grid, f1_score, stratified_split, Dataset, ModelKind};

fn main() -> electweet::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let noise = Normal::new(0.0, 1.2).unwrap();
    let mut rows = Vec::new();
    let mut labels = Vec::new();
    for i in 0..300 {
        let label = u8::from(i % 3 == 0);
        let c = 2.5 * f64::from(label);
        rows.push(vec![c + noise.sample(&mut rng), c + noise.sample(&mut rng)]);
        labels.push(label);
    }
    let data = Dataset::unnamed(
        FeatureMatrix::from_dense_rows(vec!["a".into(), "b".into()], rows)?,
        labels,
    )?;
    let (train, test) = stratified_split(&data, 0.3, 0)?;

    for kind in ModelKind::ALL {
        let cv = cross_validate_grid(&default_grid(kind, 0), &train, 5, 0)?;
        let pred = cv.model.predict(&test.features)?;
        println!(
            "{:<20} cv-best {:<36} test f1 {:.3}",
            kind.as_str(),
            cv.best.params.to_json(),
            f1_score(&test.labels, &pred, 1)?
        );
    }
    Ok(())
}
