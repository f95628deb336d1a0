//! Saves a trained model as a `BSM1` blob and loads it back.

use electweet::features::FeatureMatrix;
use electweet::ml::{model_from_bytes, model_to_bytes, train, Dataset, Model, ModelParams, ModelSpec, BLOB_MAGIC};

fn main() -> electweet::Result<()> {
    let rows: Vec<Vec<f64>> = (0..40).map(|i| vec![f64::from(i), f64::from(i % 7)]).collect();
    let labels: Vec<u8> = (0..40).map(|i| u8::from(i >= 20)).collect();
    let data = Dataset::unnamed(
        FeatureMatrix::from_dense_rows(vec!["x".into(), "y".into()], rows)?,
        labels,
    )?;
    let model = train(
        &ModelSpec::new(ModelParams::DecisionTree { max_depth: Some(3) }, 0),
        &data,
    )?;

    let bytes = model_to_bytes(&model)?;
    assert_eq!(&bytes[..4], BLOB_MAGIC);
    println!("{} bytes, params {}", bytes.len(), model.spec.params.to_json());
    assert_eq!(model_from_bytes(&bytes)?, model);

    let path = std::env::temp_dir().join("electweet_example.bsm");
    model.save(&path)?;
    let back = Model::load(&path)?;
    println!(
        "reloaded from {}: same predictions = {}",
        path.display(),
        back.predict(&data.features)? == model.predict(&data.features)?
    );
    Ok(())
}
