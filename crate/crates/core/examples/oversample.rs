use electweet::features::FeatureMatrix;
use electweet::ml::{random_oversample, stratified_split, Dataset};

fn main() -> electweet::Result<()> {
    let labels: Vec<u8> = (0..100).map(|i| u8::from(i < 20)).collect();
    let x = FeatureMatrix::dense(100, vec!["i".into()], (0..100).map(f64::from).collect())?;
    let data = Dataset::unnamed(x, labels)?;
    println!("before: {:?}", data.class_counts());

    let balanced = random_oversample(&data, 3)?;
    println!("after:  {:?}", balanced.class_counts());

    let (train, test) = stratified_split(&balanced, 0.3, 3)?;
    println!("train {:?}, test {:?}", train.class_counts(), test.class_counts());
    Ok(())
}
