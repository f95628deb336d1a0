//! Preprocessing, bag-of-words and TF-IDF on a handful of tweets.

use electweet::features::{bow_transform, fit_bow_vocab, fit_tfidf, tfidf_transform};
use electweet::textprep::{preprocess, StopwordSet};

fn main() -> electweet::Result<()> {
    let stop = StopwordSet::english();
    let tweets = [
        "Free bijli and paani for every mohalla! #DelhiVotes",
        "Vote for development, vote for vikas https://t.co/abc",
        "@ArvindKejriwal the schools are better than ever",
    ];
    let docs: Vec<Vec<String>> = tweets.iter().map(|t| preprocess(t, &stop)).collect();
    for d in &docs {
        println!("{d:?}");
    }

    let vocab = fit_bow_vocab(&docs, 5000)?;
    let bow = bow_transform(&docs, &vocab);
    let model = fit_tfidf(&docs, 5000)?;
    let tfidf = tfidf_transform(&docs, &model);
    let col = vocab.column("vote").unwrap();
    println!("bow[1][vote] = {}", bow.get(1, col));
    let col = model.vocab.column("vote").unwrap();
    println!("tfidf[1][vote] = {:.4}", tfidf.get(1, col));
    Ok(())
}
