//! Generates a seeded synthetic election corpus and writes it to a
//! directory (default: `./synth_out`).
//!
//! ```text
//! cargo run --example synth_corpus -- /tmp/corpus
//! ```

use std::path::PathBuf;

use electweet::cli::{generate, write_corpus, SynthSpec};

fn main() -> electweet::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "synth_out".into()));
    let spec = SynthSpec {
        candidates_per_party: 10,
        tweets_per_candidate: 30.0,
        public_tweets: 500,
        ..SynthSpec::default()
    };
    let corpus = generate(&spec, 7)?;
    let winners = corpus.candidates.iter().filter(|c| c.won).count();
    println!(
        "{} candidates ({winners} won), {} candidate-side tweets, {} public tweets",
        corpus.candidates.len(),
        corpus.candidate_tweets.len(),
        corpus.public_tweets.len()
    );
    for path in write_corpus(&corpus, &dir)? {
        println!("wrote {}", path.display());
    }
    Ok(())
}
