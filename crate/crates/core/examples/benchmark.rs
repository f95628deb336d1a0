//! The full win/lose tweet benchmark on a small synthetic corpus, printed
//! as the report CSV.

use electweet::cli::{generate, labeled_samples, SynthSpec};
use electweet::features::{FeatureResources, FeatureSet, DEFAULT_VOCAB_CAP};
use electweet::lexicon::{CategoryLexicon, MoralLexicon};
use electweet::ml::{run_benchmark, BenchmarkConfig, ModelKind, OVERSAMPLING_NOTE};
use electweet::textprep::StopwordSet;

fn main() -> electweet::Result<()> {
    let spec = SynthSpec {
        candidates_per_party: 8,
        tweets_per_candidate: 25.0,
        ..SynthSpec::default()
    };
    let corpus = generate(&spec, 21)?;
    let samples = labeled_samples(&corpus.candidates, &corpus.candidate_tweets, &StopwordSet::english());
    let resources = FeatureResources {
        lexicon: CategoryLexicon::standin(),
        moral: MoralLexicon::standin(),
        embeddings: None,
        vocab_cap: DEFAULT_VOCAB_CAP,
    };
    let sets: Vec<FeatureSet> = ["bow", "tfidf", "linguistic", "bow+moral"]
        .iter()
        .map(|s| s.parse())
        .collect::<Result<_, _>>()?;
    let models = [
        ModelKind::LogisticRegression,
        ModelKind::RandomForest,
        ModelKind::GaussianNb,
    ];
    let outcome = run_benchmark(&samples, &sets, &models, &resources, BenchmarkConfig::new(21))?;
    outcome.report.write_csv(std::io::stdout())?;
    eprintln!("{OVERSAMPLING_NOTE}");
    Ok(())
}
