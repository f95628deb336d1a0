//! Bi-level election analytics over archived tweet corpora.
//!
//! The crate covers two levels of analysis:
//!
//! * **Parties**: hashtag and mention rankings, keyword party attribution,
//!   mention shares and lexicon-based sentiment per party
//!   ([`mentions`], [`lexicon`], [`temporal`], [`stats`]).
//! * **Candidates**: Twitter availability and activeness over time,
//!   profile comparisons between winners and losers, and a win/lose tweet
//!   classifier suite ([`temporal`], [`stats`], [`features`], [`ml`]).
//!
//! Input is archived JSON Lines tweets plus CSV/JSON side tables
//! ([`corpus`]). Every analysis emits plot-ready CSV through the
//! [`cli`] command layer, which also hosts the seeded synthetic corpus
//! generator used by the runnable examples and the test suites.
//!
//! See the `examples/` directory of this crate for one runnable program per
//! capability.

pub mod cli;
pub mod corpus;
pub mod error;
pub mod features;
pub mod lexicon;
pub mod mentions;
pub mod ml;
pub mod stats;
pub mod temporal;
pub mod textprep;

pub use error::{Error, Result};

/// Bundled default resources (stopwords, stand-in lexicons, party aliases).
pub mod resources {
    /// English stopword list, one word per line.
    pub const STOPWORDS_EN: &str = include_str!("../data/stopwords_en.txt");
    /// Small open LIWC-layout lexicon with posemo/negemo/affect and function-word categories.
    pub const STANDIN_LIWC_DIC: &str = include_str!("../data/standin_liwc.dic");
    /// Small open moral-foundation lexicon (word,foundation,score).
    pub const STANDIN_MORAL_CSV: &str = include_str!("../data/standin_moral.csv");
    /// Default party handles and aliases.
    pub const DEFAULT_PARTIES_JSON: &str = include_str!("../data/default_parties.json");
}
