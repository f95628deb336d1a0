//! Tweet text normalization and tokenization.

use std::collections::HashSet;
use std::path::Path;

use crate::error::{Error, Result};

/// Lowercase stopwords.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StopwordSet {
    words: HashSet<String>,
}

impl StopwordSet {
    pub fn new<I, S>(words: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        StopwordSet {
            words: words
                .into_iter()
                .map(|w| w.as_ref().trim().to_lowercase())
                .filter(|w| !w.is_empty())
                .collect(),
        }
    }

    /// One word per line; blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Self {
        StopwordSet::new(
            text.lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#')),
        )
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Ok(StopwordSet::parse(&text))
    }

    /// The bundled English list.
    pub fn english() -> Self {
        StopwordSet::parse(crate::resources::STOPWORDS_EN)
    }

    pub fn contains(&self, word: &str) -> bool {
        self.words.contains(word)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

fn is_url(token: &str) -> bool {
    token.starts_with("http://") || token.starts_with("https://") || token.starts_with("t.co/")
}

/// Classifier preprocessing: lowercase, drop URLs, non-ASCII, `#`/`@`
/// symbols and punctuation, then split and drop stopwords.
///
/// ```
/// use electweet::textprep::{preprocess, StopwordSet};
/// let stop = StopwordSet::new(["check"]);
/// let tokens = preprocess("Check https://t.co/xyz #DelhiElections @ArvindKejriwal!!", &stop);
/// assert_eq!(tokens, ["delhielections", "arvindkejriwal"]);
/// ```
pub fn preprocess(text: &str, stopwords: &StopwordSet) -> Vec<String> {
    let lower = text.to_lowercase();
    let mut cleaned = String::with_capacity(lower.len());
    for piece in lower.split_whitespace().filter(|t| !is_url(t)) {
        // Non-ASCII, '#', '@', punctuation and control characters are all
        // deleted outright; only ASCII alphanumerics survive in a token.
        cleaned.extend(piece.chars().filter(char::is_ascii_alphanumeric));
        cleaned.push(' ');
    }
    cleaned
        .split_whitespace()
        .filter(|t| !stopwords.contains(t))
        .map(str::to_string)
        .collect()
}

/// Lexicon tokenization: lowercase, split on whitespace, strip
/// non-alphanumeric characters from token edges. Stopwords, URLs and
/// interior punctuation are kept.
pub fn tokenize_raw(text: &str) -> Vec<String> {
    text.to_lowercase()
        .split_whitespace()
        .map(|t| t.trim_matches(|c: char| !c.is_alphanumeric()))
        .filter(|t| !t.is_empty())
        .map(str::to_string)
        .collect()
}
