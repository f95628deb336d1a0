//! Flat `key = value` run configuration.
//!
//! Grammar: one `key = value` pair per line; blank lines and lines whose
//! first non-space character is `#` are ignored; keys are case-sensitive
//! and may appear once. Lists are comma-separated. Relative paths are
//! resolved against the directory holding the config file.
//!
//! ```text
//! # inputs
//! tweets = tweets.jsonl
//! candidate_tweets = candidate_tweets.jsonl
//! candidates = candidates.csv
//! election_day = 2020-02-08
//! trailing_spans = 3, 7, 14, 21, 48
//! ```

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use chrono::NaiveDate;

use super::synth::SynthSpec;
use crate::corpus::{Party, RegionSpec};
use crate::error::{Error, Result};
use crate::features::{FeatureFamily, FeatureSet};
use crate::ml::ModelKind;
use crate::temporal::DayClock;

/// Everything a subcommand needs besides its name.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    /// Public tweets for mention and sentiment analysis.
    pub tweets: Option<PathBuf>,
    /// Tweets by and engagement with tracked accounts (candidates, party handles).
    pub candidate_tweets: Option<PathBuf>,
    pub candidates: Option<PathBuf>,
    /// Party alias JSON; the bundled aliases are used when unset.
    pub parties: Option<PathBuf>,
    pub profiles: Option<PathBuf>,
    /// LIWC-layout `.dic`; the stand-in lexicon is used when unset.
    pub liwc: Option<PathBuf>,
    pub moral: Option<PathBuf>,
    pub embeddings: Option<PathBuf>,
    pub embedding_dim: usize,
    pub stopwords: Option<PathBuf>,
    pub election_day: NaiveDate,
    /// `None` disables location filtering.
    pub region: Option<RegionSpec>,
    pub clock: DayClock,
    pub seed: Option<u64>,
    pub frame_days: usize,
    pub trailing_spans: Vec<u32>,
    pub top_k: usize,
    pub activity_start: Option<NaiveDate>,
    pub activity_end: Option<NaiveDate>,
    /// `None` means the standard sets (word2vec only with embeddings).
    pub feature_sets: Option<Vec<FeatureSet>>,
    pub models: Vec<ModelKind>,
    pub vocab_cap: usize,
    pub out_dir: PathBuf,
    pub threads: Option<usize>,
    pub synth: SynthSpec,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            tweets: None,
            candidate_tweets: None,
            candidates: None,
            parties: None,
            profiles: None,
            liwc: None,
            moral: None,
            embeddings: None,
            embedding_dim: crate::features::DEFAULT_EMBEDDING_DIM,
            stopwords: None,
            election_day: NaiveDate::from_ymd_opt(2020, 2, 8).expect("valid date"),
            region: Some(RegionSpec::delhi()),
            clock: DayClock::UTC,
            seed: None,
            frame_days: 3,
            trailing_spans: vec![3, 7, 14, 21, 48],
            top_k: 20,
            activity_start: None,
            activity_end: None,
            feature_sets: None,
            models: ModelKind::ALL.to_vec(),
            vocab_cap: crate::features::DEFAULT_VOCAB_CAP,
            out_dir: PathBuf::from("out"),
            threads: None,
            synth: SynthSpec::default(),
        }
    }
}

/// Keys understood by [`RunConfig::apply`].
pub const KEYS: &[&str] = &[
    "tweets",
    "candidate_tweets",
    "candidates",
    "parties",
    "profiles",
    "liwc",
    "moral",
    "embeddings",
    "embedding_dim",
    "stopwords",
    "election_day",
    "region",
    "region_lat",
    "region_lon",
    "region_names",
    "utc_offset_minutes",
    "seed",
    "frame_days",
    "trailing_spans",
    "top_k",
    "activity_start",
    "activity_end",
    "feature_sets",
    "models",
    "vocab_cap",
    "out_dir",
    "threads",
    "synth_candidates_per_party",
    "synth_win_rates",
    "synth_tweets_per_candidate",
    "synth_public_tweets",
    "synth_plant_rate",
    "synth_win_vocab",
    "synth_start",
    "synth_end",
];

/// Parses the config grammar into ordered `(line, key, value)` entries.
pub fn parse_pairs(text: &str) -> Result<Vec<(usize, String, String)>> {
    let mut seen = BTreeMap::new();
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(Error::line(i + 1, "expected `key = value`"));
        };
        let key = key.trim().to_string();
        if !KEYS.contains(&key.as_str()) {
            return Err(Error::line(i + 1, format!("unknown key `{key}`")));
        }
        if let Some(first) = seen.insert(key.clone(), i + 1) {
            return Err(Error::line(i + 1, format!("key `{key}` already set on line {first}")));
        }
        out.push((i + 1, key, value.trim().to_string()));
    }
    Ok(out)
}

fn list(value: &str) -> impl Iterator<Item = &str> {
    value.split(',').map(str::trim).filter(|s| !s.is_empty())
}

fn num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .parse()
        .map_err(|_| Error::invalid(format!("`{key}`: cannot parse `{value}`")))
}

fn date(key: &str, value: &str) -> Result<NaiveDate> {
    NaiveDate::parse_from_str(value, "%Y-%m-%d")
        .map_err(|_| Error::invalid(format!("`{key}`: expected YYYY-MM-DD, got `{value}`")))
}

fn pair(key: &str, value: &str) -> Result<(f64, f64)> {
    let v: Vec<f64> = list(value).map(|s| num(key, s)).collect::<Result<_>>()?;
    match v[..] {
        [a, b] if a <= b => Ok((a, b)),
        _ => Err(Error::invalid(format!("`{key}`: expected `min, max`"))),
    }
}

impl RunConfig {
    /// Reads a config file on top of the defaults.
    pub fn from_file(path: impl AsRef<Path>) -> Result<RunConfig> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
        let mut cfg = RunConfig::default();
        for (line, key, value) in parse_pairs(&text)? {
            cfg.apply(&key, &value, &base)
                .map_err(|e| Error::line(line, e.to_string()))?;
        }
        Ok(cfg)
    }

    /// Sets one key. Relative paths are joined onto `base`.
    pub fn apply(&mut self, key: &str, value: &str, base: &Path) -> Result<()> {
        let path = || Some(base.join(value));
        match key {
            "tweets" => self.tweets = path(),
            "candidate_tweets" => self.candidate_tweets = path(),
            "candidates" => self.candidates = path(),
            "parties" => self.parties = path(),
            "profiles" => self.profiles = path(),
            "liwc" => self.liwc = path(),
            "moral" => self.moral = path(),
            "embeddings" => self.embeddings = path(),
            "stopwords" => self.stopwords = path(),
            "out_dir" => self.out_dir = base.join(value),
            "embedding_dim" => self.embedding_dim = num(key, value)?,
            "election_day" => self.election_day = date(key, value)?,
            "region" => {
                self.region = match value.to_ascii_lowercase().as_str() {
                    "off" | "none" => None,
                    "delhi" => Some(RegionSpec::delhi()),
                    _ => return Err(Error::invalid("`region`: expected `delhi` or `off`")),
                }
            }
            "region_lat" | "region_lon" | "region_names" => {
                let r = self.region.get_or_insert_with(RegionSpec::delhi);
                match key {
                    "region_lat" => (r.lat_min, r.lat_max) = pair(key, value)?,
                    "region_lon" => (r.lon_min, r.lon_max) = pair(key, value)?,
                    _ => r.substrings = list(value).map(str::to_lowercase).collect(),
                }
            }
            "utc_offset_minutes" => {
                self.clock = DayClock {
                    offset_minutes: num(key, value)?,
                }
            }
            "seed" => self.seed = Some(num(key, value)?),
            "frame_days" => self.frame_days = num(key, value)?,
            "trailing_spans" => self.trailing_spans = list(value).map(|s| num(key, s)).collect::<Result<_>>()?,
            "top_k" => self.top_k = num(key, value)?,
            "activity_start" => self.activity_start = Some(date(key, value)?),
            "activity_end" => self.activity_end = Some(date(key, value)?),
            "feature_sets" => {
                self.feature_sets = Some(if value == "standard" {
                    FeatureSet::standard()
                } else {
                    list(value).map(str::parse).collect::<Result<_>>()?
                })
            }
            "models" => {
                self.models = if value == "all" {
                    ModelKind::ALL.to_vec()
                } else {
                    list(value).map(str::parse).collect::<Result<_>>()?
                }
            }
            "vocab_cap" => self.vocab_cap = num(key, value)?,
            "threads" => self.threads = Some(num(key, value)?),
            "synth_candidates_per_party" => self.synth.candidates_per_party = num(key, value)?,
            "synth_win_rates" => {
                for item in list(value) {
                    let (party, rate) = item
                        .split_once(':')
                        .ok_or_else(|| Error::invalid("`synth_win_rates`: expected `PARTY:rate, ...`"))?;
                    let party: Party = party.parse()?;
                    self.synth.win_rates[party as usize] = num(key, rate.trim())?;
                }
            }
            "synth_tweets_per_candidate" => self.synth.tweets_per_candidate = num(key, value)?,
            "synth_public_tweets" => self.synth.public_tweets = num(key, value)?,
            "synth_plant_rate" => self.synth.plant_rate = num(key, value)?,
            "synth_win_vocab" => self.synth.win_vocab = list(value).map(str::to_lowercase).collect(),
            "synth_start" => self.synth.start = date(key, value)?,
            "synth_end" => self.synth.end = date(key, value)?,
            other => return Err(Error::invalid(format!("unknown key `{other}`"))),
        }
        Ok(())
    }

    /// Applies `key=value` overrides given on the command line.
    pub fn apply_overrides(&mut self, overrides: &[String]) -> Result<()> {
        for item in overrides {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| Error::invalid(format!("override `{item}` is not `key=value`")))?;
            let key = key.trim();
            if !KEYS.contains(&key) {
                return Err(Error::invalid(format!("unknown key `{key}`")));
            }
            self.apply(key, value.trim(), Path::new(""))?;
        }
        Ok(())
    }

    /// Feature sets to benchmark. Without embeddings the default list
    /// leaves out word2vec; an explicit request is kept as is.
    pub fn resolved_feature_sets(&self) -> Vec<FeatureSet> {
        match &self.feature_sets {
            Some(sets) => sets.clone(),
            None => FeatureSet::standard()
                .into_iter()
                .filter(|s| self.embeddings.is_some() || !s.needs(FeatureFamily::Word2Vec))
                .collect(),
        }
    }

    pub fn require_seed(&self) -> Result<u64> {
        self.seed
            .ok_or_else(|| Error::invalid("this command needs a seed (--seed or `seed =`)"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_grammar() {
        let text = "# comment\n\n tweets = a.jsonl \nseed=7\ntrailing_spans = 3, 7\nregion = off\nmodels = rf, lr\n";
        let pairs = parse_pairs(text).unwrap();
        assert_eq!(pairs[0], (3, "tweets".into(), "a.jsonl".into()));
        let mut cfg = RunConfig::default();
        for (_, k, v) in pairs {
            cfg.apply(&k, &v, Path::new("/data")).unwrap();
        }
        assert_eq!(cfg.tweets, Some(PathBuf::from("/data/a.jsonl")));
        assert_eq!(cfg.seed, Some(7));
        assert_eq!(cfg.trailing_spans, vec![3, 7]);
        assert_eq!(cfg.region, None);
        assert_eq!(cfg.models, vec![ModelKind::RandomForest, ModelKind::LogisticRegression]);
    }

    #[test]
    fn rejects_bad_lines() {
        assert!(matches!(parse_pairs("seed 7"), Err(Error::Line { line: 1, .. })));
        assert!(matches!(parse_pairs("\nbogus = 1"), Err(Error::Line { line: 2, .. })));
        assert!(matches!(
            parse_pairs("seed = 1\nseed = 2"),
            Err(Error::Line { line: 2, .. })
        ));
    }

    #[test]
    fn overrides_win() {
        let mut cfg = RunConfig::default();
        cfg.apply_overrides(&[
            "synth_plant_rate=0.25".into(),
            "synth_win_rates=AAP:0.5, inc:0.1".into(),
        ])
        .unwrap();
        assert_eq!(cfg.synth.plant_rate, 0.25);
        assert_eq!(cfg.synth.win_rates[Party::AAP as usize], 0.5);
        assert_eq!(cfg.synth.win_rates[Party::INC as usize], 0.1);
        assert!(cfg.apply_overrides(&["nope=1".into()]).is_err());
    }

    #[test]
    fn default_feature_sets_skip_word2vec_without_vectors() {
        let cfg = RunConfig::default();
        assert_eq!(cfg.resolved_feature_sets().len(), 8);
        let explicit = RunConfig {
            feature_sets: Some(vec!["word2vec".parse().unwrap()]),
            ..RunConfig::default()
        };
        assert_eq!(explicit.resolved_feature_sets().len(), 1);
    }
}
