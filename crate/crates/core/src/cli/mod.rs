//! Subcommands that tie the pipeline together and write plot-ready CSV.
//!
//! Every command reads a [`RunConfig`] and writes into
//! [`RunConfig::out_dir`]. Output files and headers:
//!
//! | command | file | header |
//! |---|---|---|
//! | mentions | `top_hashtags.csv`, `top_mentions.csv` | `rank,tag,count` |
//! | mentions | `mention_shares_any.csv`, `mention_shares_single.csv` | `party,share` |
//! | sentiment | `sentiment_means.csv` | `window,party,n_tweets,posemo,negemo` |
//! | sentiment | `sentiment_tests.csv` | comparison header |
//! | activity | `availability.csv` | `party,available,total,share` |
//! | activity | `daily_activeness.csv`, `frame_participation.csv` | `party,window_start,window_end,value,originals,partial` |
//! | profiles | `candidate_attributes.csv` | `handle,party,won,attribute,value` |
//! | profiles | `profile_comparisons.csv` | comparison header |
//! | profiles | `party_profiles_scaled.csv` | `party,attribute,raw,scaled,scale_factor` |
//! | train, report | `model_report.csv` | `feature_set,model,f1,params_json,seed,train_n,test_n` |
//! | train | `models/<feature_set>__<model>.bsm` | binary model blob |
//! | synth | `tweets.jsonl`, `candidate_tweets.jsonl`, `candidates.csv`, `parties.json`, `profiles.csv`, `electweet.conf` | |
//!
//! The comparison header is
//! `group_a,group_b,attribute,mean_a,mean_b,u1,p_value,cles,rank_biserial,method`.
//! An empty `value`/`share`/mean cell means the quantity is undefined
//! (for example a party with no available candidate).

pub mod config;
pub mod synth;

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use chrono::{DateTime, Duration, NaiveDate, Utc};

pub use config::RunConfig;
pub use synth::{generate, write_corpus, SynthCorpus, SynthSpec};

use crate::corpus::{
    default_parties, engagement_stats, filter_by_location, format_timestamp, load_candidates, load_parties,
    load_profiles, load_tweets, same_account, CandidateRecord, CorpusSchema, Party, PartyRecord, Tweet, TweetKind,
};
use crate::error::Error;
use crate::features::{load_embeddings, FeatureResources, LabeledSample};
use crate::lexicon::{CategoryLexicon, MoralLexicon};
use crate::mentions::{mention_shares, single_party_tweets, top_tags, ShareMode, TagKind};
use crate::ml::{run_benchmark, BenchmarkConfig, OVERSAMPLING_NOTE};
use crate::stats::{compare_groups, scale_profiles, GroupComparison};
use crate::temporal::{
    availability, daily_activeness, day_range, frame_participation, trailing_window_bounds, ActivenessSeries,
};
use crate::textprep::StopwordSet;

pub const COMPARISON_HEADER: [&str; 10] = [
    "group_a",
    "group_b",
    "attribute",
    "mean_a",
    "mean_b",
    "u1",
    "p_value",
    "cles",
    "rank_biserial",
    "method",
];

pub const PROFILE_ATTRIBUTES: [&str; 8] = [
    "account_age_days",
    "statuses",
    "likes",
    "followers",
    "friends",
    "tweets_in_window",
    "avg_retweets",
    "avg_replies",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Synth,
    Mentions,
    Sentiment,
    Activity,
    Profiles,
    Train,
    Report,
}

impl Command {
    pub const ALL: [Command; 7] = [
        Command::Synth,
        Command::Mentions,
        Command::Sentiment,
        Command::Activity,
        Command::Profiles,
        Command::Train,
        Command::Report,
    ];
}

/// Why a command stopped. Usage problems exit with 1, data problems with 2.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Data(Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Data(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Data(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Data(e)
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Files written plus warnings worth showing the user.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct CommandOutput {
    pub files: Vec<PathBuf>,
    pub notes: Vec<String>,
}

pub fn run(command: Command, cfg: &RunConfig) -> CliResult<CommandOutput> {
    match command {
        Command::Synth => cmd_synth(cfg),
        Command::Mentions => cmd_mentions(cfg),
        Command::Sentiment => cmd_sentiment(cfg),
        Command::Activity => cmd_activity(cfg),
        Command::Profiles => cmd_profiles(cfg),
        Command::Train => cmd_train(cfg),
        Command::Report => cmd_report(cfg),
    }
}

fn required<'a>(value: &'a Option<PathBuf>, key: &str) -> CliResult<&'a Path> {
    value
        .as_deref()
        .ok_or_else(|| CliError::Usage(format!("`{key}` is not configured")))
}

fn seed(cfg: &RunConfig) -> CliResult<u64> {
    cfg.require_seed().map_err(|e| CliError::Usage(e.to_string()))
}

/// Shortest round-trip form; exponent notation for very small or large magnitudes.
fn fmt_num(v: f64) -> String {
    let a = v.abs();
    if a != 0.0 && a.is_finite() && !(1e-4..1e15).contains(&a) {
        format!("{v:e}")
    } else {
        format!("{v}")
    }
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(fmt_num).unwrap_or_default()
}

struct Outputs<'a> {
    dir: &'a Path,
    out: CommandOutput,
}

impl<'a> Outputs<'a> {
    fn new(cfg: &'a RunConfig) -> CliResult<Self> {
        fs::create_dir_all(&cfg.out_dir).map_err(|e| Error::io(&cfg.out_dir, e))?;
        Ok(Outputs {
            dir: &cfg.out_dir,
            out: CommandOutput::default(),
        })
    }

    fn csv<I, R>(&mut self, name: &str, header: &[&str], rows: I) -> CliResult<()>
    where
        I: IntoIterator<Item = R>,
        R: IntoIterator<Item = String>,
    {
        let path = self.dir.join(name);
        let file = fs::File::create(&path).map_err(|e| Error::io(&path, e))?;
        let mut w = csv::Writer::from_writer(std::io::BufWriter::new(file));
        w.write_record(header).map_err(Error::from)?;
        for row in rows {
            w.write_record(row).map_err(Error::from)?;
        }
        w.flush().map_err(|e| Error::io(&path, e))?;
        self.out.files.push(path);
        Ok(())
    }

    fn note(&mut self, note: impl Into<String>) {
        self.out.notes.push(note.into());
    }
}

fn read_tweets(path: &Path, schema: CorpusSchema, out: &mut Outputs<'_>) -> CliResult<Vec<Tweet>> {
    let loaded = load_tweets(path, schema)?;
    for e in loaded.errors.iter().take(5) {
        out.note(format!("{}: skipped {e}", path.display()));
    }
    if loaded.errors.len() > 5 {
        out.note(format!(
            "{}: {} malformed lines in total",
            path.display(),
            loaded.errors.len()
        ));
    }
    Ok(loaded.tweets)
}

fn parties(cfg: &RunConfig) -> CliResult<Vec<PartyRecord>> {
    Ok(match &cfg.parties {
        Some(p) => load_parties(p)?,
        None => default_parties(),
    })
}

/// Public tweets inside the configured region.
fn regional_tweets(cfg: &RunConfig, out: &mut Outputs<'_>) -> CliResult<Vec<Tweet>> {
    let tweets = read_tweets(required(&cfg.tweets, "tweets")?, CorpusSchema::Generic, out)?;
    let tweets = match &cfg.region {
        Some(region) => filter_by_location(&tweets, region),
        None => tweets,
    };
    if tweets.is_empty() {
        return Err(Error::NoData("no tweets left after location filtering".into()).into());
    }
    Ok(tweets)
}

pub fn cmd_mentions(cfg: &RunConfig) -> CliResult<CommandOutput> {
    let mut out = Outputs::new(cfg)?;
    let tweets = regional_tweets(cfg, &mut out)?;
    let parties = parties(cfg)?;
    for (kind, name) in [
        (TagKind::Hashtag, "top_hashtags.csv"),
        (TagKind::Mention, "top_mentions.csv"),
    ] {
        let ranked = top_tags(&tweets, kind, cfg.top_k);
        out.csv(
            name,
            &["rank", "tag", "count"],
            ranked
                .iter()
                .enumerate()
                .map(|(i, t)| vec![(i + 1).to_string(), t.tag.clone(), t.count.to_string()]),
        )?;
    }
    for (mode, name) in [
        (ShareMode::Any, "mention_shares_any.csv"),
        (ShareMode::Single, "mention_shares_single.csv"),
    ] {
        let shares = mention_shares(&tweets, &parties, mode)?;
        out.csv(
            name,
            &["party", "share"],
            shares.iter().map(|(p, s)| vec![p.to_string(), fmt_num(*s)]),
        )?;
    }
    Ok(out.out)
}

fn comparison_row(attribute: &str, c: &GroupComparison) -> Vec<String> {
    vec![
        c.group_a.clone(),
        c.group_b.clone(),
        attribute.to_string(),
        fmt_num(c.mean_a),
        fmt_num(c.mean_b),
        fmt_num(c.test.u1),
        fmt_num(c.test.p_value),
        fmt_num(c.test.effect_size_cles),
        fmt_num(c.test.rank_biserial),
        c.test.method.as_str().to_string(),
    ]
}

fn lexicon(cfg: &RunConfig) -> CliResult<CategoryLexicon> {
    Ok(match &cfg.liwc {
        Some(p) => CategoryLexicon::load(p)?,
        None => CategoryLexicon::standin(),
    })
}

pub fn cmd_sentiment(cfg: &RunConfig) -> CliResult<CommandOutput> {
    let mut out = Outputs::new(cfg)?;
    let tweets = regional_tweets(cfg, &mut out)?;
    let parties = parties(cfg)?;
    let lex = lexicon(cfg)?;
    for cat in ["posemo", "negemo"] {
        if lex.category_index(cat).is_none() {
            return Err(Error::invalid(format!("lexicon has no `{cat}` category")).into());
        }
    }
    let singles = single_party_tweets(&tweets, &parties);
    if singles.is_empty() {
        return Err(Error::NoData("no tweet mentions exactly one party".into()).into());
    }
    // (tweet time, party, posemo, negemo)
    let scored: Vec<(DateTime<Utc>, Party, f64, f64)> = singles
        .iter()
        .map(|(t, p)| {
            let props = lex.proportions(&t.text);
            (
                t.created_at,
                *p,
                props.get("posemo").unwrap_or(0.0),
                props.get("negemo").unwrap_or(0.0),
            )
        })
        .collect();

    // (label, window bounds); `None` is the whole corpus.
    type Block = (String, Option<(DateTime<Utc>, DateTime<Utc>)>);
    let mut blocks: Vec<Block> = vec![("overall".into(), None)];
    for &span in &cfg.trailing_spans {
        let w = trailing_window_bounds(cfg.election_day, span, cfg.clock)?;
        blocks.push((format!("last_{span}d"), Some((w.start, w.end))));
    }

    let mut means = Vec::new();
    let mut tests = Vec::new();
    for (label, bounds) in &blocks {
        let mut per_party: BTreeMap<Party, (Vec<f64>, Vec<f64>)> =
            Party::ALL.iter().map(|&p| (p, (Vec::new(), Vec::new()))).collect();
        for &(at, party, pos, neg) in &scored {
            if bounds.is_none_or(|(s, e)| at >= s && at < e) {
                let entry = per_party.get_mut(&party).expect("all parties");
                entry.0.push(pos);
                entry.1.push(neg);
            }
        }
        for (party, (pos, neg)) in &per_party {
            let mean = |v: &Vec<f64>| (!v.is_empty()).then(|| v.iter().sum::<f64>() / v.len() as f64);
            means.push(vec![
                label.clone(),
                party.to_string(),
                pos.len().to_string(),
                fmt_opt(mean(pos)),
                fmt_opt(mean(neg)),
            ]);
        }
        for (i, a) in Party::ALL.iter().enumerate() {
            for b in &Party::ALL[i + 1..] {
                for (cat, pick) in [("posemo", 0), ("negemo", 1)] {
                    let va = if pick == 0 { &per_party[a].0 } else { &per_party[a].1 };
                    let vb = if pick == 0 { &per_party[b].0 } else { &per_party[b].1 };
                    if va.is_empty() || vb.is_empty() {
                        continue;
                    }
                    let c = compare_groups(va, vb, a.as_str(), b.as_str())?;
                    tests.push(comparison_row(&format!("{cat}[{label}]"), &c));
                }
            }
        }
    }
    out.csv(
        "sentiment_means.csv",
        &["window", "party", "n_tweets", "posemo", "negemo"],
        means,
    )?;
    out.csv("sentiment_tests.csv", &COMPARISON_HEADER, tests)?;
    Ok(out.out)
}

fn series_rows(series: &BTreeMap<Party, ActivenessSeries>) -> Vec<Vec<String>> {
    series
        .values()
        .flat_map(|s| {
            s.points.iter().map(move |p| {
                vec![
                    s.party.to_string(),
                    format_timestamp(p.window.start),
                    format_timestamp(p.window.end),
                    fmt_opt(p.value),
                    p.originals.to_string(),
                    p.partial.to_string(),
                ]
            })
        })
        .collect()
}

fn tracked_inputs(cfg: &RunConfig, out: &mut Outputs<'_>) -> CliResult<(Vec<CandidateRecord>, Vec<Tweet>)> {
    let candidates = load_candidates(required(&cfg.candidates, "candidates")?)?;
    let tweets = read_tweets(
        required(&cfg.candidate_tweets, "candidate_tweets")?,
        CorpusSchema::Candidate,
        out,
    )?;
    if candidates.is_empty() {
        return Err(Error::NoData("candidate list is empty".into()).into());
    }
    Ok((candidates, tweets))
}

pub fn cmd_activity(cfg: &RunConfig) -> CliResult<CommandOutput> {
    let mut out = Outputs::new(cfg)?;
    let (candidates, tweets) = tracked_inputs(cfg, &mut out)?;
    let originals: Vec<&Tweet> = tweets.iter().filter(|t| t.kind == TweetKind::Original).collect();
    let first = cfg
        .activity_start
        .or_else(|| originals.iter().map(|t| cfg.clock.day_of(t.created_at)).min());
    let last = cfg
        .activity_end
        .or_else(|| originals.iter().map(|t| cfg.clock.day_of(t.created_at)).max());
    let (Some(first), Some(last)) = (first, last) else {
        return Err(Error::NoData("no original tweets to place on a calendar".into()).into());
    };
    if first > last {
        return Err(Error::invalid("activity_start is after activity_end").into());
    }
    let days: Vec<NaiveDate> = day_range(first, last);

    let avail = availability(&candidates, &tweets);
    out.csv(
        "availability.csv",
        &["party", "available", "total", "share"],
        avail.iter().map(|(p, a)| {
            vec![
                p.to_string(),
                a.available.to_string(),
                a.total.to_string(),
                fmt_opt(a.share()),
            ]
        }),
    )?;
    for (p, a) in &avail {
        if a.available == 0 {
            out.note(format!("{p}: no available candidate, activity values left empty"));
        }
    }
    let header = ["party", "window_start", "window_end", "value", "originals", "partial"];
    let daily = daily_activeness(&candidates, &tweets, &days, cfg.clock);
    out.csv("daily_activeness.csv", &header, series_rows(&daily))?;
    let frames = frame_participation(&candidates, &tweets, &days, cfg.frame_days, cfg.clock)?;
    out.csv("frame_participation.csv", &header, series_rows(&frames))?;
    Ok(out.out)
}

pub fn cmd_profiles(cfg: &RunConfig) -> CliResult<CommandOutput> {
    let mut out = Outputs::new(cfg)?;
    let (candidates, tweets) = tracked_inputs(cfg, &mut out)?;
    let corpus_end = tweets.iter().map(|t| t.created_at).max();
    let profiles = load_profiles(required(&cfg.profiles, "profiles")?, corpus_end)?;
    let reference = cfg.clock.day_start(cfg.election_day);

    let attributes = |account: &str| -> BTreeMap<String, f64> {
        let mut attrs = BTreeMap::new();
        if let Some(p) = profiles.iter().find(|p| same_account(&p.user_id, account)) {
            attrs.insert("account_age_days".into(), p.account_age_days(reference));
            attrs.insert("statuses".into(), p.statuses_count as f64);
            attrs.insert("likes".into(), p.likes_count as f64);
            attrs.insert("followers".into(), p.followers_count as f64);
            attrs.insert("friends".into(), p.friends_count as f64);
        }
        let e = engagement_stats(account, &tweets);
        attrs.insert("tweets_in_window".into(), e.tweets as f64);
        attrs.insert("avg_retweets".into(), e.avg_retweets());
        attrs.insert("avg_replies".into(), e.avg_replies());
        attrs
    };

    let per_candidate: Vec<(&CandidateRecord, BTreeMap<String, f64>)> =
        candidates.iter().map(|c| (c, attributes(&c.handle))).collect();
    let missing = per_candidate
        .iter()
        .filter(|(_, a)| !a.contains_key("followers"))
        .count();
    if missing > 0 {
        out.note(format!(
            "{missing} candidates have no profile row; only tweet-based attributes are used for them"
        ));
    }
    let mut rows = Vec::new();
    for (c, attrs) in &per_candidate {
        for attr in PROFILE_ATTRIBUTES {
            if let Some(v) = attrs.get(attr) {
                rows.push(vec![
                    c.handle.clone(),
                    c.party.to_string(),
                    c.won.to_string(),
                    attr.into(),
                    fmt_num(*v),
                ]);
            }
        }
    }
    out.csv(
        "candidate_attributes.csv",
        &["handle", "party", "won", "attribute", "value"],
        rows,
    )?;

    let values = |keep: &dyn Fn(&CandidateRecord) -> bool, attr: &str| -> Vec<f64> {
        per_candidate
            .iter()
            .filter(|(c, _)| keep(c))
            .filter_map(|(_, a)| a.get(attr).copied())
            .collect()
    };
    let mut tests = Vec::new();
    for attr in PROFILE_ATTRIBUTES {
        let won = values(&|c| c.won, attr);
        let lost = values(&|c| !c.won, attr);
        if !won.is_empty() && !lost.is_empty() {
            tests.push(comparison_row(attr, &compare_groups(&won, &lost, "won", "lost")?));
        }
    }
    for (i, a) in Party::ALL.iter().enumerate() {
        for b in &Party::ALL[i + 1..] {
            for attr in PROFILE_ATTRIBUTES {
                let va = values(&|c| c.party == *a, attr);
                let vb = values(&|c| c.party == *b, attr);
                if !va.is_empty() && !vb.is_empty() {
                    tests.push(comparison_row(attr, &compare_groups(&va, &vb, a.as_str(), b.as_str())?));
                }
            }
        }
    }
    if tests.is_empty() {
        return Err(Error::NoData("no pair of nonempty groups to compare".into()).into());
    }
    out.csv("profile_comparisons.csv", &COMPARISON_HEADER, tests)?;

    let party_records = parties(cfg)?;
    let entities: Vec<(String, BTreeMap<String, f64>)> = party_records
        .iter()
        .map(|p| (p.party.to_string(), attributes(&p.official_handle)))
        .collect();
    let scaled = scale_profiles(&entities);
    let mut rows = Vec::new();
    for (party, profile) in &scaled {
        for attr in PROFILE_ATTRIBUTES {
            if let Some(v) = profile.get(attr) {
                rows.push(vec![
                    party.clone(),
                    attr.to_string(),
                    fmt_num(v.raw),
                    fmt_num(v.scaled),
                    fmt_num(v.scale_factor),
                ]);
            }
        }
    }
    out.csv(
        "party_profiles_scaled.csv",
        &["party", "attribute", "raw", "scaled", "scale_factor"],
        rows,
    )?;
    Ok(out.out)
}

/// Candidate originals labeled by the author's result.
pub fn labeled_samples(
    candidates: &[CandidateRecord],
    tweets: &[Tweet],
    stopwords: &StopwordSet,
) -> Vec<LabeledSample> {
    let won: BTreeMap<String, bool> = candidates
        .iter()
        .map(|c| (c.handle.to_ascii_lowercase(), c.won))
        .collect();
    tweets
        .iter()
        .filter(|t| t.kind == TweetKind::Original)
        .filter_map(|t| {
            let key = t.author_id.trim_start_matches('@').to_ascii_lowercase();
            won.get(&key).map(|&w| LabeledSample::new(&t.id, &t.text, w, stopwords))
        })
        .collect()
}

fn benchmark(cfg: &RunConfig, persist: bool) -> CliResult<CommandOutput> {
    let seed = seed(cfg)?;
    let mut out = Outputs::new(cfg)?;
    let (candidates, tweets) = tracked_inputs(cfg, &mut out)?;
    let stopwords = match &cfg.stopwords {
        Some(p) => StopwordSet::load(p)?,
        None => StopwordSet::english(),
    };
    let samples = labeled_samples(&candidates, &tweets, &stopwords);
    if samples.is_empty() {
        return Err(Error::NoData("no original tweets by listed candidates".into()).into());
    }
    let mut resources = FeatureResources {
        lexicon: lexicon(cfg)?,
        moral: match &cfg.moral {
            Some(p) => MoralLexicon::load(p)?,
            None => MoralLexicon::standin(),
        },
        embeddings: None,
        vocab_cap: cfg.vocab_cap,
    };
    if let Some(path) = &cfg.embeddings {
        let loaded = load_embeddings(path, cfg.embedding_dim)?;
        for w in loaded.warnings.iter().take(5) {
            out.note(format!("{}: {w}", path.display()));
        }
        resources.embeddings = Some(loaded.table);
    }
    let sets = cfg.resolved_feature_sets();
    if cfg.feature_sets.is_none() && cfg.embeddings.is_none() {
        out.note("no embeddings configured: word2vec feature set skipped");
    }
    let outcome = run_benchmark(&samples, &sets, &cfg.models, &resources, BenchmarkConfig::new(seed))?;

    let path = out.dir.join("model_report.csv");
    let file = fs::File::create(&path).map_err(|e| Error::io(&path, e))?;
    outcome.report.write_csv(std::io::BufWriter::new(file))?;
    out.out.files.push(path);
    out.note(OVERSAMPLING_NOTE);

    if persist {
        let dir = out.dir.join("models");
        fs::create_dir_all(&dir).map_err(|e| Error::io(&dir, e))?;
        for (row, model) in outcome.report.rows.iter().zip(&outcome.models) {
            let path = dir.join(format!("{}__{}.bsm", row.feature_set.replace('+', "-"), row.model));
            model.save(&path)?;
            out.out.files.push(path);
        }
    }
    Ok(out.out)
}

pub fn cmd_train(cfg: &RunConfig) -> CliResult<CommandOutput> {
    benchmark(cfg, true)
}

pub fn cmd_report(cfg: &RunConfig) -> CliResult<CommandOutput> {
    benchmark(cfg, false)
}

/// Config file written next to a synthetic corpus.
pub const SYNTH_CONFIG_FILE: &str = "electweet.conf";

pub fn cmd_synth(cfg: &RunConfig) -> CliResult<CommandOutput> {
    let seed = seed(cfg)?;
    cfg.synth.validate().map_err(|e| CliError::Usage(e.to_string()))?;
    let corpus = generate(&cfg.synth, seed)?;
    let mut files = write_corpus(&corpus, &cfg.out_dir)?;
    let conf = cfg.out_dir.join(SYNTH_CONFIG_FILE);
    let spec = &cfg.synth;
    let text = format!(
        "# synthetic corpus\n\
         tweets = {}\ncandidate_tweets = {}\ncandidates = {}\nparties = {}\nprofiles = {}\n\
         election_day = {}\nseed = {seed}\n",
        synth::TWEETS_FILE,
        synth::CANDIDATE_TWEETS_FILE,
        synth::CANDIDATES_FILE,
        synth::PARTIES_FILE,
        synth::PROFILES_FILE,
        spec.end + Duration::days(1),
    );
    fs::write(&conf, text).map_err(|e| Error::io(&conf, e))?;
    files.push(conf);
    Ok(CommandOutput {
        files,
        notes: vec![format!(
            "{} public tweets, {} tracked-account tweets, {} candidates",
            corpus.public_tweets.len(),
            corpus.candidate_tweets.len(),
            corpus.candidates.len()
        )],
    })
}
