//! Data model for tweets, profiles, candidates and parties, plus the
//! loaders for archived JSON Lines corpora and their CSV/JSON side tables.
//!
//! Ingestion never aborts on a malformed tweet line: each bad line is
//! reported as a [`LineError`] and loading continues, so that
//! `tweets.len() + errors.len()` always equals the number of lines read.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::fs::File;
use std::io::{BufRead, BufReader, Read};
use std::path::Path;
use std::str::FromStr;

use chrono::{DateTime, NaiveDateTime, SubsecRound, Utc};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

/// The three parties tracked by the analysis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Party {
    AAP,
    BJP,
    INC,
}

impl Party {
    pub const ALL: [Party; 3] = [Party::AAP, Party::BJP, Party::INC];

    pub fn as_str(self) -> &'static str {
        match self {
            Party::AAP => "AAP",
            Party::BJP => "BJP",
            Party::INC => "INC",
        }
    }
}

impl fmt::Display for Party {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Party {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "AAP" => Ok(Party::AAP),
            "BJP" => Ok(Party::BJP),
            "INC" => Ok(Party::INC),
            _ => Err(Error::UnknownParty(s.trim().to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TweetKind {
    Original,
    Retweet,
    Reply,
}

impl TweetKind {
    pub fn as_str(self) -> &'static str {
        match self {
            TweetKind::Original => "original",
            TweetKind::Retweet => "retweet",
            TweetKind::Reply => "reply",
        }
    }
}

impl FromStr for TweetKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "original" => Ok(TweetKind::Original),
            "retweet" => Ok(TweetKind::Retweet),
            "reply" => Ok(TweetKind::Reply),
            other => Err(format!("unknown kind `{other}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeoPoint {
    pub lat: f64,
    pub lon: f64,
}

/// One archived post.
///
/// `target_author_id` names the author of the retweeted or replied-to
/// post; it is absent for originals.
#[derive(Debug, Clone, PartialEq)]
pub struct Tweet {
    pub id: String,
    pub author_id: String,
    pub text: String,
    pub created_at: DateTime<Utc>,
    pub kind: TweetKind,
    pub geo: Option<GeoPoint>,
    pub user_location: Option<String>,
    pub target_author_id: Option<String>,
}

impl Tweet {
    /// Serializes to the one-object-per-line JSONL schema. Optional fields
    /// are omitted when absent.
    pub fn to_json_line(&self) -> String {
        let mut obj = serde_json::Map::new();
        obj.insert("id".into(), Value::from(self.id.as_str()));
        obj.insert("author_id".into(), Value::from(self.author_id.as_str()));
        obj.insert("text".into(), Value::from(self.text.as_str()));
        obj.insert("created_at".into(), Value::from(format_timestamp(self.created_at)));
        obj.insert("kind".into(), Value::from(self.kind.as_str()));
        if let Some(geo) = self.geo {
            obj.insert("lat".into(), Value::from(geo.lat));
            obj.insert("lon".into(), Value::from(geo.lon));
        }
        if let Some(loc) = &self.user_location {
            obj.insert("user_location".into(), Value::from(loc.as_str()));
        }
        if let Some(target) = &self.target_author_id {
            obj.insert("target_author_id".into(), Value::from(target.as_str()));
        }
        Value::Object(obj).to_string()
    }
}

/// Which collection a tweet file came from. `Candidate` and `Party`
/// corpora carry engagement (retweets/replies of tracked accounts), so
/// their retweets and replies must name a `target_author_id`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorpusSchema {
    Generic,
    Candidate,
    Party,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineError {
    /// 1-based line number.
    pub line: usize,
    pub reason: String,
}

impl fmt::Display for LineError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.reason)
    }
}

#[derive(Debug, Default, Clone)]
pub struct LoadedTweets {
    pub tweets: Vec<Tweet>,
    pub errors: Vec<LineError>,
}

/// Twitter handles compare case-insensitively and ignore a leading `@`.
pub fn same_account(a: &str, b: &str) -> bool {
    a.trim_start_matches('@')
        .eq_ignore_ascii_case(b.trim_start_matches('@'))
}

pub fn format_timestamp(ts: DateTime<Utc>) -> String {
    ts.format("%Y-%m-%dT%H:%M:%SZ").to_string()
}

/// Parses an ISO-8601 timestamp and normalizes it to UTC at second
/// precision. Offsets are honored; a timestamp without offset is UTC.
pub fn parse_timestamp(s: &str) -> std::result::Result<DateTime<Utc>, String> {
    let s = s.trim();
    if let Ok(dt) = DateTime::parse_from_rfc3339(s) {
        return Ok(dt.with_timezone(&Utc).trunc_subsecs(0));
    }
    for fmt in [
        "%Y-%m-%dT%H:%M:%S%.f",
        "%Y-%m-%d %H:%M:%S%.f",
        "%Y-%m-%dT%H:%M:%S",
        "%Y-%m-%d %H:%M:%S",
    ] {
        if let Ok(naive) = NaiveDateTime::parse_from_str(s, fmt) {
            return Ok(naive.and_utc().trunc_subsecs(0));
        }
    }
    Err(format!("invalid timestamp `{s}`"))
}

fn open(path: &Path) -> Result<File> {
    File::open(path).map_err(|e| Error::io(path, e))
}

/// Loads a JSON Lines tweet file. Only an unreadable file is fatal.
pub fn load_tweets(path: impl AsRef<Path>, schema: CorpusSchema) -> Result<LoadedTweets> {
    let path = path.as_ref();
    let file = open(path)?;
    parse_tweets(BufReader::new(file), schema).map_err(|e| match e {
        Error::IoOther(source) => Error::io(path, source),
        other => other,
    })
}

/// Parses tweets from any reader. Invalid UTF-8 on a line is a per-line error.
pub fn parse_tweets<R: BufRead>(mut reader: R, schema: CorpusSchema) -> Result<LoadedTweets> {
    let mut out = LoadedTweets::default();
    let mut seen: HashSet<String> = HashSet::new();
    let mut buf = Vec::new();
    let mut line_no = 0;
    loop {
        buf.clear();
        if reader.read_until(b'\n', &mut buf)? == 0 {
            break;
        }
        line_no += 1;
        let parsed = std::str::from_utf8(&buf)
            .map_err(|_| "invalid UTF-8".to_string())
            .and_then(|line| parse_tweet_line(line, schema));
        match parsed {
            Ok(tweet) if !seen.insert(tweet.id.clone()) => out.errors.push(LineError {
                line: line_no,
                reason: format!("duplicate id `{}`", tweet.id),
            }),
            Ok(tweet) => out.tweets.push(tweet),
            Err(reason) => out.errors.push(LineError { line: line_no, reason }),
        }
    }
    Ok(out)
}

fn parse_tweet_line(line: &str, schema: CorpusSchema) -> std::result::Result<Tweet, String> {
    let line = line.trim_end_matches(['\n', '\r']);
    let value: Value = serde_json::from_str(line).map_err(|e| format!("malformed JSON: {e}"))?;
    let obj = value.as_object().ok_or("line is not a JSON object")?;

    let string_field = |name: &str| -> std::result::Result<Option<String>, String> {
        match obj.get(name) {
            None | Some(Value::Null) => Ok(None),
            Some(Value::String(s)) => Ok(Some(s.clone())),
            Some(Value::Number(n)) => Ok(Some(n.to_string())),
            Some(_) => Err(format!("field `{name}` must be a string")),
        }
    };
    let required = |name: &str| -> std::result::Result<String, String> {
        string_field(name)?.ok_or_else(|| format!("missing field `{name}`"))
    };
    let number_field = |name: &str| -> std::result::Result<Option<f64>, String> {
        match obj.get(name) {
            None | Some(Value::Null) => Ok(None),
            Some(Value::Number(n)) => n
                .as_f64()
                .filter(|v| v.is_finite())
                .map(Some)
                .ok_or_else(|| format!("field `{name}` is not a finite number")),
            Some(_) => Err(format!("field `{name}` must be a number")),
        }
    };

    let id = required("id")?;
    if id.is_empty() {
        return Err("empty id".into());
    }
    let author_id = required("author_id")?;
    let text = required("text")?;
    let created_at = parse_timestamp(&required("created_at")?)?;
    let kind: TweetKind = required("kind")?.parse()?;
    let geo = match (number_field("lat")?, number_field("lon")?) {
        (Some(lat), Some(lon)) => Some(GeoPoint { lat, lon }),
        (None, None) => None,
        _ => return Err("lat and lon must be given together".into()),
    };
    let user_location = string_field("user_location")?;
    let target_author_id = string_field("target_author_id")?;
    if schema != CorpusSchema::Generic && kind != TweetKind::Original && target_author_id.is_none() {
        return Err(format!("{} without target_author_id", kind.as_str()));
    }
    Ok(Tweet {
        id,
        author_id,
        text,
        created_at,
        kind,
        geo,
        user_location,
        target_author_id,
    })
}

/// Geographic filter: a bounding box plus lowercase place-name substrings.
#[derive(Debug, Clone, PartialEq)]
pub struct RegionSpec {
    pub lat_min: f64,
    pub lat_max: f64,
    pub lon_min: f64,
    pub lon_max: f64,
    pub substrings: Vec<String>,
}

impl RegionSpec {
    pub fn new(lat: (f64, f64), lon: (f64, f64), substrings: impl IntoIterator<Item = impl Into<String>>) -> Self {
        RegionSpec {
            lat_min: lat.0,
            lat_max: lat.1,
            lon_min: lon.0,
            lon_max: lon.1,
            substrings: substrings.into_iter().map(|s| s.into().to_lowercase()).collect(),
        }
    }

    /// National Capital Territory of Delhi.
    pub fn delhi() -> Self {
        RegionSpec::new((28.40, 28.90), (76.80, 77.40), ["delhi"])
    }

    pub fn contains_point(&self, p: GeoPoint) -> bool {
        (self.lat_min..=self.lat_max).contains(&p.lat) && (self.lon_min..=self.lon_max).contains(&p.lon)
    }

    pub fn matches_location(&self, location: &str) -> bool {
        let lower = location.to_lowercase();
        self.substrings
            .iter()
            .any(|s| !s.is_empty() && lower.contains(s.as_str()))
    }

    pub fn matches(&self, tweet: &Tweet) -> bool {
        tweet.geo.is_some_and(|g| self.contains_point(g))
            || tweet
                .user_location
                .as_deref()
                .is_some_and(|loc| self.matches_location(loc))
    }
}

pub fn filter_by_location(tweets: &[Tweet], region: &RegionSpec) -> Vec<Tweet> {
    tweets.iter().filter(|t| region.matches(t)).cloned().collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateRecord {
    pub handle: String,
    pub display_name: String,
    pub party: Party,
    pub constituency: String,
    pub won: bool,
}

#[derive(Deserialize)]
struct CandidateRow {
    handle: String,
    display_name: String,
    party: String,
    constituency: String,
    won: String,
}

fn parse_bool(s: &str) -> Option<bool> {
    match s.trim().to_ascii_lowercase().as_str() {
        "true" | "1" => Some(true),
        "false" | "0" => Some(false),
        _ => None,
    }
}

pub fn load_candidates(path: impl AsRef<Path>) -> Result<Vec<CandidateRecord>> {
    let path = path.as_ref();
    parse_candidates(open(path)?)
}

/// Reads the `handle,display_name,party,constituency,won` CSV.
pub fn parse_candidates<R: Read>(reader: R) -> Result<Vec<CandidateRecord>> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (i, row) in rdr.deserialize::<CandidateRow>().enumerate() {
        let row = row?;
        let line = i + 2;
        let handle = row.handle.trim_start_matches('@').to_string();
        if handle.is_empty() {
            return Err(Error::line(line, "empty handle"));
        }
        if !seen.insert(handle.to_ascii_lowercase()) {
            return Err(Error::DuplicateHandle(handle));
        }
        let party = row.party.parse()?;
        let won = parse_bool(&row.won).ok_or_else(|| Error::line(line, format!("invalid won value `{}`", row.won)))?;
        out.push(CandidateRecord {
            handle,
            display_name: row.display_name,
            party,
            constituency: row.constituency,
            won,
        });
    }
    Ok(out)
}

pub fn write_candidates<W: std::io::Write>(writer: W, candidates: &[CandidateRecord]) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(writer);
    wtr.write_record(["handle", "display_name", "party", "constituency", "won"])?;
    for c in candidates {
        wtr.write_record([
            c.handle.as_str(),
            c.display_name.as_str(),
            c.party.as_str(),
            c.constituency.as_str(),
            if c.won { "true" } else { "false" },
        ])?;
    }
    wtr.flush()?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartyRecord {
    pub party: Party,
    pub official_handle: String,
    /// Lowercase, deduplicated, nonempty.
    pub name_aliases: Vec<String>,
}

impl PartyRecord {
    pub fn new(party: Party, official_handle: &str, aliases: &[&str]) -> Result<Self> {
        let mut name_aliases: Vec<String> = Vec::new();
        for alias in aliases {
            let alias = alias.split_whitespace().collect::<Vec<_>>().join(" ").to_lowercase();
            if !alias.is_empty() && !name_aliases.contains(&alias) {
                name_aliases.push(alias);
            }
        }
        if name_aliases.is_empty() {
            return Err(Error::invalid(format!("party {party} has no aliases")));
        }
        Ok(PartyRecord {
            party,
            official_handle: official_handle.trim_start_matches('@').to_string(),
            name_aliases,
        })
    }
}

#[derive(Serialize, Deserialize)]
struct PartyEntry {
    handle: String,
    aliases: Vec<String>,
}

/// Parses `{"AAP": {"handle": "...", "aliases": [...]}, ...}`.
pub fn parse_parties(json: &str) -> Result<Vec<PartyRecord>> {
    let raw: BTreeMap<String, PartyEntry> = serde_json::from_str(json)?;
    let mut out = Vec::with_capacity(raw.len());
    for (key, entry) in raw {
        let party: Party = key.parse()?;
        let aliases: Vec<&str> = entry.aliases.iter().map(String::as_str).collect();
        out.push(PartyRecord::new(party, &entry.handle, &aliases)?);
    }
    out.sort_by_key(|p| p.party);
    Ok(out)
}

pub fn load_parties(path: impl AsRef<Path>) -> Result<Vec<PartyRecord>> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_parties(&text)
}

pub fn default_parties() -> Vec<PartyRecord> {
    parse_parties(crate::resources::DEFAULT_PARTIES_JSON).expect("bundled party aliases are valid")
}

pub fn parties_to_json(parties: &[PartyRecord]) -> String {
    let map: BTreeMap<&str, PartyEntry> = parties
        .iter()
        .map(|p| {
            (
                p.party.as_str(),
                PartyEntry {
                    handle: p.official_handle.clone(),
                    aliases: p.name_aliases.clone(),
                },
            )
        })
        .collect();
    serde_json::to_string_pretty(&map).expect("party map serializes")
}

/// Long-term profile attributes of one account.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UserProfile {
    pub user_id: String,
    pub account_created_at: DateTime<Utc>,
    pub statuses_count: u64,
    pub likes_count: u64,
    pub followers_count: u64,
    pub friends_count: u64,
}

impl UserProfile {
    pub fn account_age_days(&self, reference: DateTime<Utc>) -> f64 {
        (reference - self.account_created_at).num_seconds() as f64 / 86_400.0
    }
}

#[derive(Deserialize)]
struct ProfileRow {
    user_id: String,
    account_created_at: String,
    statuses_count: u64,
    likes_count: u64,
    followers_count: u64,
    friends_count: u64,
}

/// Reads `user_id,account_created_at,statuses_count,likes_count,followers_count,friends_count`.
/// Accounts created after `corpus_end` are rejected.
pub fn parse_profiles<R: Read>(reader: R, corpus_end: Option<DateTime<Utc>>) -> Result<Vec<UserProfile>> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let mut out = Vec::new();
    for (i, row) in rdr.deserialize::<ProfileRow>().enumerate() {
        let row = row?;
        let line = i + 2;
        let account_created_at = parse_timestamp(&row.account_created_at).map_err(|e| Error::line(line, e))?;
        if corpus_end.is_some_and(|end| account_created_at > end) {
            return Err(Error::line(
                line,
                format!("account `{}` created after corpus end", row.user_id),
            ));
        }
        out.push(UserProfile {
            user_id: row.user_id.trim_start_matches('@').to_string(),
            account_created_at,
            statuses_count: row.statuses_count,
            likes_count: row.likes_count,
            followers_count: row.followers_count,
            friends_count: row.friends_count,
        });
    }
    Ok(out)
}

pub fn load_profiles(path: impl AsRef<Path>, corpus_end: Option<DateTime<Utc>>) -> Result<Vec<UserProfile>> {
    let path = path.as_ref();
    parse_profiles(open(path)?, corpus_end)
}

pub fn write_profiles<W: std::io::Write>(writer: W, profiles: &[UserProfile]) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(writer);
    wtr.write_record([
        "user_id",
        "account_created_at",
        "statuses_count",
        "likes_count",
        "followers_count",
        "friends_count",
    ])?;
    for p in profiles {
        wtr.write_record([
            p.user_id.clone(),
            format_timestamp(p.account_created_at),
            p.statuses_count.to_string(),
            p.likes_count.to_string(),
            p.followers_count.to_string(),
            p.friends_count.to_string(),
        ])?;
    }
    wtr.flush()?;
    Ok(())
}

/// Short-term activity of one account over a corpus window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EngagementStats {
    pub subject_id: String,
    pub tweets: u64,
    pub retweets_received: u64,
    pub replies_received: u64,
    pub window: (DateTime<Utc>, DateTime<Utc>),
}

impl EngagementStats {
    pub fn avg_retweets(&self) -> f64 {
        if self.tweets == 0 {
            0.0
        } else {
            self.retweets_received as f64 / self.tweets as f64
        }
    }

    pub fn avg_replies(&self) -> f64 {
        if self.tweets == 0 {
            0.0
        } else {
            self.replies_received as f64 / self.tweets as f64
        }
    }
}

/// Counts originals authored by `author_id` and direct retweets/replies
/// targeting it. The window spans the earliest to latest tweet given.
pub fn engagement_stats(author_id: &str, tweets: &[Tweet]) -> EngagementStats {
    let mut stats = EngagementStats {
        subject_id: author_id.to_string(),
        tweets: 0,
        retweets_received: 0,
        replies_received: 0,
        window: (DateTime::UNIX_EPOCH, DateTime::UNIX_EPOCH),
    };
    let mut bounds: Option<(DateTime<Utc>, DateTime<Utc>)> = None;
    for t in tweets {
        bounds = Some(match bounds {
            None => (t.created_at, t.created_at),
            Some((lo, hi)) => (lo.min(t.created_at), hi.max(t.created_at)),
        });
        let targets_author = t
            .target_author_id
            .as_deref()
            .is_some_and(|a| same_account(a, author_id));
        match t.kind {
            TweetKind::Original if same_account(&t.author_id, author_id) => stats.tweets += 1,
            TweetKind::Retweet if targets_author => stats.retweets_received += 1,
            TweetKind::Reply if targets_author => stats.replies_received += 1,
            _ => {}
        }
    }
    if let Some(window) = bounds {
        stats.window = window;
    }
    stats
}

#[cfg(test)]
mod tests {
    use super::*;
    use chrono::TimeZone;

    fn line(id: &str, kind: &str, extra: &str) -> String {
        format!(
            r#"{{"id":"{id}","author_id":"u1","text":"hello","created_at":"2020-02-01T10:00:00Z","kind":"{kind}"{extra}}}"#
        )
    }

    pub(crate) fn tweet(id: &str, author: &str, kind: TweetKind, target: Option<&str>) -> Tweet {
        Tweet {
            id: id.into(),
            author_id: author.into(),
            text: String::new(),
            created_at: Utc.with_ymd_and_hms(2020, 2, 1, 0, 0, 0).unwrap(),
            kind,
            geo: None,
            user_location: None,
            target_author_id: target.map(Into::into),
        }
    }

    #[test]
    fn loads_three_valid_lines() {
        let data = [
            line("1", "original", ""),
            line("2", "retweet", ""),
            line("3", "reply", ""),
        ]
        .join("\n");
        let loaded = parse_tweets(data.as_bytes(), CorpusSchema::Generic).unwrap();
        assert_eq!(loaded.tweets.len(), 3);
        assert!(loaded.errors.is_empty());
        let ids: Vec<_> = loaded.tweets.iter().map(|t| t.id.as_str()).collect();
        assert_eq!(ids, ["1", "2", "3"]);
    }

    #[test]
    fn truncated_line_reported_not_fatal() {
        let data = format!(
            "{}\n{}\n{{\"id\":\"3\",\"auth",
            line("1", "original", ""),
            line("2", "original", "")
        );
        let loaded = parse_tweets(data.as_bytes(), CorpusSchema::Generic).unwrap();
        assert_eq!(loaded.tweets.len(), 2);
        assert_eq!(loaded.errors.len(), 1);
        assert_eq!(loaded.errors[0].line, 3);
    }

    #[test]
    fn empty_input() {
        let loaded = parse_tweets(&b""[..], CorpusSchema::Generic).unwrap();
        assert!(loaded.tweets.is_empty() && loaded.errors.is_empty());
    }

    #[test]
    fn missing_file_is_fatal() {
        let err = load_tweets("/nonexistent/tweets.jsonl", CorpusSchema::Generic).unwrap_err();
        assert!(matches!(err, Error::Io { .. }));
    }

    #[test]
    fn bad_kind_duplicate_id_and_schema_rules() {
        let data = [
            line("1", "quote", ""),
            line("2", "original", ""),
            line("2", "original", ""),
            line("4", "reply", ""),
            line("5", "reply", r#","target_author_id":"u9""#),
        ]
        .join("\n");
        let loaded = parse_tweets(data.as_bytes(), CorpusSchema::Candidate).unwrap();
        let bad: Vec<_> = loaded.errors.iter().map(|e| e.line).collect();
        assert_eq!(bad, [1, 3, 4]);
        assert_eq!(loaded.tweets.len(), 2);
    }

    #[test]
    fn timestamps_normalized_to_utc() {
        let t = parse_timestamp("2020-02-08T05:30:00+05:30").unwrap();
        assert_eq!(t, Utc.with_ymd_and_hms(2020, 2, 8, 0, 0, 0).unwrap());
        let t = parse_timestamp("2020-02-08T00:00:00.750Z").unwrap();
        assert_eq!(t, Utc.with_ymd_and_hms(2020, 2, 8, 0, 0, 0).unwrap());
        assert!(parse_timestamp("yesterday").is_err());
    }

    #[test]
    fn json_line_round_trip() {
        let mut t = tweet("9", "a", TweetKind::Reply, Some("b"));
        t.text = "quote \" and \\ newline\n".into();
        t.geo = Some(GeoPoint { lat: 28.61, lon: 77.21 });
        t.user_location = Some("New Delhi".into());
        let loaded = parse_tweets(t.to_json_line().as_bytes(), CorpusSchema::Candidate).unwrap();
        assert_eq!(loaded.tweets, vec![t]);
    }

    #[test]
    fn location_filter_rules() {
        let region = RegionSpec::delhi();
        let mut a = tweet("1", "x", TweetKind::Original, None);
        a.user_location = Some("New Delhi, India".into());
        let mut b = tweet("2", "x", TweetKind::Original, None);
        b.geo = Some(GeoPoint { lat: 28.61, lon: 77.21 });
        let mut c = tweet("3", "x", TweetKind::Original, None);
        c.user_location = Some("Mumbai".into());
        let mut d = tweet("4", "x", TweetKind::Original, None);
        d.geo = Some(GeoPoint { lat: 19.07, lon: 72.88 });
        let e = tweet("5", "x", TweetKind::Original, None);
        let kept = filter_by_location(&[a, b, c, d, e], &region);
        let ids: Vec<_> = kept.iter().map(|t| t.id.as_str()).collect();
        assert_eq!(ids, ["1", "2"]);
    }

    #[test]
    fn candidates_csv() {
        let csv = "handle,display_name,party,constituency,won\n@alice,Alice,AAP,Okhla,1\nbob,Bob,bjp,Rohini,false\n";
        let c = parse_candidates(csv.as_bytes()).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c[0].handle, "alice");
        assert!(c[0].won);
        assert_eq!(c[1].party, Party::BJP);
        assert!(!c[1].won);

        let dup = "handle,display_name,party,constituency,won\nalice,A,AAP,X,1\nAlice,B,INC,Y,0\n";
        match parse_candidates(dup.as_bytes()) {
            Err(Error::DuplicateHandle(h)) => assert_eq!(h, "Alice"),
            other => panic!("expected duplicate handle, got {other:?}"),
        }

        let bad_party = "handle,display_name,party,constituency,won\nalice,A,XYZ,X,1\n";
        assert!(matches!(
            parse_candidates(bad_party.as_bytes()),
            Err(Error::UnknownParty(_))
        ));
    }

    #[test]
    fn party_aliases_normalized() {
        let parties =
            parse_parties(r#"{"BJP": {"handle": "@BJP4Delhi", "aliases": ["BJP", "bjp", " Bharatiya  Janta Party"]}}"#)
                .unwrap();
        assert_eq!(parties[0].official_handle, "BJP4Delhi");
        assert_eq!(parties[0].name_aliases, ["bjp", "bharatiya janta party"]);
        assert!(parse_parties(r#"{"AAP": {"handle": "x", "aliases": []}}"#).is_err());
        assert_eq!(default_parties().len(), 3);
    }

    #[test]
    fn engagement_counts() {
        let mut tweets = vec![
            tweet("1", "cand", TweetKind::Original, None),
            tweet("2", "Cand", TweetKind::Original, None),
        ];
        for i in 0..3 {
            tweets.push(tweet(&format!("rt{i}"), "fan", TweetKind::Retweet, Some("cand")));
        }
        tweets.push(tweet("r1", "fan", TweetKind::Reply, Some("@cand")));
        tweets.push(tweet("r2", "fan", TweetKind::Reply, Some("other")));
        let s = engagement_stats("cand", &tweets);
        assert_eq!((s.tweets, s.retweets_received, s.replies_received), (2, 3, 1));

        let s = engagement_stats("absent", &tweets);
        assert_eq!((s.tweets, s.retweets_received, s.replies_received), (0, 0, 0));

        let replies: Vec<_> = (0..4)
            .map(|i| tweet(&i.to_string(), "f", TweetKind::Reply, Some("cand")))
            .collect();
        let s = engagement_stats("cand", &replies);
        assert_eq!((s.tweets, s.replies_received), (0, 4));
    }

    #[test]
    fn profiles_csv() {
        let csv = "user_id,account_created_at,statuses_count,likes_count,followers_count,friends_count\n\
                   alice,2015-01-01T00:00:00Z,10,20,30,40\n";
        let p = parse_profiles(csv.as_bytes(), None).unwrap();
        assert_eq!(p[0].followers_count, 30);
        let end = Utc.with_ymd_and_hms(2014, 1, 1, 0, 0, 0).unwrap();
        assert!(parse_profiles(csv.as_bytes(), Some(end)).is_err());
        let negative = csv.replace("10,20", "-10,20");
        assert!(parse_profiles(negative.as_bytes(), None).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn ingestion_is_total(bytes in proptest::collection::vec(any::<u8>(), 0..400)) {
                let lines = bytes.split(|b| *b == b'\n').count() - usize::from(bytes.last() == Some(&b'\n') || bytes.is_empty());
                let loaded = parse_tweets(&bytes[..], CorpusSchema::Generic).unwrap();
                prop_assert_eq!(loaded.tweets.len() + loaded.errors.len(), lines);
            }

            #[test]
            fn location_filter_is_subsequence(flags in proptest::collection::vec((any::<bool>(), any::<bool>()), 0..30)) {
                let tweets: Vec<Tweet> = flags.iter().enumerate().map(|(i, (g, l))| {
                    let mut t = tweet(&i.to_string(), "x", TweetKind::Original, None);
                    if *g { t.geo = Some(GeoPoint { lat: 28.6, lon: if i % 2 == 0 { 77.2 } else { 70.0 } }); }
                    if *l { t.user_location = Some(if i % 3 == 0 { "Delhi".into() } else { "Pune".into() }); }
                    t
                }).collect();
                let kept = filter_by_location(&tweets, &RegionSpec::delhi());
                let mut it = tweets.iter();
                for k in &kept {
                    prop_assert!(it.any(|t| t == k));
                }
            }
        }
    }
}
