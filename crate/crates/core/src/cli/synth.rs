//! Seeded synthetic election corpus.
//!
//! Winning candidates draw each token slot from a planted vocabulary with
//! probability `plant_rate` and from the shared campaign vocabulary
//! otherwise; losing candidates only use the shared vocabulary. At rate 0
//! the two classes are indistinguishable by text.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use chrono::{DateTime, Duration, NaiveDate, Utc};
use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, LogNormal, Poisson};

use crate::corpus::{
    default_parties, parties_to_json, write_candidates, write_profiles, CandidateRecord, GeoPoint, Party, PartyRecord,
    Tweet, TweetKind, UserProfile,
};
use crate::error::{Error, Result};
use crate::ml::SeedStream;

pub const DEFAULT_WIN_VOCAB: [&str; 20] = [
    "vikas",
    "badlaav",
    "jeetenge",
    "imaandar",
    "mohalla",
    "bijli",
    "paani",
    "tiranga",
    "sankalp",
    "pragati",
    "vishwas",
    "parivartan",
    "samruddhi",
    "nirman",
    "shiksha",
    "swasthya",
    "suraksha",
    "ujjwal",
    "abhiyan",
    "utsav",
];

const CAMPAIGN_WORDS: [&str; 60] = [
    "vote",
    "voters",
    "rally",
    "booth",
    "campaign",
    "election",
    "delhi",
    "people",
    "city",
    "ward",
    "school",
    "hospital",
    "road",
    "metro",
    "water",
    "power",
    "bill",
    "budget",
    "women",
    "youth",
    "farmers",
    "traders",
    "jobs",
    "pollution",
    "air",
    "traffic",
    "colony",
    "market",
    "today",
    "tomorrow",
    "evening",
    "morning",
    "meeting",
    "speech",
    "manifesto",
    "promise",
    "work",
    "team",
    "volunteers",
    "door",
    "visit",
    "area",
    "residents",
    "street",
    "park",
    "light",
    "fund",
    "scheme",
    "pension",
    "ration",
    "card",
    "office",
    "minister",
    "leader",
    "candidate",
    "seat",
    "result",
    "poll",
    "turnout",
    "debate",
];

const SENTIMENT_WORDS: [&str; 24] = [
    "good", "great", "happy", "proud", "hope", "trust", "support", "thank", "win", "love", "strong", "safe", "bad",
    "corrupt", "fake", "fail", "lies", "shame", "angry", "worst", "poor", "problem", "wrong", "fear",
];

const SYLLABLES: [&str; 16] = [
    "ka", "ri", "mo", "ta", "su", "le", "na", "po", "di", "ve", "ga", "ho", "ba", "ni", "ru", "sa",
];

const HASHTAGS: [&str; 8] = [
    "DelhiElections2020",
    "DelhiPolls",
    "DelhiVotes",
    "DelhiElection",
    "VoteForDelhi",
    "DelhiAssemblyPolls",
    "Elections2020",
    "DelhiDecides",
];

const LOCATIONS: [(&str, bool); 8] = [
    ("New Delhi, India", true),
    ("Delhi", true),
    ("South Delhi", true),
    ("delhi ncr", true),
    ("Mumbai", false),
    ("Bengaluru, India", false),
    ("Kolkata", false),
    ("Jaipur", false),
];

/// Parameters of the generator.
#[derive(Debug, Clone, PartialEq)]
pub struct SynthSpec {
    pub candidates_per_party: usize,
    /// Share of winning candidates, indexed like [`Party::ALL`].
    pub win_rates: [f64; 3],
    /// Poisson mean of original tweets per active candidate.
    pub tweets_per_candidate: f64,
    pub public_tweets: usize,
    pub win_vocab: Vec<String>,
    pub plant_rate: f64,
    /// First and last calendar day (UTC), inclusive.
    pub start: NaiveDate,
    pub end: NaiveDate,
}

impl Default for SynthSpec {
    fn default() -> Self {
        SynthSpec {
            candidates_per_party: 20,
            win_rates: [0.8, 0.5, 0.2],
            tweets_per_candidate: 100.0,
            public_tweets: 3000,
            win_vocab: DEFAULT_WIN_VOCAB.iter().map(|s| s.to_string()).collect(),
            plant_rate: 0.6,
            start: NaiveDate::from_ymd_opt(2019, 12, 22).expect("valid date"),
            end: NaiveDate::from_ymd_opt(2020, 2, 7).expect("valid date"),
        }
    }
}

impl SynthSpec {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.plant_rate) {
            return Err(Error::invalid("plant rate must be in [0, 1]"));
        }
        if self.win_rates.iter().any(|r| !(0.0..=1.0).contains(r)) {
            return Err(Error::invalid("win rates must be in [0, 1]"));
        }
        if self.start > self.end {
            return Err(Error::invalid("synthetic date range is empty"));
        }
        if self.candidates_per_party == 0 {
            return Err(Error::invalid("need at least one candidate per party"));
        }
        if !(self.tweets_per_candidate > 0.0 && self.tweets_per_candidate.is_finite()) {
            return Err(Error::invalid("tweets per candidate must be positive"));
        }
        if self.win_vocab.is_empty() {
            return Err(Error::invalid("planted vocabulary is empty"));
        }
        Ok(())
    }
}

/// Generated tables, ready to be written.
#[derive(Debug, Clone)]
pub struct SynthCorpus {
    pub public_tweets: Vec<Tweet>,
    pub candidate_tweets: Vec<Tweet>,
    pub candidates: Vec<CandidateRecord>,
    pub parties: Vec<PartyRecord>,
    pub profiles: Vec<UserProfile>,
}

/// Word list shared by every author.
pub fn shared_vocabulary() -> Vec<String> {
    let mut words: Vec<String> = CAMPAIGN_WORDS
        .iter()
        .chain(&SENTIMENT_WORDS)
        .map(|s| s.to_string())
        .collect();
    for a in SYLLABLES {
        for b in SYLLABLES {
            if a != b {
                words.push(format!("{a}{b}"));
            }
        }
    }
    words
}

struct Clock {
    start: DateTime<Utc>,
    seconds: i64,
}

impl Clock {
    fn new(spec: &SynthSpec) -> Clock {
        let start = spec.start.and_hms_opt(0, 0, 0).expect("midnight").and_utc();
        let end = (spec.end + Duration::days(1))
            .and_hms_opt(0, 0, 0)
            .expect("midnight")
            .and_utc();
        Clock {
            start,
            seconds: (end - start).num_seconds(),
        }
    }

    fn draw(&self, rng: &mut ChaCha8Rng) -> DateTime<Utc> {
        self.start + Duration::seconds(rng.random_range(0..self.seconds))
    }

    /// A later instant, still inside the range when possible.
    fn after(&self, at: DateTime<Utc>, rng: &mut ChaCha8Rng) -> DateTime<Utc> {
        let left = (self.start + Duration::seconds(self.seconds) - at).num_seconds() - 1;
        at + Duration::seconds(rng.random_range(0..=left.clamp(0, 86_400)))
    }
}

fn poisson(mean: f64, rng: &mut ChaCha8Rng) -> usize {
    if mean <= 0.0 {
        return 0;
    }
    Poisson::new(mean).expect("positive mean").sample(rng) as usize
}

fn words(vocab: &[String], n: usize, rng: &mut ChaCha8Rng) -> Vec<String> {
    (0..n).map(|_| vocab.choose(rng).expect("nonempty").clone()).collect()
}

fn party_phrase(party: &PartyRecord, rng: &mut ChaCha8Rng) -> String {
    match rng.random_range(0..3) {
        0 => party.name_aliases.choose(rng).expect("aliases").clone(),
        1 => format!("@{}", party.official_handle),
        _ => party.party.as_str().to_lowercase(),
    }
}

/// Builds the corpus for `spec`; identical inputs give identical output.
pub fn generate(spec: &SynthSpec, seed: u64) -> Result<SynthCorpus> {
    spec.validate()?;
    let root = SeedStream::new(seed);
    let parties = default_parties();
    let shared = shared_vocabulary();
    let clock = Clock::new(spec);

    // Roster with exact winner counts per party.
    let mut rng = root.named("roster").rng();
    let mut candidates = Vec::new();
    let mut constituency = 0;
    for (pi, party) in Party::ALL.iter().enumerate() {
        let n = spec.candidates_per_party;
        let winners = (spec.win_rates[pi] * n as f64).round() as usize;
        let mut won: Vec<bool> = (0..n).map(|i| i < winners).collect();
        won.shuffle(&mut rng);
        for (i, w) in won.into_iter().enumerate() {
            constituency += 1;
            candidates.push(CandidateRecord {
                handle: format!("{}_cand{:02}", party.as_str().to_lowercase(), i + 1),
                display_name: format!("{} Candidate {}", party.as_str(), i + 1),
                party: *party,
                constituency: format!("AC{:02}", (constituency - 1) % 70 + 1),
                won: w,
            });
        }
    }

    // Candidate originals plus engagement from the public.
    let mut candidate_tweets = Vec::new();
    let mut next_id = 0u64;
    let mut id = || {
        next_id += 1;
        format!("t{next_id:07}")
    };
    for (ci, cand) in candidates.iter().enumerate() {
        let mut rng = root.named("candidate").derive(ci as u64).rng();
        // A few candidates never post.
        if rng.random_bool(0.1) {
            continue;
        }
        for _ in 0..poisson(spec.tweets_per_candidate, &mut rng) {
            let len = rng.random_range(6..=14);
            let mut tokens: Vec<String> = (0..len)
                .map(|_| {
                    if cand.won && rng.random_bool(spec.plant_rate) {
                        spec.win_vocab.choose(&mut rng).expect("nonempty").clone()
                    } else {
                        shared.choose(&mut rng).expect("nonempty").clone()
                    }
                })
                .collect();
            // Party names would leak the label through unequal win rates.
            if rng.random_bool(0.3) {
                tokens.push(format!("#{}", HASHTAGS.choose(&mut rng).expect("tags")));
            }
            let at = clock.draw(&mut rng);
            let original = Tweet {
                id: id(),
                author_id: cand.handle.clone(),
                text: tokens.join(" "),
                created_at: at,
                kind: TweetKind::Original,
                geo: None,
                user_location: Some("New Delhi, India".into()),
                target_author_id: None,
            };
            let (rt_mean, rp_mean) = if cand.won { (2.0, 0.6) } else { (1.0, 0.4) };
            let mut engagement = Vec::new();
            for (kind, mean) in [(TweetKind::Retweet, rt_mean), (TweetKind::Reply, rp_mean)] {
                for _ in 0..poisson(mean, &mut rng) {
                    let text = match kind {
                        TweetKind::Retweet => format!("RT @{}: {}", cand.handle, original.text),
                        _ => format!("@{} {}", cand.handle, words(&shared, 5, &mut rng).join(" ")),
                    };
                    engagement.push(Tweet {
                        id: id(),
                        author_id: format!("user{:04}", rng.random_range(0..2000)),
                        text,
                        created_at: clock.after(at, &mut rng),
                        kind,
                        geo: None,
                        user_location: None,
                        target_author_id: Some(cand.handle.clone()),
                    });
                }
            }
            candidate_tweets.push(original);
            candidate_tweets.extend(engagement);
        }
    }

    // Official party handles.
    for (pi, party) in parties.iter().enumerate() {
        let mut rng = root.named("party").derive(pi as u64).rng();
        let volume = [1.4, 1.2, 0.7][pi];
        for _ in 0..poisson(0.6 * spec.tweets_per_candidate * volume, &mut rng) {
            let mut tokens = words(&shared, rng.random_range(6..=12), &mut rng);
            tokens.push(format!("#{}", HASHTAGS.choose(&mut rng).expect("tags")));
            let at = clock.draw(&mut rng);
            let original = Tweet {
                id: id(),
                author_id: party.official_handle.clone(),
                text: tokens.join(" "),
                created_at: at,
                kind: TweetKind::Original,
                geo: None,
                user_location: Some("New Delhi".into()),
                target_author_id: None,
            };
            let mut engagement = Vec::new();
            for (kind, mean) in [(TweetKind::Retweet, 8.0 * volume), (TweetKind::Reply, 3.0 * volume)] {
                for _ in 0..poisson(mean, &mut rng) {
                    engagement.push(Tweet {
                        id: id(),
                        author_id: format!("user{:04}", rng.random_range(0..2000)),
                        text: format!("@{} {}", party.official_handle, words(&shared, 4, &mut rng).join(" ")),
                        created_at: clock.after(at, &mut rng),
                        kind,
                        geo: None,
                        user_location: None,
                        target_author_id: Some(party.official_handle.clone()),
                    });
                }
            }
            candidate_tweets.push(original);
            candidate_tweets.extend(engagement);
        }
    }

    // Public chatter with party-dependent tone.
    let mut rng = root.named("public").rng();
    let positive: Vec<String> = SENTIMENT_WORDS[..12].iter().map(|s| s.to_string()).collect();
    let negative: Vec<String> = SENTIMENT_WORDS[12..].iter().map(|s| s.to_string()).collect();
    let tone = [(0.35, 0.15), (0.25, 0.25), (0.15, 0.35)];
    let campaign: Vec<String> = CAMPAIGN_WORDS.iter().map(|s| s.to_string()).collect();
    let mut public_tweets = Vec::with_capacity(spec.public_tweets);
    for _ in 0..spec.public_tweets {
        let mut tokens = words(&campaign, rng.random_range(5..=10), &mut rng);
        let roll: f64 = rng.random();
        let mentioned: Vec<usize> = if roll < 0.7 {
            vec![rng.random_range(0..3)]
        } else if roll < 0.85 {
            let a = rng.random_range(0..3);
            vec![a, (a + rng.random_range(1..3)) % 3]
        } else {
            Vec::new()
        };
        for &p in &mentioned {
            let (pos, neg) = tone[p];
            tokens.push(party_phrase(&parties[p], &mut rng));
            for _ in 0..3 {
                if rng.random_bool(pos) {
                    tokens.push(positive.choose(&mut rng).expect("words").clone());
                }
                if rng.random_bool(neg) {
                    tokens.push(negative.choose(&mut rng).expect("words").clone());
                }
            }
        }
        if rng.random_bool(0.4) {
            tokens.push(format!("#{}", HASHTAGS.choose(&mut rng).expect("tags")));
        }
        if rng.random_bool(0.15) {
            let c = candidates.choose(&mut rng).expect("candidates");
            tokens.push(format!("@{}", c.handle));
        }
        tokens.shuffle(&mut rng);
        let (geo, user_location) = match rng.random_range(0..10) {
            0 => (
                Some(GeoPoint {
                    lat: rng.random_range(28.45..28.85),
                    lon: rng.random_range(76.85..77.35),
                }),
                None,
            ),
            1 => (None, None),
            _ => (None, Some(LOCATIONS.choose(&mut rng).expect("places").0.to_string())),
        };
        public_tweets.push(Tweet {
            id: id(),
            author_id: format!("user{:04}", rng.random_range(0..2000)),
            text: tokens.join(" "),
            created_at: clock.draw(&mut rng),
            kind: if rng.random_bool(0.85) {
                TweetKind::Original
            } else {
                TweetKind::Retweet
            },
            geo,
            user_location,
            target_author_id: None,
        });
    }

    // Profiles for every tracked account.
    let mut rng = root.named("profiles").rng();
    let start = clock.start;
    let mut profiles = Vec::new();
    let accounts = candidates
        .iter()
        .map(|c| (c.handle.clone(), if c.won { 1.0 } else { 0.0 }))
        .chain(parties.iter().map(|p| (p.official_handle.clone(), 3.0)));
    for (user_id, boost) in accounts {
        let draw =
            |mu: f64, rng: &mut ChaCha8Rng| LogNormal::new(mu + boost * 0.5, 1.0).expect("sigma").sample(rng) as u64;
        profiles.push(UserProfile {
            user_id,
            account_created_at: start - Duration::days(rng.random_range(200..4000)),
            statuses_count: draw(7.0, &mut rng),
            likes_count: draw(6.0, &mut rng),
            followers_count: draw(8.0, &mut rng),
            friends_count: draw(5.0, &mut rng),
        });
    }

    Ok(SynthCorpus {
        public_tweets,
        candidate_tweets,
        candidates,
        parties,
        profiles,
    })
}

/// File names written by [`write_corpus`].
pub const TWEETS_FILE: &str = "tweets.jsonl";
pub const CANDIDATE_TWEETS_FILE: &str = "candidate_tweets.jsonl";
pub const CANDIDATES_FILE: &str = "candidates.csv";
pub const PARTIES_FILE: &str = "parties.json";
pub const PROFILES_FILE: &str = "profiles.csv";

fn create(path: &Path) -> Result<std::io::BufWriter<fs::File>> {
    Ok(std::io::BufWriter::new(
        fs::File::create(path).map_err(|e| Error::io(path, e))?,
    ))
}

fn write_jsonl(path: &Path, tweets: &[Tweet]) -> Result<()> {
    let mut w = create(path)?;
    for t in tweets {
        writeln!(w, "{}", t.to_json_line()).map_err(|e| Error::io(path, e))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

/// Writes every table into `dir` and returns the paths in write order.
pub fn write_corpus(corpus: &SynthCorpus, dir: &Path) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let paths: Vec<PathBuf> = [
        TWEETS_FILE,
        CANDIDATE_TWEETS_FILE,
        CANDIDATES_FILE,
        PARTIES_FILE,
        PROFILES_FILE,
    ]
    .iter()
    .map(|f| dir.join(f))
    .collect();
    write_jsonl(&paths[0], &corpus.public_tweets)?;
    write_jsonl(&paths[1], &corpus.candidate_tweets)?;
    write_candidates(create(&paths[2])?, &corpus.candidates)?;
    fs::write(&paths[3], parties_to_json(&corpus.parties) + "\n").map_err(|e| Error::io(&paths[3], e))?;
    write_profiles(create(&paths[4])?, &corpus.profiles)?;
    Ok(paths)
}
