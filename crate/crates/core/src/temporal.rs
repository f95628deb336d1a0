//! Day/frame windows and the candidate availability and activeness
//! metrics built on them.
//!
//! Only `original` tweets count as activity. Retweets and replies of a
//! candidate are engagement and never make a candidate available.

use std::collections::{BTreeMap, HashMap, HashSet};

use chrono::{DateTime, Duration, NaiveDate, Utc};

use crate::corpus::{CandidateRecord, Party, Tweet, TweetKind};
use crate::error::{Error, Result};

/// Maps instants to calendar days. Day boundaries fall at local midnight
/// for a fixed UTC offset (0 = UTC, 330 = IST).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct DayClock {
    pub offset_minutes: i32,
}

impl DayClock {
    pub const UTC: DayClock = DayClock { offset_minutes: 0 };
    pub const IST: DayClock = DayClock { offset_minutes: 330 };

    pub fn day_of(&self, ts: DateTime<Utc>) -> NaiveDate {
        (ts + Duration::minutes(self.offset_minutes.into())).date_naive()
    }

    /// The instant at which `day` begins.
    pub fn day_start(&self, day: NaiveDate) -> DateTime<Utc> {
        day.and_hms_opt(0, 0, 0).expect("midnight exists").and_utc() - Duration::minutes(self.offset_minutes.into())
    }

    pub fn day_window(&self, day: NaiveDate) -> Window {
        Window {
            start: self.day_start(day),
            end: self.day_start(day + Duration::days(1)),
        }
    }
}

/// Half-open interval `[start, end)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Window {
    pub start: DateTime<Utc>,
    pub end: DateTime<Utc>,
}

impl Window {
    pub fn new(start: DateTime<Utc>, end: DateTime<Utc>) -> Result<Self> {
        if start >= end {
            return Err(Error::invalid(format!("empty window [{start}, {end})")));
        }
        Ok(Window { start, end })
    }

    pub fn contains(&self, ts: DateTime<Utc>) -> bool {
        self.start <= ts && ts < self.end
    }
}

/// Consecutive calendar days from `first` through `last` inclusive.
pub fn day_range(first: NaiveDate, last: NaiveDate) -> Vec<NaiveDate> {
    first.iter_days().take_while(|d| *d <= last).collect()
}

/// Maps tweet authors onto candidate parties, case-insensitively.
struct Roster<'a> {
    by_handle: HashMap<String, &'a CandidateRecord>,
}

impl<'a> Roster<'a> {
    fn new(candidates: &'a [CandidateRecord]) -> Self {
        Roster {
            by_handle: candidates.iter().map(|c| (c.handle.to_ascii_lowercase(), c)).collect(),
        }
    }

    fn author(&self, tweet: &Tweet) -> Option<&'a CandidateRecord> {
        if tweet.kind != TweetKind::Original {
            return None;
        }
        self.by_handle
            .get(&tweet.author_id.trim_start_matches('@').to_ascii_lowercase())
            .copied()
    }
}

fn available_handles<'a>(roster: &Roster<'a>, tweets: &[Tweet]) -> HashSet<&'a str> {
    tweets
        .iter()
        .filter_map(|t| roster.author(t))
        .map(|c| c.handle.as_str())
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Availability {
    pub available: usize,
    pub total: usize,
}

impl Availability {
    pub fn share(&self) -> Option<f64> {
        (self.total > 0).then(|| self.available as f64 / self.total as f64)
    }
}

/// Per party: candidates with at least one original tweet, out of all.
/// All three parties are always present.
pub fn availability(candidates: &[CandidateRecord], tweets: &[Tweet]) -> BTreeMap<Party, Availability> {
    let roster = Roster::new(candidates);
    let active = available_handles(&roster, tweets);
    let mut out: BTreeMap<Party, Availability> = Party::ALL
        .iter()
        .map(|&p| (p, Availability { available: 0, total: 0 }))
        .collect();
    for c in candidates {
        let entry = out.get_mut(&c.party).expect("all parties present");
        entry.total += 1;
        if active.contains(c.handle.as_str()) {
            entry.available += 1;
        }
    }
    out
}

/// One point of a per-party series; `value` is `None` when the party has
/// no available candidate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesPoint {
    pub window: Window,
    pub value: Option<f64>,
    /// Original tweets by the party's candidates inside the window.
    pub originals: usize,
    /// The window is shorter than the requested frame length.
    pub partial: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ActivenessSeries {
    pub party: Party,
    pub points: Vec<SeriesPoint>,
}

fn index_originals<'a>(roster: &Roster<'a>, tweets: &[Tweet], clock: DayClock) -> Vec<(Party, &'a str, NaiveDate)> {
    tweets
        .iter()
        .filter_map(|t| {
            roster
                .author(t)
                .map(|c| (c.party, c.handle.as_str(), clock.day_of(t.created_at)))
        })
        .collect()
}

/// Originals per available candidate, for each day and party. The
/// denominator is availability over all of `tweets` and is the same for
/// every day.
pub fn daily_activeness(
    candidates: &[CandidateRecord],
    tweets: &[Tweet],
    days: &[NaiveDate],
    clock: DayClock,
) -> BTreeMap<Party, ActivenessSeries> {
    let avail = availability(candidates, tweets);
    let roster = Roster::new(candidates);
    let mut per_day: HashMap<(Party, NaiveDate), usize> = HashMap::new();
    for (party, _, day) in index_originals(&roster, tweets, clock) {
        *per_day.entry((party, day)).or_default() += 1;
    }
    Party::ALL
        .iter()
        .map(|&party| {
            let denom = avail[&party].available;
            let points = days
                .iter()
                .map(|&day| {
                    let originals = per_day.get(&(party, day)).copied().unwrap_or(0);
                    SeriesPoint {
                        window: clock.day_window(day),
                        value: (denom > 0).then(|| originals as f64 / denom as f64),
                        originals,
                        partial: false,
                    }
                })
                .collect();
            (party, ActivenessSeries { party, points })
        })
        .collect()
}

/// Splits `days` (consecutive, ascending) into frames of `frame_days`; the
/// last frame may be shorter.
pub fn frames(days: &[NaiveDate], frame_days: usize) -> Vec<&[NaiveDate]> {
    if frame_days == 0 {
        return Vec::new();
    }
    days.chunks(frame_days).collect()
}

/// Share of each party's available candidates with at least one original
/// tweet inside each frame of `frame_days` consecutive days.
pub fn frame_participation(
    candidates: &[CandidateRecord],
    tweets: &[Tweet],
    days: &[NaiveDate],
    frame_days: usize,
    clock: DayClock,
) -> Result<BTreeMap<Party, ActivenessSeries>> {
    if frame_days == 0 {
        return Err(Error::invalid("frame_days must be positive"));
    }
    let avail = availability(candidates, tweets);
    let roster = Roster::new(candidates);
    let originals = index_originals(&roster, tweets, clock);
    let day_frame: HashMap<NaiveDate, usize> = days.iter().enumerate().map(|(i, d)| (*d, i / frame_days)).collect();
    let chunks = frames(days, frame_days);

    let mut active: HashMap<(Party, usize), HashSet<&str>> = HashMap::new();
    let mut counts: HashMap<(Party, usize), usize> = HashMap::new();
    for (party, handle, day) in originals {
        if let Some(&f) = day_frame.get(&day) {
            active.entry((party, f)).or_default().insert(handle);
            *counts.entry((party, f)).or_default() += 1;
        }
    }

    Ok(Party::ALL
        .iter()
        .map(|&party| {
            let denom = avail[&party].available;
            let points = chunks
                .iter()
                .enumerate()
                .map(|(f, chunk)| {
                    let first = chunk[0];
                    let last = chunk[chunk.len() - 1];
                    let n_active = active.get(&(party, f)).map_or(0, HashSet::len);
                    SeriesPoint {
                        window: Window {
                            start: clock.day_start(first),
                            end: clock.day_start(last + Duration::days(1)),
                        },
                        value: (denom > 0).then(|| n_active as f64 / denom as f64),
                        originals: counts.get(&(party, f)).copied().unwrap_or(0),
                        partial: chunk.len() < frame_days,
                    }
                })
                .collect();
            (party, ActivenessSeries { party, points })
        })
        .collect())
}

/// The `span_days` days ending the day before `election_day`.
pub fn trailing_window_bounds(election_day: NaiveDate, span_days: u32, clock: DayClock) -> Result<Window> {
    if span_days == 0 {
        return Err(Error::invalid("span_days must be positive"));
    }
    Window::new(
        clock.day_start(election_day - Duration::days(span_days.into())),
        clock.day_start(election_day),
    )
}

/// Tweets created inside [`trailing_window_bounds`], in input order.
pub fn trailing_window(
    tweets: &[Tweet],
    election_day: NaiveDate,
    span_days: u32,
    clock: DayClock,
) -> Result<Vec<&Tweet>> {
    let window = trailing_window_bounds(election_day, span_days, clock)?;
    Ok(tweets.iter().filter(|t| window.contains(t.created_at)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use chrono::TimeZone;
    use proptest::prelude::*;

    fn cand(handle: &str, party: Party) -> CandidateRecord {
        CandidateRecord {
            handle: handle.into(),
            display_name: handle.into(),
            party,
            constituency: "x".into(),
            won: false,
        }
    }

    fn tw(id: usize, author: &str, kind: TweetKind, at: DateTime<Utc>) -> Tweet {
        Tweet {
            id: id.to_string(),
            author_id: author.into(),
            text: String::new(),
            created_at: at,
            kind,
            geo: None,
            user_location: None,
            target_author_id: None,
        }
    }

    fn day(d: u32) -> NaiveDate {
        NaiveDate::from_ymd_opt(2020, 1, d).unwrap()
    }

    fn at(d: u32, h: u32) -> DateTime<Utc> {
        Utc.with_ymd_and_hms(2020, 1, d, h, 0, 0).unwrap()
    }

    #[test]
    fn availability_examples() {
        let cands = [
            cand("a", Party::AAP),
            cand("b", Party::AAP),
            cand("c", Party::AAP),
            cand("d", Party::BJP),
        ];
        let tweets = [
            tw(1, "a", TweetKind::Original, at(21, 1)),
            tw(2, "B", TweetKind::Original, at(21, 2)),
            tw(3, "fan", TweetKind::Retweet, at(21, 3)),
            tw(4, "d", TweetKind::Retweet, at(21, 3)),
        ];
        let av = availability(&cands, &tweets);
        assert_eq!(av[&Party::AAP], Availability { available: 2, total: 3 });
        assert_eq!(av[&Party::BJP], Availability { available: 0, total: 1 });
        assert_eq!(av[&Party::INC], Availability { available: 0, total: 0 });

        let empty = availability(&cands, &[]);
        assert_eq!(empty[&Party::AAP], Availability { available: 0, total: 3 });
    }

    #[test]
    fn daily_activeness_examples() {
        let cands = [cand("a", Party::AAP), cand("b", Party::AAP), cand("z", Party::BJP)];
        let mut tweets: Vec<_> = (0..6)
            .map(|i| tw(i, if i % 2 == 0 { "a" } else { "b" }, TweetKind::Original, at(22, 5)))
            .collect();
        tweets.push(tw(99, "a", TweetKind::Original, at(21, 5)));
        let series = daily_activeness(&cands, &tweets, &[day(22), day(23)], DayClock::UTC);
        let aap = &series[&Party::AAP].points;
        assert_eq!(aap[0].value, Some(3.0));
        assert_eq!(aap[1].value, Some(0.0));
        assert!(series[&Party::BJP].points.iter().all(|p| p.value.is_none()));
    }

    #[test]
    fn day_clock_offsets() {
        let ts = Utc.with_ymd_and_hms(2020, 2, 7, 20, 0, 0).unwrap();
        assert_eq!(DayClock::UTC.day_of(ts), NaiveDate::from_ymd_opt(2020, 2, 7).unwrap());
        assert_eq!(DayClock::IST.day_of(ts), NaiveDate::from_ymd_opt(2020, 2, 8).unwrap());
        let start = DayClock::IST.day_start(NaiveDate::from_ymd_opt(2020, 2, 8).unwrap());
        assert_eq!(start, Utc.with_ymd_and_hms(2020, 2, 7, 18, 30, 0).unwrap());
    }

    #[test]
    fn frame_examples() {
        let days = day_range(day(21), NaiveDate::from_ymd_opt(2020, 2, 7).unwrap());
        assert_eq!(days.len(), 18);
        assert_eq!(frames(&days, 3).len(), 6);

        let cands: Vec<_> = ["a", "b", "c", "d"].iter().map(|h| cand(h, Party::INC)).collect();
        let mut tweets: Vec<_> = ["a", "b", "c", "d"]
            .iter()
            .enumerate()
            .map(|(i, h)| tw(i, h, TweetKind::Original, at(30, 1)))
            .collect();
        for i in 0..10 {
            tweets.push(tw(100 + i, "a", TweetKind::Original, at(21, 1)));
        }
        tweets.push(tw(200, "b", TweetKind::Original, at(22, 1)));
        let fp = frame_participation(&cands, &tweets, &days, 3, DayClock::UTC).unwrap();
        let inc = &fp[&Party::INC].points;
        assert_eq!(inc.len(), 6);
        assert_eq!(inc[0].value, Some(0.5));
        assert_eq!(inc[0].originals, 11);
        assert!(!inc[5].partial);

        let short = frame_participation(&cands, &tweets, &days[..17], 3, DayClock::UTC).unwrap();
        assert!(short[&Party::INC].points[5].partial);
        assert!(frame_participation(&cands, &tweets, &days, 0, DayClock::UTC).is_err());
    }

    #[test]
    fn trailing_window_examples() {
        let election = NaiveDate::from_ymd_opt(2020, 2, 8).unwrap();
        let w = trailing_window_bounds(election, 7, DayClock::UTC).unwrap();
        assert_eq!(w.start, Utc.with_ymd_and_hms(2020, 2, 1, 0, 0, 0).unwrap());
        assert_eq!(w.end, Utc.with_ymd_and_hms(2020, 2, 8, 0, 0, 0).unwrap());

        let tweets = [
            tw(
                1,
                "x",
                TweetKind::Original,
                Utc.with_ymd_and_hms(2020, 2, 7, 23, 59, 59).unwrap(),
            ),
            tw(
                2,
                "x",
                TweetKind::Original,
                Utc.with_ymd_and_hms(2020, 2, 8, 0, 0, 0).unwrap(),
            ),
            tw(
                3,
                "x",
                TweetKind::Original,
                Utc.with_ymd_and_hms(2020, 2, 6, 12, 0, 0).unwrap(),
            ),
        ];
        let last = trailing_window(&tweets, election, 1, DayClock::UTC).unwrap();
        assert_eq!(last.iter().map(|t| t.id.as_str()).collect::<Vec<_>>(), ["1"]);
        assert!(trailing_window(&tweets, election, 0, DayClock::UTC).is_err());
    }

    fn fuzz_corpus(raw: &[(u8, u8, u8)]) -> (Vec<CandidateRecord>, Vec<Tweet>) {
        let cands: Vec<_> = (0..6).map(|i| cand(&format!("c{i}"), Party::ALL[i % 3])).collect();
        let tweets = raw
            .iter()
            .enumerate()
            .map(|(i, (who, d, k))| {
                let kind = [TweetKind::Original, TweetKind::Retweet, TweetKind::Reply][*k as usize % 3];
                tw(
                    i,
                    &format!("c{}", who % 8),
                    kind,
                    at(1 + u32::from(*d % 20), u32::from(*k % 24)),
                )
            })
            .collect();
        (cands, tweets)
    }

    proptest! {
        #[test]
        fn frames_conserve_originals(raw in proptest::collection::vec(any::<(u8, u8, u8)>(), 0..80), frame in 1usize..6) {
            let (cands, tweets) = fuzz_corpus(&raw);
            let days = day_range(day(1), day(20));
            let fp = frame_participation(&cands, &tweets, &days, frame, DayClock::UTC).unwrap();
            let total: usize = fp.values().flat_map(|s| s.points.iter()).map(|p| p.originals).sum();
            let expected = tweets.iter().filter(|t| t.kind == TweetKind::Original && cands.iter().any(|c| c.handle == t.author_id)).count();
            prop_assert_eq!(total, expected);
        }

        #[test]
        fn availability_monotone(raw in proptest::collection::vec(any::<(u8, u8, u8)>(), 0..60), split in 0usize..60) {
            let (cands, tweets) = fuzz_corpus(&raw);
            let cut = split.min(tweets.len());
            let before = availability(&cands, &tweets[..cut]);
            let after = availability(&cands, &tweets);
            for p in Party::ALL {
                prop_assert!(after[&p].available >= before[&p].available);
            }
        }

        #[test]
        fn trailing_windows_nest(raw in proptest::collection::vec(any::<(u8, u8, u8)>(), 0..60), a in 1u32..25, b in 1u32..25) {
            let (_, tweets) = fuzz_corpus(&raw);
            let (a, b) = (a.min(b), a.max(b));
            let election = day(21);
            let small = trailing_window(&tweets, election, a, DayClock::UTC).unwrap();
            let large = trailing_window(&tweets, election, b, DayClock::UTC).unwrap();
            prop_assert!(small.iter().all(|t| large.iter().any(|u| u.id == t.id)));
        }
    }
}
