//! Hashtag/mention rankings and keyword-based party attribution.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::corpus::{Party, PartyRecord, Tweet};
use crate::error::{Error, Result};
use crate::textprep::tokenize_raw;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TagKind {
    Hashtag,
    Mention,
}

impl TagKind {
    fn sigil(self) -> char {
        match self {
            TagKind::Hashtag => '#',
            TagKind::Mention => '@',
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TagCount {
    pub tag: String,
    pub count: usize,
}

fn is_tag_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_'
}

/// Distinct case-folded tags of one kind in `text`. A sigil only starts a
/// tag when it is not glued to a preceding word character, so e-mail
/// addresses are not mentions.
pub fn extract_tags(text: &str, kind: TagKind) -> BTreeSet<String> {
    let sigil = kind.sigil();
    let mut tags = BTreeSet::new();
    let mut prev: Option<char> = None;
    let mut chars = text.char_indices().peekable();
    while let Some((i, c)) = chars.next() {
        if c == sigil && !prev.is_some_and(is_tag_char) {
            let start = i + c.len_utf8();
            let mut end = start;
            while let Some(&(j, d)) = chars.peek() {
                if !is_tag_char(d) {
                    break;
                }
                end = j + d.len_utf8();
                chars.next();
            }
            if end > start {
                tags.insert(text[start..end].to_lowercase());
            }
            prev = text[..end].chars().next_back();
            continue;
        }
        prev = Some(c);
    }
    tags
}

/// The `k` tags contained in the most tweets (each tweet counts a tag
/// once), by count descending then tag ascending.
pub fn top_tags(tweets: &[Tweet], kind: TagKind, k: usize) -> Vec<TagCount> {
    let mut counts: HashMap<String, usize> = HashMap::new();
    for t in tweets {
        for tag in extract_tags(&t.text, kind) {
            *counts.entry(tag).or_default() += 1;
        }
    }
    let mut ranked: Vec<TagCount> = counts.into_iter().map(|(tag, count)| TagCount { tag, count }).collect();
    ranked.sort_by(|a, b| b.count.cmp(&a.count).then_with(|| a.tag.cmp(&b.tag)));
    ranked.truncate(k);
    ranked
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartyAttribution {
    pub tweet_id: String,
    pub parties: BTreeSet<Party>,
}

fn contains_phrase(tokens: &[String], phrase: &[&str]) -> bool {
    !phrase.is_empty()
        && tokens
            .windows(phrase.len())
            .any(|w| w.iter().zip(phrase).all(|(a, b)| a == b))
}

/// Parties whose alias appears in the tweet as whole tokens.
pub fn attribute_parties(tweet: &Tweet, parties: &[PartyRecord]) -> PartyAttribution {
    let tokens = tokenize_raw(&tweet.text);
    let hits = parties
        .iter()
        .filter(|p| {
            p.name_aliases.iter().any(|alias| {
                let phrase: Vec<&str> = alias.split_whitespace().collect();
                contains_phrase(&tokens, &phrase)
            })
        })
        .map(|p| p.party)
        .collect();
    PartyAttribution {
        tweet_id: tweet.id.clone(),
        parties: hits,
    }
}

/// Tweets attributed to exactly one party, in input order.
pub fn single_party_tweets<'a>(tweets: &'a [Tweet], parties: &[PartyRecord]) -> Vec<(&'a Tweet, Party)> {
    tweets
        .iter()
        .filter_map(|t| {
            let attr = attribute_parties(t, parties);
            match attr.parties.len() {
                1 => attr.parties.first().map(|&p| (t, p)),
                _ => None,
            }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShareMode {
    /// Denominator: tweets mentioning at least one party. Shares may sum above 1.
    Any,
    /// Denominator: tweets mentioning exactly one party. Shares sum to 1.
    Single,
}

/// Share of attributed tweets mentioning each party. Every party in
/// `parties` gets an entry.
pub fn mention_shares(tweets: &[Tweet], parties: &[PartyRecord], mode: ShareMode) -> Result<BTreeMap<Party, f64>> {
    let mut counts: BTreeMap<Party, usize> = parties.iter().map(|p| (p.party, 0)).collect();
    let mut denominator = 0usize;
    for t in tweets {
        let attr = attribute_parties(t, parties);
        let eligible = match mode {
            ShareMode::Any => !attr.parties.is_empty(),
            ShareMode::Single => attr.parties.len() == 1,
        };
        if eligible {
            denominator += 1;
            for p in attr.parties {
                *counts.entry(p).or_default() += 1;
            }
        }
    }
    if denominator == 0 {
        return Err(Error::NoData("no tweet mentions a party".into()));
    }
    Ok(counts
        .into_iter()
        .map(|(p, c)| (p, c as f64 / denominator as f64))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{default_parties, TweetKind};
    use chrono::{TimeZone, Utc};
    use proptest::prelude::*;

    fn tw(id: usize, text: &str) -> Tweet {
        Tweet {
            id: id.to_string(),
            author_id: "u".into(),
            text: text.into(),
            created_at: Utc.with_ymd_and_hms(2020, 2, 1, 0, 0, 0).unwrap(),
            kind: TweetKind::Original,
            geo: None,
            user_location: None,
            target_author_id: None,
        }
    }

    fn parties_of(text: &str) -> Vec<Party> {
        attribute_parties(&tw(0, text), &default_parties())
            .parties
            .into_iter()
            .collect()
    }

    #[test]
    fn tag_extraction() {
        let tags = extract_tags("#Delhi #delhi vote@home @AAP_Delhi! #", TagKind::Hashtag);
        assert_eq!(tags.into_iter().collect::<Vec<_>>(), ["delhi"]);
        let tags = extract_tags("mail me@x.org or ping @AAP_Delhi!", TagKind::Mention);
        assert_eq!(tags.into_iter().collect::<Vec<_>>(), ["aap_delhi"]);
    }

    #[test]
    fn top_tags_counts_per_tweet() {
        let tweets = [tw(1, "#a #a"), tw(2, "#a #b")];
        let top = top_tags(&tweets, TagKind::Hashtag, 2);
        assert_eq!(
            top,
            [
                TagCount {
                    tag: "a".into(),
                    count: 2
                },
                TagCount {
                    tag: "b".into(),
                    count: 1
                }
            ]
        );
        assert!(top_tags(&[tw(1, "no tags")], TagKind::Hashtag, 5).is_empty());

        let tied: Vec<_> = (0..3).flat_map(|i| [tw(2 * i, "#b"), tw(2 * i + 1, "#a")]).collect();
        assert_eq!(
            top_tags(&tied, TagKind::Hashtag, 1),
            [TagCount {
                tag: "a".into(),
                count: 3
            }]
        );
    }

    #[test]
    fn attribution_examples() {
        assert_eq!(parties_of("aap will win delhi"), [Party::AAP]);
        assert_eq!(parties_of("bjp vs congress debate"), [Party::BJP, Party::INC]);
        assert!(parties_of("aapka vote").is_empty());
        assert_eq!(parties_of("Vote for the Aam Aadmi Party!"), [Party::AAP]);
        assert!(parties_of("aam people and a party").is_empty());
        assert_eq!(parties_of("#BJP rally"), [Party::BJP]);
    }

    #[test]
    fn single_party_filter() {
        let tweets = [tw(1, "aap"), tw(2, "aap and bjp"), tw(3, "nothing")];
        let single = single_party_tweets(&tweets, &default_parties());
        assert_eq!(single.len(), 1);
        assert_eq!((single[0].0.id.as_str(), single[0].1), ("1", Party::AAP));

        let both: Vec<_> = (0..4).map(|i| tw(i, "bjp congress")).collect();
        assert!(single_party_tweets(&both, &default_parties()).is_empty());

        let inc: Vec<_> = (0..10).map(|i| tw(i, "congress rally")).collect();
        let single = single_party_tweets(&inc, &default_parties());
        assert_eq!(single.len(), 10);
        assert!(single.iter().all(|(_, p)| *p == Party::INC));
    }

    #[test]
    fn share_examples() {
        let parties = default_parties();
        let tweets = [
            tw(1, "aap"),
            tw(2, "aap"),
            tw(3, "bjp"),
            tw(4, "congress"),
            tw(5, "aap bjp"),
        ];
        let single = mention_shares(&tweets, &parties, ShareMode::Single).unwrap();
        assert_eq!(single[&Party::AAP], 0.5);
        assert_eq!(single[&Party::BJP], 0.25);
        assert_eq!(single[&Party::INC], 0.25);

        let any = mention_shares(&[tw(1, "aap bjp")], &parties, ShareMode::Any).unwrap();
        assert_eq!((any[&Party::AAP], any[&Party::BJP], any[&Party::INC]), (1.0, 1.0, 0.0));

        assert!(matches!(
            mention_shares(&[tw(1, "hello")], &parties, ShareMode::Any),
            Err(Error::NoData(_))
        ));
    }

    proptest! {
        #[test]
        fn share_and_ranking_invariants(picks in proptest::collection::vec((0usize..8, 0usize..4), 1..40)) {
            let words = ["aap", "bjp", "congress", "#x", "#y", "@z", "hello", "aam aadmi party"];
            let tweets: Vec<Tweet> = picks.iter().enumerate()
                .map(|(i, (a, b))| tw(i, &format!("{} {}", words[*a], words[*b])))
                .collect();
            let parties = default_parties();
            let single = single_party_tweets(&tweets, &parties);
            for (t, p) in &single {
                let attr = attribute_parties(t, &parties);
                prop_assert_eq!(attr.parties.len(), 1);
                prop_assert!(attr.parties.contains(p));
            }
            if let Ok(shares) = mention_shares(&tweets, &parties, ShareMode::Single) {
                let sum: f64 = shares.values().sum();
                prop_assert!((sum - 1.0).abs() <= 1e-12);
            }
            let top = top_tags(&tweets, TagKind::Hashtag, 10);
            prop_assert!(top.windows(2).all(|w| w[0].count >= w[1].count));
        }
    }
}
