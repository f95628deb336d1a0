//! Top hashtags and party mention shares over public chatter.

use electweet::cli::{generate, SynthSpec};
use electweet::mentions::{mention_shares, single_party_tweets, top_tags, ShareMode, TagKind};

fn main() -> electweet::Result<()> {
    let corpus = generate(&SynthSpec::default(), 1)?;
    let tweets = &corpus.public_tweets;

    println!("top hashtags");
    for (rank, t) in top_tags(tweets, TagKind::Hashtag, 5).iter().enumerate() {
        println!("  {:>2}. #{} ({})", rank + 1, t.tag, t.count);
    }

    // "any" counts a tweet once per party it names; "single" keeps only
    // tweets naming exactly one party.
    for mode in [ShareMode::Any, ShareMode::Single] {
        let shares = mention_shares(tweets, &corpus.parties, mode)?;
        println!("{mode:?}: {shares:?}");
    }
    let single = single_party_tweets(tweets, &corpus.parties);
    println!("{} of {} tweets name exactly one party", single.len(), tweets.len());
    Ok(())
}
