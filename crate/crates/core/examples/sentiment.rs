//! Lexicon proportions per tweet and a party-level comparison of
//! positive emotion.

use std::collections::BTreeMap;

use electweet::cli::{generate, SynthSpec};
use electweet::corpus::Party;
use electweet::lexicon::{category_proportions, CategoryLexicon};
use electweet::mentions::single_party_tweets;
use electweet::stats::compare_groups;

fn main() -> electweet::Result<()> {
    let lex = CategoryLexicon::standin();
    let p = category_proportions("Happy happy sad :(", &lex);
    println!(
        "posemo {:.3} negemo {:.3} over {} tokens",
        p.get("posemo").unwrap(),
        p.get("negemo").unwrap(),
        p.token_count
    );

    let corpus = generate(&SynthSpec::default(), 3)?;
    let mut posemo: BTreeMap<Party, Vec<f64>> = BTreeMap::new();
    for (tweet, party) in single_party_tweets(&corpus.public_tweets, &corpus.parties) {
        let v = category_proportions(&tweet.text, &lex).get("posemo").unwrap_or(0.0);
        posemo.entry(party).or_default().push(v);
    }
    let (aap, bjp) = (&posemo[&Party::AAP], &posemo[&Party::BJP]);
    let c = compare_groups(aap, bjp, "AAP", "BJP")?;
    println!(
        "posemo AAP {:.4} vs BJP {:.4}: U1={} p={:.3e} cles={:.3}",
        c.mean_a, c.mean_b, c.test.u1, c.test.p_value, c.test.effect_size_cles
    );
    Ok(())
}
