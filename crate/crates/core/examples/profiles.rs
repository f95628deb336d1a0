//! Winner vs loser follower counts, and min-max scaled party profiles.

use std::collections::BTreeMap;

use electweet::cli::{generate, SynthSpec};
use electweet::stats::{compare_groups, scale_profiles};

fn main() -> electweet::Result<()> {
    let corpus = generate(&SynthSpec::default(), 5)?;
    let followers: BTreeMap<&str, f64> = corpus
        .profiles
        .iter()
        .map(|p| (p.user_id.as_str(), p.followers_count as f64))
        .collect();
    let (mut won, mut lost) = (Vec::new(), Vec::new());
    for c in &corpus.candidates {
        let f = followers[c.handle.as_str()];
        if c.won {
            won.push(f);
        } else {
            lost.push(f);
        }
    }
    let cmp = compare_groups(&won, &lost, "won", "lost")?;
    println!(
        "followers: won {:.0} vs lost {:.0}, p={:.4}, rank-biserial {:.3}",
        cmp.mean_a, cmp.mean_b, cmp.test.p_value, cmp.test.rank_biserial
    );

    let parties: Vec<(String, BTreeMap<String, f64>)> = corpus
        .parties
        .iter()
        .map(|p| {
            let prof = corpus.profiles.iter().find(|u| u.user_id == p.official_handle).unwrap();
            let attrs = BTreeMap::from([
                ("followers".to_string(), prof.followers_count as f64),
                ("statuses".to_string(), prof.statuses_count as f64),
            ]);
            (p.party.as_str().to_string(), attrs)
        })
        .collect();
    for (party, scaled) in scale_profiles(&parties) {
        for (attr, v) in scaled {
            println!("{party} {attr}: raw {} scaled {:.3}", v.raw, v.scaled);
        }
    }
    Ok(())
}
