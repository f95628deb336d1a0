//! Candidate availability, daily activeness and participation in
//! three-day frames.

use chrono::Duration;

use electweet::cli::{generate, SynthSpec};
use electweet::temporal::{availability, daily_activeness, day_range, frame_participation, DayClock};

fn main() -> electweet::Result<()> {
    let spec = SynthSpec::default();
    let corpus = generate(&spec, 11)?;
    let (cands, tweets) = (&corpus.candidates, &corpus.candidate_tweets);

    for (party, a) in availability(cands, tweets) {
        println!("{}: {}/{} candidates tweeted", party.as_str(), a.available, a.total);
    }

    let clock = DayClock::IST;
    let last_week = day_range(spec.end - Duration::days(6), spec.end);
    for (party, series) in daily_activeness(cands, tweets, &last_week, clock) {
        let vals: Vec<String> = series
            .points
            .iter()
            .map(|p| format!("{:.2}", p.value.unwrap_or(f64::NAN)))
            .collect();
        println!("{} daily: {}", party.as_str(), vals.join(" "));
    }

    let all_days = day_range(spec.start, spec.end);
    let frames = frame_participation(cands, tweets, &all_days, 3, clock)?;
    for (party, series) in frames {
        let best = series.points.iter().filter_map(|p| p.value).fold(0.0, f64::max);
        println!(
            "{} best frame participation {best:.2} over {} frames",
            party.as_str(),
            series.points.len()
        );
    }
    Ok(())
}
