use electweet::stats::{mann_whitney, mann_whitney_with, Alternative, MethodChoice};

fn main() -> electweet::Result<()> {
    let winners = [412.0, 980.0, 1500.0, 2210.0, 3100.0, 8800.0];
    let losers = [35.0, 120.0, 260.0, 390.0, 515.0, 1400.0];

    // Small tie-free samples get the exact null distribution.
    for alt in [Alternative::TwoSided, Alternative::Greater, Alternative::Less] {
        let r = mann_whitney(&winners, &losers, alt)?;
        println!(
            "{alt:?}: U1={} U2={} p={:.5} ({})",
            r.u1,
            r.u2,
            r.p_value,
            r.method.as_str()
        );
    }

    let r = mann_whitney_with(&winners, &losers, Alternative::TwoSided, MethodChoice::NormalApprox)?;
    println!("normal approximation: p={:.5}", r.p_value);
    println!("cles={:.3} rank-biserial={:.3}", r.effect_size_cles, r.rank_biserial);
    Ok(())
}
