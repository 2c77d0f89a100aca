//! Sweep the piecewise-linear profile families: for an anchor solution with
//! n zeros, which zero-count differences k does an independent partner
//! achieve? The working conjecture is all of {0, ..., n}.

use sturmsep::explore::{default_families, sweep, DEFAULT_PHASES};
use sturmsep::zeros::ZeroTols;

fn main() {
    let outcome = sweep(&default_families(), DEFAULT_PHASES, &ZeroTols::default()).unwrap();
    println!("records: {}", outcome.records.len());
    for (n, ks) in &outcome.summary {
        println!("n = {n}: achieved k = {ks:?}");
    }
    if outcome.conjecture_gaps.is_empty() {
        println!("no gaps: every n reached the full range of k");
    } else {
        println!("gaps at n = {:?}", outcome.conjecture_gaps);
    }

    // A few raw records around the largest differences.
    for rec in outcome.records.iter().filter(|r| r.k == r.n && r.n >= 3) {
        println!(
            "profile {:10} lambda {:.4} phase {:.4}: n = {}, partner zeros = {}, k = {}",
            rec.profile, rec.lambda, rec.phase, rec.n, rec.count2, rec.k
        );
    }
}
