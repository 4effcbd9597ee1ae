//! Screening candidates that could share 14's abundancy index of 12/7.
//!
//! Every hypothetical friend of 14 must clear fourteen structural
//! conditions (parity, divisibility of sigma, exponent patterns, prime
//! size bounds, ...). Failing any single one disqualifies a candidate;
//! passing all of them proves nothing but survives the screen. The
//! checker reports one verdict per condition with a concrete witness for
//! each failure.
//!
//! Run with: cargo run --release --example candidate_screening

use std::str::FromStr;

use abundancy::arith::{factorize_u64, Factorization};
use abundancy::constraints::check_friend_of_14;

fn show(f: &Factorization) {
    let report = check_friend_of_14(f);
    println!("candidate {} = {f}", f.value());
    for v in &report.verdicts {
        match &v.witness {
            Some(w) => println!("  {:<20} {}  ({w})", v.id.to_string(), v.verdict),
            None => println!("  {:<20} {}", v.id.to_string(), v.verdict),
        }
    }
    let failing = report.failing();
    if failing.is_empty() {
        println!("  => survives the whole screen\n");
    } else {
        println!("  => ruled out by {} condition(s)\n", failing.len());
    }
}

fn main() {
    // 14 itself: a friend must be a *different* number, and the screen
    // encodes that a friend is odd, divisible by 49, bigger than 14, ...
    show(&factorize_u64(14));

    // 5733 = 3^2 * 7^2 * 13 looks promising (odd, divisible by 49) but
    // fails on sigma divisibility and the exponent of 3.
    show(&factorize_u64(5733));

    // 3006003 = 3 * 7^2 * 11^2 * 13^2 survives everything, yet its exact
    // index is 264252/143143 (about 1.846), not 12/7: the screen is
    // necessary, never sufficient.
    show(&factorize_u64(3_006_003));

    // The screen never needs the candidate expanded, so it scales to
    // numbers far beyond machine words when given the factorization.
    let huge = Factorization::from_str("3*7^2*1000000007^2*1000000009^2").unwrap();
    show(&huge);
}
