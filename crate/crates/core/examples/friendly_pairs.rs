//! Friends: distinct numbers sharing an abundancy index.
//!
//! `friend_pairs` groups everything up to a bound by exact index and
//! keeps the groups with at least two members; `find_friend_of` scans
//! for the smallest friend of one particular number.
//!
//! Run with: cargo run --release --example friendly_pairs

use abundancy::search::{find_friend_of, friend_pairs};

fn main() {
    let limit = 10_000;
    let groups = friend_pairs(limit).expect("limit is modest");
    println!("{} friendly groups up to {limit}:", groups.len());
    for (ratio, members) in &groups {
        let rendered: Vec<String> = members.iter().map(u64::to_string).collect();
        println!("  I = {ratio:>8}: {}", rendered.join(", "));
    }

    // The perfect numbers all share I = 2, so each one's smallest friend
    // is the smallest other perfect number.
    assert_eq!(groups[&abundancy::arith::Ratio::from_u64(2, 1)][..2], [6, 28]);

    println!("\nsmallest friends within 1e6:");
    for n in [6u64, 12, 24, 28, 30, 40, 42, 56, 60, 66, 78, 80, 84, 96] {
        match find_friend_of(n, 1_000_000).unwrap() {
            Some(m) => println!("  friend({n:>2}) = {m}"),
            None => println!("  friend({n:>2}) : none up to 1e6 (the scan proves the range empty)"),
        }
    }
}
