//! Segmented sigma sieving over windows far from zero.
//!
//! The sieve computes sigma for every integer in `lo..=hi` without
//! factoring them one by one: base primes up to sqrt(hi) strip prime
//! powers out of each residue, and whatever remains of a residue is a
//! single large prime. Windows can sit anywhere below 2^64 as long as
//! they are at most 2^24 wide.
//!
//! Run with: cargo run --release --example sigma_windows

use std::time::Instant;

use num_bigint::BigUint;

use abundancy::arith::sigma;
use abundancy::search::sigma_sieve;

fn show_window(lo: u64, hi: u64) {
    let start = Instant::now();
    let window = sigma_sieve(lo, hi).expect("window fits the sieve limits");
    let elapsed = start.elapsed();
    println!("sigma over {lo}..={hi} ({} values, {elapsed:.2?}):", window.len());
    for (i, s) in window.iter().take(5).enumerate() {
        let n = lo + i as u64;
        println!("  sigma({n}) = {s}");
        // Cross-check the sieve against factor-and-multiply, value by value.
        assert_eq!(BigUint::from(*s), sigma(&BigUint::from(n)).unwrap());
    }
    if window.len() > 5 {
        println!("  ...");
    }
}

fn main() {
    show_window(1, 10);
    show_window(999_999_999_989, 999_999_999_999);

    // A million-wide window in the 1e12 range: still a single call.
    let lo = 1_000_000_000_000u64;
    let hi = lo + 999_999;
    let start = Instant::now();
    let window = sigma_sieve(lo, hi).unwrap();
    println!(
        "\nsieved {} values starting at 1e12 in {:.2?}",
        window.len(),
        start.elapsed()
    );

    // Perfect numbers announce themselves as sigma(n) = 2n; none live here.
    let perfect = window.iter().enumerate().filter(|(i, &s)| s == 2 * (lo + *i as u64) as u128).count();
    println!("perfect numbers in that window: {perfect}");
}
