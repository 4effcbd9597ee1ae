//! The abundancy index as an exact fraction.
//!
//! `I(n) = sigma(n)/n` measures how rich in divisors a number is:
//! exactly 2 means perfect, more means abundant, less means deficient.
//! Everything is computed with exact big-integer rationals; the floating
//! approximation in the last column is for eyeballing only.
//!
//! Run with: cargo run --release --example abundancy_basics

use num_bigint::BigUint;

use abundancy::abundancy::{abundancy, classify};
use abundancy::arith::{factorize, sigma};

fn main() {
    println!("{:>10}  {:>22}  {:>12}  {:>9}  class", "n", "factorization", "sigma(n)", "I(n)");
    for n in [6u64, 12, 14, 28, 30, 140, 496, 735, 1323, 3_006_003] {
        let n = BigUint::from(n);
        let f = factorize(&n).expect("small numbers always factor");
        let s = sigma(&n).unwrap();
        let index = abundancy(&n).unwrap();
        let class = classify(&n).unwrap();
        println!(
            "{n:>10}  {:>22}  {s:>12}  {:>9}  {class} (~{:.4})",
            f.to_string(),
            index.to_string(),
            index.approx_f64()
        );
    }

    // The index is multiplicative across coprime parts, so it can be
    // assembled from prime powers without ever expanding n itself.
    let a = abundancy(&BigUint::from(9u32)).unwrap();
    let b = abundancy(&BigUint::from(49u32)).unwrap();
    let ab = abundancy(&BigUint::from(441u32)).unwrap();
    println!("\nI(9) * I(49) = {a} * {b} = {} = I(441) = {ab}", &a * &b);
    assert_eq!(&a * &b, ab);
}
