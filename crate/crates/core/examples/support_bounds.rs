//! Ruling out infinite families with the support bound.
//!
//! For any n with prime support {p1, ..., pk}, the index obeys
//! I(n) < prod pi/(pi - 1), whatever the exponents: each prime-power
//! factor sigma(p^a)/p^a climbs toward p/(p-1) but never reaches it.
//! When that product is already <= a target ratio, *no* number over that
//! support can reach the target — one comparison disposes of the whole
//! family.
//!
//! Run with: cargo run --release --example support_bounds

use abundancy::abundancy::{abundancy_from_factorization, abundancy_strict_upper_bound};
use abundancy::arith::{Factorization, Ratio};

fn bound_over(primes: &[u64]) -> Ratio {
    let entries: Vec<(u64, u32)> = primes.iter().map(|&p| (p, 1)).collect();
    abundancy_strict_upper_bound(&Factorization::from_u64_entries(&entries).unwrap()).unwrap()
}

fn main() {
    let target = Ratio::from_u64(12, 7); // I(14), the index a friend of 14 must hit

    // Support {5,7,11}: the bound 77/48 is below 12/7, so no number built
    // from only these primes can be a friend of 14 — with any exponents.
    let b = bound_over(&[5, 7, 11]);
    println!("sup {{5,7,11}}           : I < {b} {} 12/7", if b < target { "<" } else { ">=" });

    // Even seven primes starting at 7 stay short of 12/7.
    let b = bound_over(&[7, 11, 13, 17, 19, 23, 29]);
    println!("sup {{7,11,...,29}}      : I < {b} {} 12/7", if b < target { "<" } else { ">=" });

    // Support {3,7,11} alone does NOT settle it: the plain bound 77/40
    // exceeds 12/7. But if the exponent of 3 is pinned to exactly 1, the
    // factor for 3 is the exact I(3) = 4/3 instead of the limit 3/2, and
    // the sharper chain 4/3 * 7/6 * 11/10 = 77/45 < 12/7 closes the gap.
    let plain = bound_over(&[3, 7, 11]);
    let i3 = abundancy_from_factorization(&Factorization::from_u64_entries(&[(3, 1)]).unwrap());
    let pinned = &i3 * &bound_over(&[7, 11]);
    println!("sup {{3,7,11}}, plain    : I < {plain} >= 12/7  (inconclusive)");
    println!("sup {{3,7,11}}, 3 pinned : I < {pinned} < 12/7   (excluded)");
    assert!(plain > target && pinned < target);

    // The bound is strict for every concrete number, and tight for none.
    for n in [14u64, 735, 3_006_003] {
        let f = abundancy::arith::factorize_u64(n);
        let i = abundancy_from_factorization(&f);
        let b = abundancy_strict_upper_bound(&f).unwrap();
        println!("n = {n:>8}: I = {i} < {b}");
        assert!(i < b);
    }
}
