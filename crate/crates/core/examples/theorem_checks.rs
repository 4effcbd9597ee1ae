//! Brute-force re-verification of the structural facts the screening
//! pipeline is built on.
//!
//! Each statement (multiplicativity of sigma, strict index growth,
//! prime-substitution monotonicity, the support bound, and the
//! sigma-divisibility facts behind the friend-of-14 conditions) is
//! re-checked over an explicit bounded domain by naive summation — no
//! closed forms, no shared code with the fast paths — and reports the
//! exact number of cases examined.
//!
//! Run with: cargo run --release --example theorem_checks

use abundancy::search::{verify_theorem, VerifyBudget, ALL_THEOREMS};

fn main() {
    let budget = VerifyBudget::default();
    println!(
        "default budget: primes < {}, exponents <= {}, n <= {}, gamma <= {}, {} samples, seed {}",
        budget.prime_bound,
        budget.exponent_bound,
        budget.n_bound,
        budget.gamma_bound,
        budget.samples,
        budget.seed
    );
    println!();

    let mut total_cases = 0u64;
    for id in ALL_THEOREMS {
        let report = verify_theorem(id, &budget).expect("default budget is valid");
        total_cases += report.cases_checked;
        println!("{:<12} {:>9} cases  {} counterexamples", id.to_string(), report.cases_checked, report.counterexamples);
        println!("             domain: {}", report.domain);
        if let Some(first) = &report.first_counterexample {
            println!("             FIRST COUNTEREXAMPLE: {first}");
        }
    }
    println!("\n{total_cases} cases checked in total, all consistent");
}
