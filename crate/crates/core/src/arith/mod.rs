//! Exact integer arithmetic: primality, factorization, the sum-of-divisors
//! function, and reduced rationals.

mod factor;
mod primality;
mod ratio;

pub use factor::{factorize, factorize_u64, Factorization};
pub use primality::{is_prime, is_probable_prime};
pub use ratio::{make_ratio, Ratio};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::Result;

/// Sum of divisors of the prime power `p^a`, via the closed form
/// `(p^(a+1) - 1) / (p - 1)`. This never enumerates divisors.
pub fn sigma_prime_power(p: &BigUint, a: u32) -> BigUint {
    debug_assert!(p >= &BigUint::from(2u32), "base must be at least 2");
    (p.pow(a + 1) - 1u32) / (p - 1u32)
}

/// Sum of divisors of the integer a factorization denotes, as the product of
/// [`sigma_prime_power`] over its entries (multiplicativity across coprime
/// prime powers).
pub fn sigma_of_factorization(f: &Factorization) -> BigUint {
    f.entries()
        .iter()
        .map(|(p, a)| sigma_prime_power(p, *a))
        .fold(BigUint::one(), |acc, t| acc * t)
}

/// Sum of divisors of `n >= 1`. Factorizes first, so it inherits the
/// give-up behavior of [`factorize`] on hard or oversized inputs.
pub fn sigma(n: &BigUint) -> Result<BigUint> {
    Ok(sigma_of_factorization(&factorize(n)?))
}

/// Exponent of the largest power of two dividing `n > 0`.
pub fn two_adic_valuation(n: &BigUint) -> u64 {
    assert!(!n.is_zero(), "two_adic_valuation requires n > 0");
    n.trailing_zeros().expect("nonzero")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn sigma_prime_power_closed_form() {
        assert_eq!(sigma_prime_power(&big(2), 1), big(3));
        assert_eq!(sigma_prime_power(&big(2), 5), big(63));
        assert_eq!(sigma_prime_power(&big(3), 2), big(13));
        assert_eq!(sigma_prime_power(&big(7), 2), big(57));
        assert_eq!(sigma_prime_power(&big(13), 1), big(14));
    }

    #[test]
    fn sigma_small_values() {
        let expect = [1u64, 3, 4, 7, 6, 12, 8, 15, 13, 18];
        for (i, &s) in expect.iter().enumerate() {
            assert_eq!(sigma(&big(i as u64 + 1)).unwrap(), big(s), "n = {}", i + 1);
        }
        assert_eq!(sigma(&big(14)).unwrap(), big(24));
        assert_eq!(sigma(&big(5733)).unwrap(), big(10374));
        assert_eq!(sigma(&big(3_006_003)).unwrap(), big(5_549_292));
    }

    #[test]
    fn sigma_matches_direct_divisor_sum() {
        for n in 1u64..=2000 {
            let direct: u64 = (1..=n).filter(|d| n % d == 0).sum();
            assert_eq!(sigma(&big(n)).unwrap(), big(direct), "n = {n}");
        }
    }

    #[test]
    fn two_adic_valuation_counts_trailing_twos() {
        assert_eq!(two_adic_valuation(&big(1)), 0);
        assert_eq!(two_adic_valuation(&big(24)), 3);
        assert_eq!(two_adic_valuation(&big(5_549_292)), 2);
        assert_eq!(two_adic_valuation(&(BigUint::from(1u32) << 100)), 100);
    }
}
