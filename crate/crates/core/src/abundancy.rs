//! The abundancy index `I(n) = sigma(n)/n` as an exact rational, and the
//! classifications and certificates built directly on it.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;

use crate::arith::{factorize, sigma_of_factorization, sigma_prime_power, Factorization, Ratio};
use crate::error::{Error, Result};

/// Where `I(n)` sits relative to 2: `sigma(n) = 2n`, `> 2n`, or `< 2n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    Perfect,
    Abundant,
    Deficient,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::Perfect => "perfect",
            Classification::Abundant => "abundant",
            Classification::Deficient => "deficient",
        })
    }
}

/// `I(n) = sigma(n)/n` in lowest terms, for `n >= 1`.
pub fn abundancy(n: &BigUint) -> Result<Ratio> {
    Ok(abundancy_from_factorization(&factorize(n)?))
}

/// `I` of the integer a factorization denotes, as the product of the exact
/// per-prime-power ratios `sigma(p^a) / p^a`. No divisor enumeration, no
/// rounding: the result is a reduced rational.
pub fn abundancy_from_factorization(f: &Factorization) -> Ratio {
    f.entries().iter().fold(Ratio::one(), |acc, (p, a)| {
        let term = Ratio::new(sigma_prime_power(p, *a), p.pow(*a)).expect("prime power is nonzero");
        &acc * &term
    })
}

/// Classifies `n` by comparing the exact `I(n)` with 2.
pub fn classify(n: &BigUint) -> Result<Classification> {
    let index = abundancy(n)?;
    Ok(match index.partial_cmp(&2u64).expect("total order") {
        std::cmp::Ordering::Equal => Classification::Perfect,
        std::cmp::Ordering::Greater => Classification::Abundant,
        std::cmp::Ordering::Less => Classification::Deficient,
    })
}

/// One-sided solitary certificate: `gcd(n, sigma(n)) = 1` proves that no
/// other integer shares `I(n)` (the reduced index has denominator `n`
/// itself, and any other integer with the same index would be a multiple of
/// `n` strictly above it, forcing a larger index). `false` proves nothing.
pub fn coprime_solitary(n: &BigUint) -> Result<bool> {
    let f = factorize(n)?;
    Ok(sigma_of_factorization(&f).gcd(n).is_one())
}

/// Strict upper bound on the abundancy of **any** integer whose prime
/// support is exactly the primes of `f`: the product of `p/(p-1)` over the
/// distinct primes. The bound depends only on the support, not on the
/// exponents, and `I` never attains it. Errors with
/// [`Error::EmptyFactorization`] for the factorization of 1, whose support
/// is empty.
pub fn abundancy_strict_upper_bound(f: &Factorization) -> Result<Ratio> {
    if f.entries().is_empty() {
        return Err(Error::EmptyFactorization);
    }
    let bound = f.entries().iter().fold(Ratio::one(), |acc, (p, _)| {
        let term = Ratio::new(p.clone(), p - 1u32).expect("p >= 2");
        &acc * &term
    });
    Ok(bound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::factorize_u64;

    fn index_of(n: u64) -> Ratio {
        abundancy(&BigUint::from(n)).unwrap()
    }

    #[test]
    fn known_indices_are_exact() {
        assert_eq!(index_of(1), Ratio::one());
        assert_eq!(index_of(14), Ratio::from_u64(12, 7));
        assert_eq!(index_of(12), Ratio::from_u64(7, 3));
        assert_eq!(index_of(6), Ratio::from_u64(2, 1));
        assert_eq!(index_of(735), Ratio::from_u64(456, 245));
        // 3^3 * 7^2 = 1323 and 3^2 * 7^2 * 13 = 5733.
        assert_eq!(index_of(1323), Ratio::from_u64(760, 441));
        assert_eq!(index_of(5733), Ratio::from_u64(38, 21));
    }

    #[test]
    fn factorization_route_agrees_with_integer_route() {
        for n in 1u64..=3000 {
            assert_eq!(abundancy_from_factorization(&factorize_u64(n)), index_of(n), "n = {n}");
        }
    }

    #[test]
    fn classification_thresholds() {
        assert_eq!(classify(&BigUint::from(6u32)).unwrap(), Classification::Perfect);
        assert_eq!(classify(&BigUint::from(28u32)).unwrap(), Classification::Perfect);
        assert_eq!(classify(&BigUint::from(12u32)).unwrap(), Classification::Abundant);
        assert_eq!(classify(&BigUint::from(1u32)).unwrap(), Classification::Deficient);
        assert_eq!(classify(&BigUint::from(14u32)).unwrap(), Classification::Deficient);
    }

    #[test]
    fn coprime_certificate_examples() {
        // Primes and prime powers are certified; 14 and perfect numbers are not.
        for n in [1u64, 2, 3, 5, 7, 9, 21, 25] {
            assert!(coprime_solitary(&BigUint::from(n)).unwrap(), "n = {n}");
        }
        for n in [6u64, 14, 28, 30] {
            assert!(!coprime_solitary(&BigUint::from(n)).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn strict_upper_bound_depends_only_on_support() {
        let f1 = factorize_u64(3 * 7 * 11);
        let f2 = factorize_u64(9 * 49 * 11);
        let b1 = abundancy_strict_upper_bound(&f1).unwrap();
        let b2 = abundancy_strict_upper_bound(&f2).unwrap();
        assert_eq!(b1, b2);
        assert_eq!(b1, Ratio::from_u64(77, 40));
    }

    #[test]
    fn strict_upper_bound_known_values() {
        assert_eq!(
            abundancy_strict_upper_bound(&factorize_u64(5 * 7 * 11)).unwrap(),
            Ratio::from_u64(77, 48)
        );
        assert_eq!(
            abundancy_strict_upper_bound(&factorize_u64(7 * 11 * 13 * 17 * 19 * 23 * 29)).unwrap(),
            Ratio::from_u64(2_800_733, 1_658_880)
        );
        // Both stay below 12/7, which is what makes them useful filters.
        assert!(Ratio::from_u64(77, 48) < Ratio::from_u64(12, 7));
        assert!(Ratio::from_u64(2_800_733, 1_658_880) < Ratio::from_u64(12, 7));
    }

    #[test]
    fn strict_upper_bound_truly_bounds_and_is_not_attained() {
        for n in 2u64..=2000 {
            let f = factorize_u64(n);
            let bound = abundancy_strict_upper_bound(&f).unwrap();
            assert!(index_of(n) < bound, "n = {n}");
        }
    }

    #[test]
    fn strict_upper_bound_rejects_one() {
        assert!(matches!(
            abundancy_strict_upper_bound(&Factorization::one()),
            Err(Error::EmptyFactorization)
        ));
    }

    #[test]
    fn mixed_chain_bound_for_exact_prime_multiples() {
        // For a multiple of 3 (exactly once) with the rest supported on
        // {7, 11}, the sharp bound is I(3) times the support bound of {7,11}:
        // (4/3) * (7/6) * (11/10) = 77/45, and 77/45 < 12/7.
        let chain = &abundancy_from_factorization(&factorize_u64(3))
            * &abundancy_strict_upper_bound(&factorize_u64(7 * 11)).unwrap();
        assert_eq!(chain, Ratio::from_u64(77, 45));
        assert!(chain < Ratio::from_u64(12, 7));
    }
}
