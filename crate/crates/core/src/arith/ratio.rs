use std::cmp::Ordering;
use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A nonnegative rational held in lowest terms at all times.
///
/// Every constructor reduces by the gcd, so two `Ratio`s are equal exactly
/// when they denote the same rational number, and `numer`/`denom` are always
/// coprime. The denominator is never zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Ratio {
    num: BigUint,
    den: BigUint,
}

/// Builds the reduced ratio `num/den`. Errors with [`Error::ZeroDenominator`]
/// when `den` is zero.
pub fn make_ratio(num: BigUint, den: BigUint) -> Result<Ratio> {
    Ratio::new(num, den)
}

impl Ratio {
    pub fn new(num: BigUint, den: BigUint) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(Self { num, den: BigUint::one() });
        }
        let g = num.gcd(&den);
        Ok(Self { num: num / &g, den: den / g })
    }

    /// `num/den` from machine integers; panics if `den == 0`.
    pub fn from_u64(num: u64, den: u64) -> Self {
        Self::new(BigUint::from(num), BigUint::from(den)).expect("nonzero denominator")
    }

    pub fn one() -> Self {
        Self { num: BigUint::one(), den: BigUint::one() }
    }

    pub fn numer(&self) -> &BigUint {
        &self.num
    }

    pub fn denom(&self) -> &BigUint {
        &self.den
    }

    pub fn is_integer(&self) -> bool {
        self.den.is_one()
    }

    /// Lossy conversion for display only; core comparisons never use this.
    pub fn approx_f64(&self) -> f64 {
        let num = self.num.to_f64().unwrap_or(f64::INFINITY);
        let den = self.den.to_f64().unwrap_or(f64::INFINITY);
        num / den
    }

    fn cmp_parts(&self, num: &BigUint, den: &BigUint) -> Ordering {
        (&self.num * den).cmp(&(num * &self.den))
    }
}

impl From<u64> for Ratio {
    fn from(n: u64) -> Self {
        Self { num: BigUint::from(n), den: BigUint::one() }
    }
}

impl Mul for &Ratio {
    type Output = Ratio;

    fn mul(self, rhs: &Ratio) -> Ratio {
        // Cross-reduce before multiplying to keep intermediates small.
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        Ratio {
            num: (&self.num / &g1) * (&rhs.num / &g2),
            den: (&self.den / &g2) * (&rhs.den / &g1),
        }
    }
}

impl Mul for Ratio {
    type Output = Ratio;

    fn mul(self, rhs: Ratio) -> Ratio {
        (&self) * (&rhs)
    }
}

impl Ord for Ratio {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_parts(&other.num, &other.den)
    }
}

impl PartialOrd for Ratio {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq<u64> for Ratio {
    fn eq(&self, other: &u64) -> bool {
        self.den.is_one() && self.num == BigUint::from(*other)
    }
}

impl PartialOrd<u64> for Ratio {
    fn partial_cmp(&self, other: &u64) -> Option<Ordering> {
        Some(self.cmp_parts(&BigUint::from(*other), &BigUint::one()))
    }
}

impl fmt::Display for Ratio {
    /// Always renders as `num/den`, even for integers (`2/1`), so output is
    /// unambiguous and machine-splittable.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl fmt::Debug for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ratio({}/{})", self.num, self.den)
    }
}

impl FromStr for Ratio {
    type Err = Error;

    /// Accepts `a/b` or a bare integer `a`; the result is reduced.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidRatio(s.to_string());
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let num = BigUint::from_str(num).map_err(|_| bad())?;
        let den = BigUint::from_str(den).map_err(|_| bad())?;
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Self::new(num, den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_on_construction() {
        let r = Ratio::from_u64(24, 14);
        assert_eq!(r.numer(), &BigUint::from(12u32));
        assert_eq!(r.denom(), &BigUint::from(7u32));
        assert_eq!(r.to_string(), "12/7");
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(matches!(
            make_ratio(BigUint::from(1u32), BigUint::zero()),
            Err(Error::ZeroDenominator)
        ));
    }

    #[test]
    fn zero_numerator_normalizes() {
        let r = Ratio::new(BigUint::zero(), BigUint::from(9u32)).unwrap();
        assert_eq!(r.to_string(), "0/1");
    }

    #[test]
    fn multiplication_reduces() {
        // 12/7 * 7/4 = 3/1
        let r = &Ratio::from_u64(12, 7) * &Ratio::from_u64(7, 4);
        assert_eq!(r, Ratio::from_u64(3, 1));
        assert!(r.is_integer());
    }

    #[test]
    fn ordering_is_cross_multiplication() {
        assert!(Ratio::from_u64(12, 7) > Ratio::from_u64(77, 45));
        assert!(Ratio::from_u64(77, 48) < Ratio::from_u64(12, 7));
        assert!(Ratio::from_u64(2800733, 1658880) < Ratio::from_u64(12, 7));
        assert!(Ratio::from_u64(7, 3) > 2u64);
        assert_eq!(Ratio::from_u64(6, 3), 2u64);
    }

    #[test]
    fn parses_fractions_and_integers() {
        assert_eq!("24/14".parse::<Ratio>().unwrap(), Ratio::from_u64(12, 7));
        assert_eq!("2".parse::<Ratio>().unwrap(), Ratio::from_u64(2, 1));
        assert!(matches!("1/0".parse::<Ratio>(), Err(Error::ZeroDenominator)));
        assert!("".parse::<Ratio>().is_err());
        assert!("a/b".parse::<Ratio>().is_err());
        assert!("-3/4".parse::<Ratio>().is_err());
    }

    #[test]
    fn display_always_shows_denominator() {
        assert_eq!(Ratio::from(2u64).to_string(), "2/1");
    }
}
