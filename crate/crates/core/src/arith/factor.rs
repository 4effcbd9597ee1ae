use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_integer::{Integer, Roots};
use num_traits::{One, ToPrimitive, Zero};

use super::primality::{is_prime, is_probable_prime, mul_mod};
use crate::error::{Error, Result};

/// Trial-division bound: every prime below this is tried before Pollard rho.
const TRIAL_DIVISION_BOUND: u32 = 1_000_000;

/// Inputs above this many bits are refused outright; callers with larger
/// candidates must supply an explicit factorization.
const MAGNITUDE_LIMIT_BITS: u64 = 128;

/// Brent-cycle iteration budget for the big (above `u64`) Pollard rho path.
const BIG_RHO_BUDGET: u64 = 4_000_000;

static SMALL_PRIMES: OnceLock<Vec<u32>> = OnceLock::new();

/// All primes below [`TRIAL_DIVISION_BOUND`], computed once per process.
pub(crate) fn small_primes() -> &'static [u32] {
    SMALL_PRIMES.get_or_init(|| {
        let n = TRIAL_DIVISION_BOUND as usize;
        let mut composite = vec![false; n];
        let mut primes = Vec::with_capacity(78_498);
        for p in 2..n {
            if composite[p] {
                continue;
            }
            primes.push(p as u32);
            let mut m = p * p;
            while m < n {
                composite[m] = true;
                m += p;
            }
        }
        primes
    })
}

/// A positive integer in canonical form: strictly increasing prime bases with
/// exponents at least 1. The empty list represents 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    entries: Vec<(BigUint, u32)>,
    value: BigUint,
}

impl Factorization {
    /// The factorization of 1: no prime factors.
    pub fn one() -> Self {
        Self { entries: Vec::new(), value: BigUint::one() }
    }

    /// Validates and adopts an explicit factor list. Errors unless the bases
    /// are (probable) primes in strictly increasing order with exponents >= 1.
    pub fn from_entries(entries: Vec<(BigUint, u32)>) -> Result<Self> {
        let mut value = BigUint::one();
        let mut prev: Option<&BigUint> = None;
        for (p, a) in &entries {
            if *a == 0 {
                return Err(Error::InvalidFactorization(format!("exponent of {p} is zero")));
            }
            if let Some(q) = prev {
                if q >= p {
                    return Err(Error::InvalidFactorization(format!(
                        "bases must be strictly increasing, saw {q} before {p}"
                    )));
                }
            }
            if !is_probable_prime(p) {
                return Err(Error::InvalidFactorization(format!("{p} is not prime")));
            }
            value *= p.pow(*a);
            prev = Some(p);
        }
        Ok(Self { entries, value })
    }

    /// Convenience constructor from machine-word bases.
    pub fn from_u64_entries(entries: &[(u64, u32)]) -> Result<Self> {
        Self::from_entries(entries.iter().map(|&(p, a)| (BigUint::from(p), a)).collect())
    }

    /// `(prime, exponent)` pairs in strictly increasing prime order.
    pub fn entries(&self) -> &[(BigUint, u32)] {
        &self.entries
    }

    /// The integer this factorization denotes.
    pub fn value(&self) -> &BigUint {
        &self.value
    }

    /// Number of distinct prime factors.
    pub fn omega(&self) -> usize {
        self.entries.len()
    }

    /// Exponent of a small prime `p`, or `None` when `p` does not divide.
    pub fn exponent_of(&self, p: u64) -> Option<u32> {
        let p = BigUint::from(p);
        self.entries.iter().find(|(q, _)| *q == p).map(|&(_, a)| a)
    }
}

impl fmt::Display for Factorization {
    /// Renders `3*7^2*11^2`; exponent 1 is left implicit and 1 itself prints
    /// as `1`. [`Factorization::from_str`] parses this shape back.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "1");
        }
        for (i, (p, a)) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if *a == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{a}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Factorization {
    type Err = Error;

    /// Parses `p^a*q^b*...` (`^1` may be omitted, whitespace around `*` is
    /// ignored, `1` denotes the empty factorization) and validates it.
    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim();
        if trimmed.is_empty() {
            return Err(Error::InvalidFactorization("empty string".into()));
        }
        if trimmed == "1" {
            return Ok(Self::one());
        }
        let mut entries = Vec::new();
        for part in trimmed.split('*') {
            let part = part.trim();
            let (base, exp) = match part.split_once('^') {
                Some((b, e)) => (b.trim(), e.trim()),
                None => (part, "1"),
            };
            let p = BigUint::from_str(base)
                .map_err(|_| Error::InvalidFactorization(format!("bad base {base:?}")))?;
            let a = u32::from_str(exp)
                .map_err(|_| Error::InvalidFactorization(format!("bad exponent {exp:?}")))?;
            entries.push((p, a));
        }
        Self::from_entries(entries)
    }
}

/// Factorizes `n >= 1` completely.
///
/// Strategy: trial division by all primes below 10^6, then deterministic
/// Miller-Rabin plus Brent's variant of Pollard rho. Inputs up to `u64`
/// always succeed; inputs up to 128 bits get a bounded rho budget and return
/// [`Error::FactorizationGaveUp`] if it runs out; larger inputs are refused
/// (supply an explicit factor list instead).
pub fn factorize(n: &BigUint) -> Result<Factorization> {
    assert!(!n.is_zero(), "factorize requires n >= 1");
    if n.bits() > MAGNITUDE_LIMIT_BITS {
        return Err(Error::FactorizationGaveUp {
            n: n.clone(),
            reason: format!(
                "{} bits exceeds the {MAGNITUDE_LIMIT_BITS}-bit limit; provide an explicit factorization",
                n.bits()
            ),
        });
    }
    if let Some(v) = n.to_u64() {
        return Ok(factorize_u64(v));
    }
    factorize_big(n)
}

/// Infallible factorization for machine-word inputs (`n >= 1`).
pub fn factorize_u64(n: u64) -> Factorization {
    assert!(n >= 1, "factorize_u64 requires n >= 1");
    let mut raw: Vec<(u64, u32)> = Vec::new();
    factor_u64_into(n, &mut raw);
    raw.sort_unstable();
    let entries: Vec<(BigUint, u32)> = raw.into_iter().map(|(p, a)| (BigUint::from(p), a)).collect();
    Factorization { entries, value: BigUint::from(n) }
}

fn factor_u64_into(mut n: u64, out: &mut Vec<(u64, u32)>) {
    for &p in small_primes() {
        let p = p as u64;
        if p * p > n {
            break;
        }
        if n.is_multiple_of(p) {
            let mut a = 0u32;
            while n.is_multiple_of(p) {
                n /= p;
                a += 1;
            }
            out.push((p, a));
        }
    }
    if n > 1 {
        // Leftover below the squared trial bound must be prime.
        if n < (TRIAL_DIVISION_BOUND as u64).pow(2) {
            out.push((n, 1));
        } else {
            split_u64(n, out);
        }
    }
}

/// Splits a number with no prime factor below the trial bound.
fn split_u64(n: u64, out: &mut Vec<(u64, u32)>) {
    if is_prime(n) {
        match out.iter_mut().find(|(p, _)| *p == n) {
            Some((_, a)) => *a += 1,
            None => out.push((n, 1)),
        }
        return;
    }
    let d = rho_u64(n);
    split_u64(d, out);
    split_u64(n / d, out);
}

/// Brent-cycle Pollard rho for odd composite `n` with no small factors.
/// Deterministic: polynomial offsets are tried in order 1, 2, 3, ...
fn rho_u64(n: u64) -> u64 {
    let s = n.sqrt();
    if s * s == n {
        return s;
    }
    for c in 1.. {
        if let Some(d) = rho_attempt_u64(n, c) {
            return d;
        }
    }
    unreachable!("composite input must eventually split");
}

fn rho_attempt_u64(n: u64, c: u64) -> Option<u64> {
    let step = |y: u64| (mul_mod(y, y, n) + c) % n;
    let mut y = 2u64;
    let mut r = 1u64;
    let mut q = 1u64;
    let mut g = 1u64;
    let mut x = 0u64;
    let mut ys = 0u64;
    const BATCH: u64 = 128;
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = step(y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            for _ in 0..BATCH.min(r - k) {
                y = step(y);
                q = mul_mod(q, x.abs_diff(y), n);
            }
            g = q.gcd(&n);
            k += BATCH;
        }
        r <<= 1;
    }
    if g == n {
        // Backtrack one step at a time to recover the factor.
        loop {
            ys = step(ys);
            g = x.abs_diff(ys).gcd(&n);
            if g > 1 {
                break;
            }
        }
    }
    (g != n).then_some(g)
}

/// Factorization for inputs strictly above `u64`, up to 128 bits.
fn factorize_big(n: &BigUint) -> Result<Factorization> {
    let gave_up = |reason: String| Error::FactorizationGaveUp { n: n.clone(), reason };
    let mut rest = n.clone();
    let mut raw: Vec<(BigUint, u32)> = Vec::new();
    for &p in small_primes() {
        if (&rest % p).is_zero() {
            let big_p = BigUint::from(p);
            let mut a = 0u32;
            while (&rest % p).is_zero() {
                rest /= &big_p;
                a += 1;
            }
            raw.push((big_p, a));
        }
        if rest.to_u64().is_some() {
            break;
        }
    }
    let mut budget = BIG_RHO_BUDGET;
    let mut stack = vec![rest];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if let Some(v) = m.to_u64() {
            let mut small: Vec<(u64, u32)> = Vec::new();
            factor_u64_into(v, &mut small);
            raw.extend(small.into_iter().map(|(p, a)| (BigUint::from(p), a)));
            continue;
        }
        if is_probable_prime(&m) {
            raw.push((m, 1));
            continue;
        }
        let s = m.sqrt();
        if &s * &s == m {
            stack.push(s.clone());
            stack.push(s);
            continue;
        }
        let d = rho_big(&m, &mut budget).ok_or_else(|| {
            gave_up(format!("Pollard rho budget of {BIG_RHO_BUDGET} iterations exhausted"))
        })?;
        stack.push(&m / &d);
        stack.push(d);
    }
    // Merge duplicate primes produced by independent splits, then sort.
    raw.sort_by(|a, b| a.0.cmp(&b.0));
    let mut entries: Vec<(BigUint, u32)> = Vec::new();
    for (p, a) in raw {
        match entries.last_mut() {
            Some((q, b)) if *q == p => *b += a,
            _ => entries.push((p, a)),
        }
    }
    Ok(Factorization { entries, value: n.clone() })
}

/// Brent-cycle rho over `BigUint`, spending from a shared iteration budget.
fn rho_big(n: &BigUint, budget: &mut u64) -> Option<BigUint> {
    let one = BigUint::one();
    for c in 1u32.. {
        let c_big = BigUint::from(c);
        let step = |y: &BigUint| (y * y + &c_big) % n;
        let mut y = BigUint::from(2u32);
        let mut r: u64 = 1;
        let mut q = one.clone();
        let mut g = one.clone();
        let mut x = BigUint::zero();
        let mut ys = BigUint::zero();
        const BATCH: u64 = 128;
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = step(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                let reps = BATCH.min(r - k);
                if *budget < reps {
                    return None;
                }
                *budget -= reps;
                for _ in 0..reps {
                    y = step(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % n;
                }
                g = q.gcd(n);
                k += BATCH;
            }
            r <<= 1;
        }
        if g == *n {
            loop {
                if *budget == 0 {
                    return None;
                }
                *budget -= 1;
                ys = step(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if g != *n {
            return Some(g);
        }
    }
    unreachable!()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::str::FromStr;

    fn check_u64(n: u64, expect: &[(u64, u32)]) {
        let f = factorize_u64(n);
        assert_eq!(f, Factorization::from_u64_entries(expect).unwrap(), "n = {n}");
        assert_eq!(f.value().to_u64(), Some(n));
    }

    #[test]
    fn small_numbers() {
        check_u64(1, &[]);
        check_u64(2, &[(2, 1)]);
        check_u64(12, &[(2, 2), (3, 1)]);
        check_u64(14, &[(2, 1), (7, 1)]);
        check_u64(5733, &[(3, 2), (7, 2), (13, 1)]);
        check_u64(3_006_003, &[(3, 1), (7, 2), (11, 2), (13, 2)]);
    }

    #[test]
    fn large_semiprimes_split() {
        let p = 1_000_000_007u64;
        let q = 1_000_000_009u64;
        check_u64(p * q, &[(p, 1), (q, 1)]);
        check_u64(p * p, &[(p, 2)]);
        check_u64(2_305_843_009_213_693_951, &[(2_305_843_009_213_693_951, 1)]);
    }

    #[test]
    fn big_path_roundtrip() {
        // 10^21 = 2^21 * 5^21 exceeds u64.
        let n = BigUint::from(10u32).pow(21);
        let f = factorize(&n).unwrap();
        assert_eq!(f.entries(), &[(BigUint::from(2u32), 21), (BigUint::from(5u32), 21)]);
        assert_eq!(f.value(), &n);
    }

    #[test]
    fn big_composite_splits_within_budget() {
        // (10^9+7)^2 * (10^9+9) is ~90 bits; rho must pull out ~30-bit factors.
        let p = BigUint::from(1_000_000_007u64);
        let q = BigUint::from(1_000_000_009u64);
        let f = factorize(&(&p * &p * &q)).unwrap();
        assert_eq!(f.entries(), &[(p, 2), (q, 1)]);
    }

    #[test]
    fn hard_semiprime_gives_up_with_reason() {
        // Two ~61-bit primes: splitting needs ~2^30 rho steps, far past the
        // budget, so the structured failure is the contract here.
        let p = BigUint::from(2_305_843_009_213_693_951u64);
        let q = BigUint::from(18_446_744_073_709_551_557u64);
        match factorize(&(&p * &q)) {
            Err(Error::FactorizationGaveUp { reason, .. }) => {
                assert!(reason.contains("budget"), "reason: {reason}");
            }
            other => panic!("expected give-up, got {other:?}"),
        }
    }

    #[test]
    fn big_prime_square_splits() {
        let p = BigUint::from(18_446_744_073_709_551_557u64);
        let f = factorize(&(&p * &p)).unwrap();
        assert_eq!(f.entries(), &[(p, 2)]);
    }

    #[test]
    fn magnitude_limit_is_refused() {
        let n = BigUint::from(1u32) << 129;
        match factorize(&n) {
            Err(Error::FactorizationGaveUp { reason, .. }) => {
                assert!(reason.contains("128-bit limit"), "reason: {reason}");
            }
            other => panic!("expected refusal, got {other:?}"),
        }
    }

    #[test]
    fn parse_and_display_roundtrip() {
        let f = Factorization::from_str("3^1*7^2*11^2*13^2").unwrap();
        assert_eq!(f.value(), &BigUint::from(3_006_003u32));
        assert_eq!(f.to_string(), "3*7^2*11^2*13^2");
        assert_eq!(Factorization::from_str(&f.to_string()).unwrap(), f);
        assert_eq!(Factorization::from_str("1").unwrap(), Factorization::one());
        assert_eq!(Factorization::from_str("2^3 * 5").unwrap().value(), &BigUint::from(40u32));
    }

    #[test]
    fn parse_rejects_invalid() {
        for bad in ["", "4^2", "7^0", "7*3", "3*3", "x^2", "3^", "3^y", "0^2"] {
            assert!(
                matches!(Factorization::from_str(bad), Err(Error::InvalidFactorization(_))),
                "should reject {bad:?}"
            );
        }
    }

    #[test]
    fn validates_explicit_entries_beyond_machine_words() {
        // 10^30 + 57 is prime, so this list is canonical.
        let p = BigUint::from_str("1000000000000000000000000000057").unwrap();
        let f = Factorization::from_entries(vec![(BigUint::from(3u32), 1), (p.clone(), 2)]).unwrap();
        assert_eq!(f.value(), &(BigUint::from(3u32) * &p * &p));
        assert!(Factorization::from_entries(vec![(&p * &p, 1)]).is_err());
    }
}
