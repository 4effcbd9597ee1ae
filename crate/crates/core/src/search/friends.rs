use std::collections::BTreeMap;

use num_traits::ToPrimitive;

use super::sieve::{SegmentBuf, SegmentSieve};
use crate::abundancy::abundancy_from_factorization;
use crate::arith::{factorize_u64, Ratio};
use crate::error::{Error, Result};

/// Scan granularity for the sequential friend scans below.
const SCAN_CHUNK: u64 = 1 << 20;

/// Cap on [`friend_pairs`]: it materializes one reduced index per integer,
/// so memory grows linearly with the bound.
const FRIEND_PAIRS_MAX: u64 = 20_000_000;

/// Smallest `m <= limit`, `m != n`, with `I(m) == I(n)`, or `None` when no
/// such witness exists up to the limit.
///
/// Only multiples of the reduced denominator of `I(n)` are tested, and the
/// scan stops at the first hit, so "found a friend" is as cheap as the
/// prefix of the range it had to touch. `None` never proves solitude; it
/// only pushes a potential friend above `limit`.
pub fn find_friend_of(n: u64, limit: u64) -> Result<Option<u64>> {
    if n < 1 {
        return Err(Error::InvalidInput("find_friend_of requires n >= 1".into()));
    }
    if limit < 1 {
        return Err(Error::InvalidInput("find_friend_of requires limit >= 1".into()));
    }
    let index = abundancy_from_factorization(&factorize_u64(n));
    let den = index.denom().to_u64().expect("denominator divides n, so it fits u64");
    let num = index.numer().to_u128().expect("sigma(n) fits u128");

    let sieve = SegmentSieve::new(limit);
    let mut buf = SegmentBuf::default();
    let mut a = 1u64;
    while a <= limit {
        let b = a.saturating_add(SCAN_CHUNK - 1).min(limit);
        sieve.sigma_into(a, b, &mut buf);
        if let Some(start) = a.div_ceil(den).checked_mul(den) {
            let mut m = start;
            while m <= b {
                if m != n && (m / den) as u128 * num == buf.sig[(m - a) as usize] {
                    return Ok(Some(m));
                }
                m = match m.checked_add(den) {
                    Some(next) => next,
                    None => break,
                };
            }
        }
        if b == limit {
            break;
        }
        a = b + 1;
    }
    Ok(None)
}

/// Groups all integers in `1..=limit` by their exact abundancy index and
/// keeps the indices attained at least twice: every value list is an
/// ascending set of mutual friends, keyed by the reduced index.
pub fn friend_pairs(limit: u64) -> Result<BTreeMap<Ratio, Vec<u64>>> {
    if limit < 1 {
        return Err(Error::InvalidInput("friend_pairs requires limit >= 1".into()));
    }
    if limit > FRIEND_PAIRS_MAX {
        return Err(Error::RangeTooLarge(format!(
            "friend_pairs over 1..={limit} exceeds the cap of {FRIEND_PAIRS_MAX}"
        )));
    }

    // (numerator, denominator, n) of every reduced index; sorting groups
    // equal indices together with members ascending.
    let mut keyed: Vec<(u64, u64, u64)> = Vec::with_capacity(limit as usize);
    let sieve = SegmentSieve::new(limit);
    let mut buf = SegmentBuf::default();
    let mut a = 1u64;
    while a <= limit {
        let b = a.saturating_add(SCAN_CHUNK - 1).min(limit);
        sieve.sigma_into(a, b, &mut buf);
        for n in a..=b {
            let sigma = buf.sig[(n - a) as usize]
                .to_u64()
                .expect("sigma(n) fits u64 for n within the pairs cap");
            let g = num_integer::gcd(sigma, n);
            keyed.push((sigma / g, n / g, n));
        }
        if b == limit {
            break;
        }
        a = b + 1;
    }

    keyed.sort_unstable();
    let mut out: BTreeMap<Ratio, Vec<u64>> = BTreeMap::new();
    let mut i = 0usize;
    while i < keyed.len() {
        let (num, den, _) = keyed[i];
        let mut j = i + 1;
        while j < keyed.len() && keyed[j].0 == num && keyed[j].1 == den {
            j += 1;
        }
        if j - i >= 2 {
            out.insert(Ratio::from_u64(num, den), keyed[i..j].iter().map(|t| t.2).collect());
        }
        i = j;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_friends_of_known_friendly_numbers() {
        assert_eq!(find_friend_of(6, 1000).unwrap(), Some(28));
        assert_eq!(find_friend_of(28, 1000).unwrap(), Some(6));
        assert_eq!(find_friend_of(30, 1000).unwrap(), Some(140));
        assert_eq!(find_friend_of(80, 1000).unwrap(), Some(200));
        assert_eq!(find_friend_of(12, 1000).unwrap(), Some(234));
    }

    #[test]
    fn no_friend_under_tight_limits() {
        assert_eq!(find_friend_of(6, 27).unwrap(), None);
        assert_eq!(find_friend_of(14, 1_000_000).unwrap(), None);
        assert_eq!(find_friend_of(1, 100_000).unwrap(), None);
        // Certified solitary numbers have no friend at any limit; a modest
        // one keeps the test cheap.
        assert_eq!(find_friend_of(21, 100_000).unwrap(), None);
    }

    #[test]
    fn friend_search_skips_n_but_not_other_matches() {
        // I(234) = 546/234 = 7/3 = I(12), and 12 < 234 is found first.
        assert_eq!(find_friend_of(234, 1000).unwrap(), Some(12));
    }

    #[test]
    fn pairs_small_limits_match_known_groups() {
        let pairs = friend_pairs(5).unwrap();
        assert!(pairs.is_empty());

        let pairs = friend_pairs(100).unwrap();
        assert_eq!(pairs.len(), 1);
        assert_eq!(pairs[&Ratio::from_u64(2, 1)], [6, 28]);

        let pairs = friend_pairs(140).unwrap();
        assert_eq!(pairs.len(), 2);
        assert_eq!(pairs[&Ratio::from_u64(2, 1)], [6, 28]);
        assert_eq!(pairs[&Ratio::from_u64(12, 5)], [30, 140]);

        let pairs = friend_pairs(200).unwrap();
        assert_eq!(pairs[&Ratio::from_u64(93, 40)], [80, 200]);
    }

    #[test]
    fn pairs_groups_are_ascending_and_genuine() {
        let pairs = friend_pairs(2000).unwrap();
        for (ratio, members) in &pairs {
            assert!(members.len() >= 2);
            assert!(members.windows(2).all(|w| w[0] < w[1]), "unsorted members for {ratio}");
            for &m in members {
                let index = abundancy_from_factorization(&factorize_u64(m));
                assert_eq!(&index, ratio, "member {m} has index {index}, grouped under {ratio}");
            }
        }
        // Every match the ratio search would find appears in some group.
        assert!(pairs[&Ratio::from_u64(2, 1)].contains(&496));
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(matches!(find_friend_of(0, 10), Err(Error::InvalidInput(_))));
        assert!(matches!(find_friend_of(6, 0), Err(Error::InvalidInput(_))));
        assert!(matches!(friend_pairs(0), Err(Error::InvalidInput(_))));
        assert!(matches!(friend_pairs(FRIEND_PAIRS_MAX + 1), Err(Error::RangeTooLarge(_))));
    }
}
