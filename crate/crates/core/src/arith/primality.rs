use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

/// Witness set that makes Miller-Rabin deterministic for every `n < 2^64`.
const MR_BASES_U64: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Number of extra pseudo-random bases used above the deterministic range.
const MR_EXTRA_ROUNDS: usize = 12;

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic primality for the full `u64` range (Miller-Rabin with a
/// fixed witness set proven exhaustive below 2^64).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES_U64 {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &MR_BASES_U64 {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// SplitMix64 step; used to derive extra Miller-Rabin bases deterministically
/// from the candidate itself, so repeated runs agree.
fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e3779b97f4a7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

/// Primality test for arbitrary-size naturals.
///
/// Exact (deterministic) for inputs below 2^64. Above that it is a strong
/// probable-prime test: the fixed witness set plus [`MR_EXTRA_ROUNDS`] bases
/// derived from the candidate, so the answer is reproducible across runs.
/// A `true` above 2^64 means "no compositeness witness found".
pub fn is_probable_prime(n: &BigUint) -> bool {
    if let Some(v) = n.to_u64() {
        return is_prime(v);
    }
    // n > 2^64 from here on.
    if n.is_even() {
        return false;
    }
    for &p in &MR_BASES_U64[1..] {
        if (n % p).is_zero() {
            return false;
        }
    }
    let n1 = n - 1u32;
    let s = n1.trailing_zeros().expect("n > 1");
    let d = &n1 >> s;

    let mut seed = n.iter_u64_digits().fold(0u64, |acc, d| acc ^ d);
    let witness_passes = |a: &BigUint| -> bool {
        let mut x = a.modpow(&d, n);
        if x.is_one() || x == n1 {
            return true;
        }
        for _ in 1..s {
            x = x.modpow(&BigUint::from(2u32), n);
            if x == n1 {
                return true;
            }
        }
        false
    };

    for &a in &MR_BASES_U64 {
        if !witness_passes(&BigUint::from(a)) {
            return false;
        }
    }
    for _ in 0..MR_EXTRA_ROUNDS {
        let a = BigUint::from(2 + splitmix64(&mut seed) % (u64::MAX - 3));
        if !witness_passes(&a) {
            return false;
        }
    }
    true
}
