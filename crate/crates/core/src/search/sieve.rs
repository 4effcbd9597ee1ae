use std::sync::Arc;

use num_integer::Roots;
use num_traits::ToPrimitive;

use crate::arith::factorize_u64;
use crate::error::{Error, Result};

/// Hard cap on how many sigma values [`sigma_sieve`] will materialize at
/// once (16 bytes each, so this is a 256 MiB output ceiling).
pub(crate) const MAX_SIEVE_OUTPUT: u64 = 1 << 24;

/// Base primes are never sieved past this bound; windows whose square root
/// exceeds it fall back to per-leftover factorization (still exact).
const BASE_PRIME_CAP: u64 = 1 << 26;

/// Internal sub-segment length: keeps scratch buffers cache-friendly and
/// memory bounded no matter how large a window a caller asks for.
const SUBSEGMENT: u64 = 1 << 20;

/// Reusable scratch for one segment; `sig[i]` ends up holding
/// `sigma(lo + i)` after [`SegmentSieve::sigma_into`].
#[derive(Default)]
pub(crate) struct SegmentBuf {
    rem: Vec<u64>,
    pub(crate) sig: Vec<u128>,
}

/// Segmented sigma sieve: for each base prime, walk its multiples in the
/// window, strip the full prime power out of a residual array, and multiply
/// the closed-form `sigma(p^a)` into the output. A residual above 1 is
/// prime (when the base primes cover the square root of the window) and
/// contributes `1 + r`.
#[derive(Clone)]
pub(crate) struct SegmentSieve {
    base: Arc<Vec<u64>>,
    /// Every prime `<= covered` is present in `base`.
    covered: u64,
}

impl SegmentSieve {
    /// Prepares base primes sufficient for windows that end at `hi`.
    pub(crate) fn new(hi: u64) -> Self {
        let bound = hi.sqrt().clamp(2, BASE_PRIME_CAP);
        Self { base: Arc::new(simple_primes(bound)), covered: bound }
    }

    /// Fills `buf.sig` with `sigma(n)` for every `n` in `lo..=hi` (`lo >= 1`).
    pub(crate) fn sigma_into(&self, lo: u64, hi: u64, buf: &mut SegmentBuf) {
        debug_assert!(1 <= lo && lo <= hi);
        let len = (hi - lo + 1) as usize;
        buf.rem.clear();
        buf.rem.extend(lo..=hi);
        buf.sig.clear();
        buf.sig.resize(len, 1u128);

        for &p in self.base.iter() {
            if p.saturating_mul(p) > hi {
                break;
            }
            let mut m = match lo.div_ceil(p).checked_mul(p) {
                Some(m) => m,
                None => continue,
            };
            while m <= hi {
                let idx = (m - lo) as usize;
                let r = &mut buf.rem[idx];
                let mut pw: u128 = 1;
                let mut term: u128 = 1;
                while (*r).is_multiple_of(p) {
                    *r /= p;
                    pw *= p as u128;
                    term += pw;
                }
                buf.sig[idx] *= term;
                m = match m.checked_add(p) {
                    Some(next) => next,
                    None => break,
                };
            }
        }

        let leftovers_are_prime = self.covered.saturating_mul(self.covered) >= hi;
        for i in 0..len {
            let r = buf.rem[i];
            if r > 1 {
                if leftovers_are_prime {
                    buf.sig[i] *= 1 + r as u128;
                } else {
                    // Rare fallback for windows beyond covered^2: the
                    // leftover may be a product of two large primes.
                    let s: u128 = factorize_u64(r)
                        .entries()
                        .iter()
                        .map(|(p, a)| {
                            crate::arith::sigma_prime_power(p, *a)
                                .to_u128()
                                .expect("sigma of a u64 fits in u128")
                        })
                        .product();
                    buf.sig[i] *= s;
                }
            }
        }
    }
}

/// All primes `<= bound` by a plain sieve of Eratosthenes.
fn simple_primes(bound: u64) -> Vec<u64> {
    let n = bound as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for p in 2..=n {
        if composite[p] {
            continue;
        }
        primes.push(p as u64);
        let mut m = p * p;
        while m <= n {
            composite[m] = true;
            m += p;
        }
    }
    primes
}

/// `sigma(n)` for every `n` in `lo..=hi`, as a dense vector indexed by
/// `n - lo`.
///
/// Exact for the whole `u64` range (values accumulate in `u128`). The
/// window length is capped at [`MAX_SIEVE_OUTPUT`] to bound memory; wider
/// scans should go through the chunked search engine instead.
pub fn sigma_sieve(lo: u64, hi: u64) -> Result<Vec<u128>> {
    if lo < 1 {
        return Err(Error::InvalidInput("sigma_sieve requires lo >= 1".into()));
    }
    if lo > hi {
        return Err(Error::InvalidInput(format!("empty window: lo = {lo} > hi = {hi}")));
    }
    let len = hi - lo + 1;
    if len > MAX_SIEVE_OUTPUT {
        return Err(Error::RangeTooLarge(format!(
            "window of {len} values exceeds the sigma_sieve cap of {MAX_SIEVE_OUTPUT}; \
             use the chunked search engine for wider scans"
        )));
    }

    let sieve = SegmentSieve::new(hi);
    let mut buf = SegmentBuf::default();
    let mut out = Vec::with_capacity(len as usize);
    let mut a = lo;
    loop {
        let b = a.saturating_add(SUBSEGMENT - 1).min(hi);
        sieve.sigma_into(a, b, &mut buf);
        out.extend_from_slice(&buf.sig);
        if b == hi {
            break;
        }
        a = b + 1;
    }
    Ok(out)
}
