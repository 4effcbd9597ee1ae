use std::collections::BTreeMap;
use std::ops::ControlFlow;
use std::path::PathBuf;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::mpsc;
use std::thread;

use num_integer::Roots;
use num_traits::ToPrimitive;

use super::checkpoint::{load_checkpoint, save_checkpoint, Checkpoint, CHECKPOINT_SCHEMA_VERSION};
use super::sieve::{SegmentBuf, SegmentSieve};
use crate::arith::Ratio;
use crate::error::{Error, Result};

/// Default number of integers per work chunk.
pub const DEFAULT_CHUNK_SIZE: u64 = 1 << 20;

/// Tuning for [`search_ratio`]. The defaults match the CLI defaults.
#[derive(Debug, Clone)]
pub struct SearchConfig {
    /// Worker threads; 0 means "ask the OS for available parallelism".
    pub workers: usize,
    /// Integers per chunk. Chunk geometry is part of checkpoint identity,
    /// so resuming requires the same chunk size.
    pub chunk_size: u64,
    /// When set, progress is persisted here after every contiguously
    /// completed chunk, and an existing file resumes the search.
    pub checkpoint_path: Option<PathBuf>,
    /// Apply the cheap friend-of-14 prefilters. Only honored when the
    /// target ratio is exactly 12/7; the known friend 14 always bypasses
    /// the filters.
    pub friend14_filters: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            workers: 0,
            chunk_size: DEFAULT_CHUNK_SIZE,
            checkpoint_path: None,
            friend14_filters: false,
        }
    }
}

/// Callbacks invoked by the search *in deterministic order*: matches arrive
/// ascending, chunk completions arrive as the contiguous frontier advances.
/// Returning `Break` from [`SearchObserver::on_chunk`] stops the search
/// gracefully after the current chunk.
pub trait SearchObserver {
    fn on_match(&mut self, _n: u64, _sigma: u128) {}

    fn on_chunk(&mut self, _completed: u64, _total: u64, _matches_so_far: u64) -> ControlFlow<()> {
        ControlFlow::Continue(())
    }
}

/// Observer that ignores everything.
pub struct NoopObserver;

impl SearchObserver for NoopObserver {}

/// Result of a (possibly resumed, possibly interrupted) ratio search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub ratio: Ratio,
    pub lo: u64,
    pub hi: u64,
    /// Every `n` in `lo..=hi` (completed prefix) with `I(n) == ratio`,
    /// ascending, including matches replayed from a resumed checkpoint.
    pub matches: Vec<u64>,
    /// Contiguously completed chunks, including any resumed prefix.
    pub chunks_completed: u64,
    pub chunks_total: u64,
    /// `Some(k)` when a checkpoint was loaded with `k` chunks already done.
    pub resumed_from: Option<u64>,
}

impl SearchOutcome {
    /// True when every chunk of the range was scanned.
    pub fn complete(&self) -> bool {
        self.chunks_completed == self.chunks_total
    }
}

/// Finds every `n` in `lo..=hi` with `sigma(n)/n == ratio`, scanning the
/// range in fixed chunks with a segmented sigma sieve.
///
/// Only multiples of the reduced denominator are tested (the index of `n`
/// can only reduce to `num/den` when `den` divides `n`), and the match test
/// `sigma(n) == (n/den) * num` is exact in `u128`. Results are byte-for-byte
/// identical for any worker count and chunk size.
pub fn search_ratio(ratio: &Ratio, lo: u64, hi: u64, config: &SearchConfig) -> Result<SearchOutcome> {
    search_ratio_observed(ratio, lo, hi, config, &mut NoopObserver)
}

/// [`search_ratio`] with streaming callbacks for matches and progress.
pub fn search_ratio_observed(
    ratio: &Ratio,
    lo: u64,
    hi: u64,
    config: &SearchConfig,
    observer: &mut dyn SearchObserver,
) -> Result<SearchOutcome> {
    if lo < 1 {
        return Err(Error::InvalidInput("search range must start at 1 or above".into()));
    }
    if lo > hi {
        return Err(Error::InvalidInput(format!("empty search range: min = {lo} > max = {hi}")));
    }
    if *ratio < Ratio::one() {
        return Err(Error::InvalidInput(format!(
            "ratio {ratio} is below 1, and sigma(n)/n >= 1 always"
        )));
    }
    let chunk_size = config.chunk_size.max(1);
    let chunks_total = (hi - lo) / chunk_size + 1;

    let mut matches: Vec<u64> = Vec::new();
    let mut frontier: u64 = 0;
    let mut resumed_from = None;
    if let Some(path) = &config.checkpoint_path {
        if path.exists() {
            let cp = load_checkpoint(path)?;
            let ratio_repr = ratio.to_string();
            if (cp.ratio.as_str(), cp.lo, cp.hi, cp.chunk_size)
                != (ratio_repr.as_str(), lo, hi, chunk_size)
            {
                return Err(Error::CorruptCheckpoint(format!(
                    "checkpoint {} records ratio={} lo={} hi={} chunk_size={}, \
                     but this search asked for ratio={ratio_repr} lo={lo} hi={hi} chunk_size={chunk_size}",
                    path.display(),
                    cp.ratio,
                    cp.lo,
                    cp.hi,
                    cp.chunk_size
                )));
            }
            if cp.completed_chunks > chunks_total {
                return Err(Error::CorruptCheckpoint(format!(
                    "checkpoint {} claims {} completed chunks of {chunks_total}",
                    path.display(),
                    cp.completed_chunks
                )));
            }
            frontier = cp.completed_chunks;
            matches = cp.matches;
            resumed_from = Some(frontier);
        }
    }

    let outcome = |matches: Vec<u64>, frontier: u64| SearchOutcome {
        ratio: ratio.clone(),
        lo,
        hi,
        matches,
        chunks_completed: frontier,
        chunks_total,
        resumed_from,
    };

    if frontier == chunks_total {
        return Ok(outcome(matches, frontier));
    }

    // A match needs den | n (so den <= hi) and sigma(n) = (n/den) * num with
    // sigma(n) < 2^128; a numerator that cannot fit rules every n out.
    let den = ratio.denom().to_u64().filter(|&d| d <= hi);
    let num = ratio.numer().to_u128();
    let (den, num) = match (den, num) {
        (Some(d), Some(n)) => (d, n),
        _ => {
            // No candidate in range can attain the ratio: complete the
            // search without sieving.
            if let Some(path) = &config.checkpoint_path {
                save_checkpoint(
                    path,
                    &Checkpoint {
                        schema_version: CHECKPOINT_SCHEMA_VERSION,
                        ratio: ratio.to_string(),
                        lo,
                        hi,
                        chunk_size,
                        completed_chunks: chunks_total,
                        matches: matches.clone(),
                    },
                )?;
            }
            let _ = observer.on_chunk(chunks_total, chunks_total, matches.len() as u64);
            return Ok(outcome(matches, chunks_total));
        }
    };

    let filters_active = config.friend14_filters && *ratio == Ratio::from_u64(12, 7);
    let workers = effective_workers(config.workers, chunks_total - frontier);
    let sieve = SegmentSieve::new(hi);

    let next_chunk = AtomicU64::new(frontier);
    let stop = AtomicBool::new(false);
    let mut failure: Option<Error> = None;

    thread::scope(|scope| {
        let (tx, rx) = mpsc::channel::<(u64, Vec<(u64, u128)>)>();
        for _ in 0..workers {
            let tx = tx.clone();
            let sieve = &sieve;
            let next_chunk = &next_chunk;
            let stop = &stop;
            scope.spawn(move || {
                let mut buf = SegmentBuf::default();
                loop {
                    if stop.load(Ordering::Relaxed) {
                        break;
                    }
                    let index = next_chunk.fetch_add(1, Ordering::Relaxed);
                    if index >= chunks_total {
                        break;
                    }
                    let (a, b) = chunk_bounds(lo, hi, chunk_size, index);
                    let found = scan_chunk(sieve, a, b, den, num, filters_active, &mut buf);
                    if tx.send((index, found)).is_err() {
                        break;
                    }
                }
            });
        }
        drop(tx);

        // Single-threaded merge: buffer out-of-order chunks and advance the
        // contiguous frontier, so observers and checkpoints see a
        // deterministic, in-order stream. Once stopped, later results are
        // discarded (a resume re-scans them), keeping the frontier exact.
        let mut pending: BTreeMap<u64, Vec<(u64, u128)>> = BTreeMap::new();
        let mut stopped = false;
        for (index, found) in rx {
            if failure.is_some() || stopped {
                continue; // drain so workers can exit
            }
            pending.insert(index, found);
            while let Some(found) = pending.remove(&frontier) {
                for &(n, sigma) in &found {
                    matches.push(n);
                    observer.on_match(n, sigma);
                }
                frontier += 1;
                if let Some(path) = &config.checkpoint_path {
                    let cp = Checkpoint {
                        schema_version: CHECKPOINT_SCHEMA_VERSION,
                        ratio: ratio.to_string(),
                        lo,
                        hi,
                        chunk_size,
                        completed_chunks: frontier,
                        matches: matches.clone(),
                    };
                    if let Err(e) = save_checkpoint(path, &cp) {
                        failure = Some(e);
                        stop.store(true, Ordering::Relaxed);
                        break;
                    }
                }
                if observer
                    .on_chunk(frontier, chunks_total, matches.len() as u64)
                    .is_break()
                {
                    stopped = true;
                    stop.store(true, Ordering::Relaxed);
                    break;
                }
            }
        }
    });

    match failure {
        Some(e) => Err(e),
        None => Ok(outcome(matches, frontier)),
    }
}

fn effective_workers(requested: usize, remaining_chunks: u64) -> usize {
    let hw = || thread::available_parallelism().map(|n| n.get()).unwrap_or(1);
    let want = if requested == 0 { hw() } else { requested };
    want.max(1).min(remaining_chunks.min(1024) as usize).max(1)
}

fn chunk_bounds(lo: u64, hi: u64, chunk_size: u64, index: u64) -> (u64, u64) {
    let a = lo + index * chunk_size;
    let b = a.saturating_add(chunk_size - 1).min(hi);
    (a, b)
}

fn scan_chunk(
    sieve: &SegmentSieve,
    a: u64,
    b: u64,
    den: u64,
    num: u128,
    filters: bool,
    buf: &mut SegmentBuf,
) -> Vec<(u64, u128)> {
    sieve.sigma_into(a, b, buf);
    let mut found = Vec::new();
    let mut n = match a.div_ceil(den).checked_mul(den) {
        Some(n) => n,
        None => return found,
    };
    while n <= b {
        let sigma = buf.sig[(n - a) as usize];
        if (!filters || n == 14 || friend14_prefilter(n, sigma))
            && (n / den) as u128 * num == sigma
        {
            found.push((n, sigma));
        }
        n = match n.checked_add(den) {
            Some(next) => next,
            None => break,
        };
    }
    found
}

/// Cheap necessary conditions for `I(n) = 12/7`, checkable from `n` and
/// `sigma(n)` alone: a friend of 14 is odd, above 14, divisible by 49 but
/// not by 9 or 15, not a square, and has `sigma` divisible by 4 and 3 but
/// not 8. Everything here is implied by the full constraint pipeline, so
/// no true friend is ever filtered out.
#[inline]
fn friend14_prefilter(n: u64, sigma: u128) -> bool {
    n & 1 == 1
        && n > 14
        && n.is_multiple_of(49)
        && !n.is_multiple_of(15)
        && (!n.is_multiple_of(3) || !n.is_multiple_of(9))
        && sigma.is_multiple_of(4)
        && !sigma.is_multiple_of(8)
        && sigma.is_multiple_of(3)
        && !is_square(n)
}

#[inline]
fn is_square(n: u64) -> bool {
    let r = n.sqrt();
    r * r == n
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(ratio: (u64, u64), lo: u64, hi: u64, config: &SearchConfig) -> SearchOutcome {
        search_ratio(&Ratio::from_u64(ratio.0, ratio.1), lo, hi, config).unwrap()
    }

    #[test]
    fn finds_perfect_numbers() {
        let outcome = run((2, 1), 1, 10_000, &SearchConfig::default());
        assert_eq!(outcome.matches, [6, 28, 496, 8128]);
        assert!(outcome.complete());
        assert_eq!(outcome.resumed_from, None);
    }

    #[test]
    fn finds_twelve_fifths_family() {
        let outcome = run((12, 5), 1, 200, &SearchConfig::default());
        assert_eq!(outcome.matches, [30, 140]);
    }

    #[test]
    fn ratio_is_reduced_before_matching() {
        let outcome = run((24, 10), 1, 200, &SearchConfig::default());
        assert_eq!(outcome.matches, [30, 140]);
    }

    #[test]
    fn fourteen_is_found_with_and_without_filters() {
        let plain = run((12, 7), 1, 1_000_000, &SearchConfig::default());
        assert_eq!(plain.matches, [14]);
        let filtered = run(
            (12, 7),
            1,
            1_000_000,
            &SearchConfig { friend14_filters: true, ..SearchConfig::default() },
        );
        assert_eq!(filtered.matches, [14]);
    }

    #[test]
    fn identical_outcomes_across_workers_and_chunk_sizes() {
        let baseline = run((2, 1), 1, 2_000_000, &SearchConfig::default());
        assert_eq!(baseline.matches, [6, 28, 496, 8128]);
        for workers in [1usize, 3] {
            for chunk_size in [1 << 12, 1 << 20] {
                let outcome = run(
                    (2, 1),
                    1,
                    2_000_000,
                    &SearchConfig { workers, chunk_size, ..SearchConfig::default() },
                );
                assert_eq!(outcome.matches, baseline.matches, "w={workers} c={chunk_size}");
            }
        }
    }

    #[test]
    fn offset_ranges_exclude_left_matches() {
        let outcome = run((2, 1), 7, 10_000, &SearchConfig::default());
        assert_eq!(outcome.matches, [28, 496, 8128]);
    }

    #[test]
    fn impossible_ratios_complete_without_scanning() {
        // Denominator exceeds the range: nothing to test.
        let outcome = run((100_003, 100_002), 1, 1_000, &SearchConfig::default());
        assert!(outcome.matches.is_empty());
        assert!(outcome.complete());
    }

    #[test]
    fn rejects_bad_arguments() {
        let config = SearchConfig::default();
        let ratio = Ratio::from_u64(2, 1);
        assert!(matches!(search_ratio(&ratio, 0, 10, &config), Err(Error::InvalidInput(_))));
        assert!(matches!(search_ratio(&ratio, 10, 2, &config), Err(Error::InvalidInput(_))));
        let below_one = Ratio::from_u64(3, 4);
        assert!(matches!(search_ratio(&below_one, 1, 10, &config), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn observer_sees_ordered_stream_and_can_stop() {
        struct Recorder {
            matches: Vec<u64>,
            chunks: Vec<u64>,
            stop_after: u64,
        }
        impl SearchObserver for Recorder {
            fn on_match(&mut self, n: u64, sigma: u128) {
                assert_eq!(sigma % 2, 0);
                self.matches.push(n);
            }
            fn on_chunk(&mut self, completed: u64, total: u64, _m: u64) -> ControlFlow<()> {
                assert!(completed <= total);
                self.chunks.push(completed);
                if completed >= self.stop_after {
                    ControlFlow::Break(())
                } else {
                    ControlFlow::Continue(())
                }
            }
        }

        let mut rec = Recorder { matches: vec![], chunks: vec![], stop_after: 4 };
        let config = SearchConfig { chunk_size: 100, workers: 2, ..SearchConfig::default() };
        let outcome =
            search_ratio_observed(&Ratio::from_u64(2, 1), 1, 10_000, &config, &mut rec).unwrap();
        // Interrupted after (at least) 4 chunks: the frontier is exact and
        // the chunk stream is the contiguous sequence 1, 2, 3, ...
        assert!(!outcome.complete());
        assert_eq!(outcome.chunks_completed, 4);
        assert_eq!(rec.chunks, [1, 2, 3, 4]);
        assert_eq!(rec.matches, [6, 28]);
        assert_eq!(outcome.matches, [6, 28]);
    }

    #[test]
    fn single_chunk_and_single_value_ranges() {
        let outcome = run((2, 1), 6, 6, &SearchConfig { chunk_size: 1, ..Default::default() });
        assert_eq!(outcome.matches, [6]);
        assert_eq!(outcome.chunks_total, 1);
        let outcome = run((2, 1), 7, 7, &SearchConfig::default());
        assert!(outcome.matches.is_empty());
    }
}
