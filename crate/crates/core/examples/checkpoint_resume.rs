//! Interrupting a long search and resuming it without losing or
//! duplicating anything.
//!
//! The engine persists a checkpoint after every contiguous chunk of the
//! range is merged. An observer can stop the run at any chunk boundary;
//! restarting with the same arguments and checkpoint path picks up
//! exactly where the frontier froze, replays nothing on the outcome's
//! match list twice, and ends byte-identical to an uninterrupted run.
//!
//! Run with: cargo run --release --example checkpoint_resume

use std::ops::ControlFlow;

use abundancy::arith::Ratio;
use abundancy::search::{load_checkpoint, search_ratio, search_ratio_observed, SearchConfig, SearchObserver};

/// Stops the search after a fixed number of chunks.
struct Interrupter {
    remaining: u64,
}

impl SearchObserver for Interrupter {
    fn on_chunk(&mut self, _completed: u64, _total: u64, _matches: u64) -> ControlFlow<()> {
        self.remaining -= 1;
        if self.remaining == 0 {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    }
}

fn main() {
    let ratio = Ratio::from_u64(2, 1);
    let (lo, hi) = (1u64, 40_000_000);
    let dir = std::env::temp_dir().join("abundancy-checkpoint-demo");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("perfect-2e7.json");
    let _ = std::fs::remove_file(&path);

    let config = SearchConfig {
        chunk_size: 1 << 20,
        checkpoint_path: Some(path.clone()),
        ..SearchConfig::default()
    };

    // Phase 1: run a while, then simulated power loss after 12 chunks.
    let partial =
        search_ratio_observed(&ratio, lo, hi, &config, &mut Interrupter { remaining: 12 })
            .unwrap();
    println!(
        "interrupted after {}/{} chunks; matches so far: {:?}",
        partial.chunks_completed, partial.chunks_total, partial.matches
    );
    assert!(!partial.complete());

    let on_disk = load_checkpoint(&path).unwrap();
    println!(
        "checkpoint on disk: {} chunks done, {} matches recorded",
        on_disk.completed_chunks,
        on_disk.matches.len()
    );

    // Phase 2: same invocation again, no observer tricks this time.
    let resumed = search_ratio(&ratio, lo, hi, &config).unwrap();
    println!(
        "resumed run skipped {} chunks and finished: matches {:?}",
        resumed.resumed_from.unwrap(),
        resumed.matches
    );
    assert!(resumed.complete());

    // An uninterrupted fresh run agrees exactly.
    let fresh = search_ratio(&ratio, lo, hi, &SearchConfig::default()).unwrap();
    assert_eq!(fresh.matches, resumed.matches);
    println!("identical to an uninterrupted run: no loss, no duplicates");

    let _ = std::fs::remove_file(&path);
}
