//! Range scanning: the segmented sigma sieve, the chunked parallel ratio
//! search with durable checkpoints, friend-finding scans, and brute-force
//! verification of the structural facts behind the constraint pipeline.

mod checkpoint;
mod engine;
mod friends;
mod sieve;
mod verify;

pub use checkpoint::{load_checkpoint, save_checkpoint, Checkpoint, CHECKPOINT_SCHEMA_VERSION};
pub use engine::{
    search_ratio, search_ratio_observed, NoopObserver, SearchConfig, SearchObserver,
    SearchOutcome, DEFAULT_CHUNK_SIZE,
};
pub use friends::{find_friend_of, friend_pairs};
pub use sieve::sigma_sieve;
pub use verify::{
    verify_theorem, TheoremId, VerificationReport, VerifyBudget, ALL_THEOREMS,
};
