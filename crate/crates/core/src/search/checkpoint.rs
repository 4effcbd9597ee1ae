use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Version stamp embedded in every checkpoint file; readers refuse
/// anything else rather than guessing.
pub const CHECKPOINT_SCHEMA_VERSION: u32 = 1;

/// Durable snapshot of a ratio search.
///
/// `completed_chunks` counts the *contiguous prefix* of finished chunks, so
/// a resumed search restarts exactly at chunk `completed_chunks` and never
/// re-reports a match recorded in `matches`. The file is JSON, written
/// atomically (temp file + rename), so a crash mid-write leaves the previous
/// snapshot intact.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub schema_version: u32,
    /// Reduced target ratio, rendered `num/den`.
    pub ratio: String,
    pub lo: u64,
    pub hi: u64,
    pub chunk_size: u64,
    pub completed_chunks: u64,
    /// All matches found in the completed prefix, ascending.
    pub matches: Vec<u64>,
}

/// Reads and validates a checkpoint file.
pub fn load_checkpoint(path: &Path) -> Result<Checkpoint> {
    let text = fs::read_to_string(path).map_err(|e| {
        Error::CorruptCheckpoint(format!("cannot read {}: {e}", path.display()))
    })?;
    let cp: Checkpoint = serde_json::from_str(&text).map_err(|e| {
        Error::CorruptCheckpoint(format!("cannot parse {}: {e}", path.display()))
    })?;
    if cp.schema_version != CHECKPOINT_SCHEMA_VERSION {
        return Err(Error::CorruptCheckpoint(format!(
            "schema version {} in {} is not the supported version {CHECKPOINT_SCHEMA_VERSION}",
            cp.schema_version,
            path.display()
        )));
    }
    Ok(cp)
}

/// Writes a checkpoint durably: serialize to a sibling temp file, then
/// rename over the target, so readers see either the old or the new
/// snapshot, never a torn one.
pub fn save_checkpoint(path: &Path, cp: &Checkpoint) -> Result<()> {
    let mut tmp_name = path.as_os_str().to_owned();
    tmp_name.push(".tmp");
    let tmp = PathBuf::from(tmp_name);
    let body = serde_json::to_string_pretty(cp).expect("checkpoint serializes");
    fs::write(&tmp, body)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Checkpoint {
        Checkpoint {
            schema_version: CHECKPOINT_SCHEMA_VERSION,
            ratio: "12/7".into(),
            lo: 1,
            hi: 1_000_000,
            chunk_size: 65_536,
            completed_chunks: 3,
            matches: vec![14],
        }
    }

    #[test]
    fn round_trips_through_disk() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("search.ckpt");
        save_checkpoint(&path, &sample()).unwrap();
        assert_eq!(load_checkpoint(&path).unwrap(), sample());
        // Overwrite keeps the file valid.
        let mut advanced = sample();
        advanced.completed_chunks = 9;
        save_checkpoint(&path, &advanced).unwrap();
        assert_eq!(load_checkpoint(&path).unwrap(), advanced);
    }

    #[test]
    fn rejects_garbage_missing_and_wrong_version() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("search.ckpt");
        assert!(matches!(load_checkpoint(&path), Err(Error::CorruptCheckpoint(_))));

        fs::write(&path, "{ not json").unwrap();
        assert!(matches!(load_checkpoint(&path), Err(Error::CorruptCheckpoint(_))));

        let mut wrong = sample();
        wrong.schema_version = 99;
        fs::write(&path, serde_json::to_string(&wrong).unwrap()).unwrap();
        match load_checkpoint(&path) {
            Err(Error::CorruptCheckpoint(msg)) => assert!(msg.contains("schema version 99")),
            other => panic!("expected corrupt-checkpoint error, got {other:?}"),
        }
    }

    #[test]
    fn written_file_is_stable_json() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("search.ckpt");
        save_checkpoint(&path, &sample()).unwrap();
        let doc: serde_json::Value =
            serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
        assert_eq!(doc["schema_version"], 1);
        assert_eq!(doc["ratio"], "12/7");
        assert_eq!(doc["matches"][0], 14);
    }
}
