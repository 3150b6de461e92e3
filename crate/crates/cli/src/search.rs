//! Counterexample search for the inner-product test, with the counts
//! report and on-disk dumps of any disagreement.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use frame_equiv::corpus::{ConjectureReport, Disagreement, PairKind};

use crate::error::{CliError, Result};
use crate::io::{write_frame, write_witness};

/// Counts summary of a [`ConjectureReport`].
pub struct ReportSummary<'a>(pub &'a ConjectureReport);

impl fmt::Display for ReportSummary<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.0;
        writeln!(f, "trials: {}", r.trials)?;
        for (kind, n) in PairKind::ALL.iter().zip(r.per_kind) {
            writeln!(f, "  {}: {n}", kind.as_str())?;
        }
        writeln!(f, "multiset matches: {}", r.ip_matches)?;
        writeln!(f, "oracle equivalent: {}", r.oracle_equivalent)?;
        writeln!(f, "match but not equivalent: {}", r.counterexamples.len())?;
        write!(f, "mismatch but equivalent: {}", r.rejection_violations.len())
    }
}

/// Writes `trial-<n>-f.json` and `trial-<n>-g.json` (plus the transform,
/// when the pair was constructed) for every disagreement. Returns the
/// frame paths written.
pub fn write_disagreements(dir: impl AsRef<Path>, items: &[Disagreement]) -> Result<Vec<PathBuf>> {
    let dir = dir.as_ref();
    if items.is_empty() {
        return Ok(Vec::new());
    }
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let mut written = Vec::with_capacity(2 * items.len());
    for d in items {
        let stem = format!("trial-{}", d.trial);
        for (suffix, frame) in [("f", &d.pair.f), ("g", &d.pair.g)] {
            let path = dir.join(format!("{stem}-{suffix}.json"));
            write_frame(frame, &path)?;
            written.push(path);
        }
        if let Some(t) = &d.pair.transform {
            write_witness(t, dir.join(format!("{stem}-transform.json")))?;
        }
    }
    Ok(written)
}
