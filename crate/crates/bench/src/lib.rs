//! Fixtures shared by the criterion benchmarks.

use frame_equiv::corpus::{frame_pair, item_seed, FramePair, PairKind};

/// Equivalent pair of `count` unit vectors in `R^dim`. Equivalent pairs are
/// the slow path for every decider: nothing short-circuits on a mismatch.
pub fn equivalent_pair(dim: usize, count: usize, seed: u64) -> FramePair {
    frame_pair(dim, count, PairKind::Constructed, item_seed(seed, (dim * 1000 + count) as u64))
        .expect("benchmark grid must satisfy count >= dim")
}

/// Independently drawn pair, almost surely inequivalent.
pub fn independent_pair(dim: usize, count: usize, seed: u64) -> FramePair {
    frame_pair(dim, count, PairKind::Independent, item_seed(seed, (dim * 1000 + count) as u64))
        .expect("benchmark grid must satisfy count >= dim")
}
