//! Seeded generators for test and benchmark pairs, and the counterexample
//! search for the inner-product conjecture.

use std::f64::consts::PI;

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;

use crate::error::Result;
use crate::frame::Frame;
use crate::innerprod::ip_equivalent;
use crate::oracle::{oracle_equivalent, OracleConfig};
use crate::transforms::{
    random_transform_with, random_unit_frame_with, seeded_rng, EquivalenceTransform,
};
use crate::verdict::Decision;

/// Derives the seed of item `index` in a corpus seeded with `base`.
pub fn item_seed(base: u64, index: u64) -> u64 {
    // splitmix64 finalizer
    let mut z = base.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PairKind {
    /// `g` is a random transform of `f`.
    Constructed,
    /// `f` and `g` are sampled independently.
    Independent,
    /// `g` is a transform of `f` with one vector resampled.
    SharedVectors,
    /// `g` is a transform of `f` with one vector nudged by about `1e-6`.
    NearTie,
}

impl PairKind {
    pub const ALL: [PairKind; 4] = [
        PairKind::Constructed,
        PairKind::Independent,
        PairKind::SharedVectors,
        PairKind::NearTie,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PairKind::Constructed => "constructed",
            PairKind::Independent => "independent",
            PairKind::SharedVectors => "shared-vectors",
            PairKind::NearTie => "near-tie",
        }
    }
}

#[derive(Debug, Clone)]
pub struct FramePair {
    pub f: Frame,
    pub g: Frame,
    pub kind: PairKind,
    pub seed: u64,
    /// The transform used to build `g`, for constructed pairs.
    pub transform: Option<EquivalenceTransform>,
}

pub fn frame_pair(dim: usize, count: usize, kind: PairKind, seed: u64) -> Result<FramePair> {
    let mut rng = seeded_rng(seed);
    let f = random_unit_frame_with(&mut rng, dim, count)?;
    let (g, transform) = match kind {
        PairKind::Constructed => {
            let t = random_transform_with(&mut rng, dim, count);
            (t.apply(&f)?, Some(t))
        }
        PairKind::Independent => (random_unit_frame_with(&mut rng, dim, count)?, None),
        PairKind::SharedVectors | PairKind::NearTie => {
            let mut m = f.matrix().clone();
            let victim = rng.random_range(0..count);
            let fresh = random_unit_frame_with(&mut rng, dim, dim)?;
            let mut col = m.column(victim).clone_owned();
            if kind == PairKind::SharedVectors {
                col.copy_from(&fresh.matrix().column(0));
            } else {
                col += fresh.matrix().column(0) * 1e-6;
                col.normalize_mut();
            }
            m.set_column(victim, &col);
            let edited = match Frame::from_matrix(m, 1e-12) {
                Ok(edited) => edited,
                // resampling left the span degenerate; fall back to a fresh frame
                Err(_) => random_unit_frame_with(&mut rng, dim, count)?,
            };
            let t = random_transform_with(&mut rng, dim, count);
            (t.apply(&edited)?, None)
        }
    };
    Ok(FramePair {
        f,
        g,
        kind,
        seed,
        transform,
    })
}

/// Polar angles of a planar frame whose cyclic gap sequence is `cycle`
/// (which must sum to `pi`), starting at `offset`.
pub fn frame_from_gap_cycle(cycle: &[f64], offset: f64) -> Result<Frame> {
    let mut angles = Vec::with_capacity(cycle.len());
    let mut theta = offset;
    for gap in cycle {
        angles.push(theta);
        theta += gap;
    }
    Frame::from_angles(&angles)
}

/// A cyclic gap sequence of length `count` summing to `pi` in which the
/// largest gap occurs exactly twice.
pub fn tied_gap_cycle<R: Rng>(rng: &mut R, count: usize) -> Vec<f64> {
    assert!(count >= 2);
    let mut gaps: Vec<f64> = (0..count).map(|_| rng.random_range(0.2..1.0)).collect();
    gaps[0] = 1.3;
    gaps[1] = 1.3;
    gaps.shuffle(rng);
    let total: f64 = gaps.iter().sum();
    gaps.iter().map(|g| g * PI / total).collect()
}

/// Planar pairs whose first frame has two minimal cross-angle
/// configurations. The second frame is, depending on `variant % 3`, a
/// random transform of the first, a frame built from a shuffle of the same
/// gaps, or one with two adjacent gaps swapped.
pub fn tied_planar_pair(count: usize, variant: u64, seed: u64) -> Result<FramePair> {
    let mut rng = seeded_rng(seed);
    let cycle = tied_gap_cycle(&mut rng, count);
    let f = frame_from_gap_cycle(&cycle, rng.random_range(0.0..2.0 * PI))?;
    let t = random_transform_with(&mut rng, 2, count);
    let (base, transform) = match variant % 3 {
        0 => (f.clone(), Some(t.clone())),
        1 => {
            let mut shuffled = cycle.clone();
            shuffled.shuffle(&mut rng);
            (frame_from_gap_cycle(&shuffled, rng.random_range(0.0..2.0 * PI))?, None)
        }
        _ => {
            let mut swapped = cycle.clone();
            let i = rng.random_range(0..count);
            swapped.swap(i, (i + 1) % count);
            (frame_from_gap_cycle(&swapped, rng.random_range(0.0..2.0 * PI))?, None)
        }
    };
    let g = t.apply(&base)?;
    Ok(FramePair {
        f,
        g,
        kind: if transform.is_some() {
            PairKind::Constructed
        } else {
            PairKind::Independent
        },
        seed,
        transform,
    })
}

#[derive(Debug, Clone)]
pub struct ConjectureSearch {
    /// `(dim, count)` shapes, visited round-robin.
    pub shapes: Vec<(usize, usize)>,
    pub trials: usize,
    pub seed: u64,
    pub tol: f64,
}

impl Default for ConjectureSearch {
    fn default() -> Self {
        ConjectureSearch {
            shapes: vec![(3, 4), (3, 5)],
            trials: 100_000,
            seed: 0,
            tol: crate::DEFAULT_TOL,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Disagreement {
    pub trial: usize,
    pub pair: FramePair,
    pub ip: Decision,
    pub oracle: bool,
}

#[derive(Debug, Clone, Default)]
pub struct ConjectureReport {
    pub trials: usize,
    /// Pairs whose absolute Gram multisets matched.
    pub ip_matches: usize,
    /// Pairs the oracle declared equivalent.
    pub oracle_equivalent: usize,
    /// Multisets matched but the oracle found no equivalence.
    pub counterexamples: Vec<Disagreement>,
    /// Multisets differed but the oracle found an equivalence.
    pub rejection_violations: Vec<Disagreement>,
    /// Trial counts per pair family, in [`PairKind::ALL`] order.
    pub per_kind: [usize; 4],
}

impl ConjectureReport {
    pub fn is_clean(&self) -> bool {
        self.counterexamples.is_empty() && self.rejection_violations.is_empty()
    }

    fn merge(mut self, other: ConjectureReport) -> ConjectureReport {
        self.trials += other.trials;
        self.ip_matches += other.ip_matches;
        self.oracle_equivalent += other.oracle_equivalent;
        self.counterexamples.extend(other.counterexamples);
        self.rejection_violations.extend(other.rejection_violations);
        for (a, b) in self.per_kind.iter_mut().zip(other.per_kind) {
            *a += b;
        }
        self
    }
}

impl ConjectureSearch {
    /// Compares the inner-product test against the oracle on every trial.
    /// Trials run in parallel; each owns its seed, so the report does not
    /// depend on scheduling.
    pub fn run(&self) -> Result<ConjectureReport> {
        let cfg = OracleConfig {
            tol: self.tol,
            ..OracleConfig::default()
        };
        let mut report = (0..self.trials)
            .into_par_iter()
            .map(|trial| -> Result<ConjectureReport> {
                let (dim, count) = self.shapes[trial % self.shapes.len()];
                let kind_index = (trial / self.shapes.len()) % PairKind::ALL.len();
                let kind = PairKind::ALL[kind_index];
                let pair = frame_pair(dim, count, kind, item_seed(self.seed, trial as u64))?;
                let ip = ip_equivalent(&pair.f, &pair.g, self.tol)?.decision;
                let oracle = oracle_equivalent(&pair.f, &pair.g, &cfg)?.equivalent;
                let mut r = ConjectureReport {
                    trials: 1,
                    ..ConjectureReport::default()
                };
                r.per_kind[kind_index] = 1;
                let matched = ip != Decision::NotEquivalent;
                r.ip_matches = usize::from(matched);
                r.oracle_equivalent = usize::from(oracle);
                if matched != oracle {
                    let d = Disagreement {
                        trial,
                        pair,
                        ip,
                        oracle,
                    };
                    if matched {
                        r.counterexamples.push(d);
                    } else {
                        r.rejection_violations.push(d);
                    }
                }
                Ok(r)
            })
            .try_reduce(ConjectureReport::default, |a, b| Ok(a.merge(b)))?;
        report.counterexamples.sort_by_key(|d| d.trial);
        report.rejection_violations.sort_by_key(|d| d.trial);
        Ok(report)
    }
}
