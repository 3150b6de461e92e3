//! Equivalence in `R^2` through minimal cross-angle configurations.
//!
//! After flipping every vector into the closed upper half-plane and sorting
//! by polar angle, a frame of `k` vectors is described by the `k - 1` gaps
//! between consecutive vectors. Together with the wrap-around gap `pi - A`
//! (where `A` is the cross angle) the gaps form a cyclic sequence summing to
//! `pi`. Every sign/relabeling configuration of the frame drops exactly one
//! gap of that cycle, and its cross angle is `pi` minus the dropped gap, so
//! the minimal configurations are the ones that drop a largest gap.
//!
//! When several gaps tie for the maximum, every minimal configuration is
//! enumerated. Two frames are equivalent iff some minimal gap sequence of
//! one equals a minimal gap sequence of the other or its reversal.

use std::cmp::Ordering;
use std::f64::consts::PI;

use crate::error::{FrameError, Result};
use crate::frame::{check_same_shape, Frame};
use crate::verdict::{Certificate, Decision, Verdict};

/// Default absolute tolerance for comparing angles, in radians.
pub const ANGLE_TOL: f64 = 1e-9;

/// Vectors with `|y|` at most this are treated as lying on the x-axis.
pub const AXIS_TOL: f64 = 1e-12;

/// Consecutive angles of a sign-normalized, angle-sorted frame.
#[derive(Debug, Clone, PartialEq)]
pub struct AngleGaps {
    pub gaps: Vec<f64>,
    pub cross_angle: f64,
}

impl AngleGaps {
    /// The gaps followed by the wrap-around gap `pi - A`.
    pub fn cyclic(&self) -> Vec<f64> {
        let mut ext = self.gaps.clone();
        ext.push((PI - self.cross_angle).max(0.0));
        ext
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MinimalAngleForm {
    /// Lexicographically smallest minimal gap sequence, reversals included.
    pub canonical_gaps: Vec<f64>,
    pub min_cross_angle: f64,
    /// Number of positions in the gap cycle attaining the maximum gap.
    pub tie_count: usize,
    /// One gap sequence per minimal configuration, in cycle order.
    pub all_minimal_sequences: Vec<Vec<f64>>,
}

fn require_planar(frame: &Frame) -> Result<()> {
    if frame.dim() != 2 {
        return Err(FrameError::NotPlanar { dim: frame.dim() });
    }
    Ok(())
}

fn normalize_column(x: f64, y: f64) -> (f64, f64) {
    let flip = if y.abs() <= AXIS_TOL { x < 0.0 } else { y < 0.0 };
    if flip {
        (-x, -y)
    } else {
        (x, y)
    }
}

/// Flips signs so that every vector has `y >= 0`; vectors on the x-axis
/// end up with `x > 0`.
pub fn upper_half_normalize(frame: &Frame) -> Result<Frame> {
    require_planar(frame)?;
    let mut m = frame.matrix().clone();
    for mut col in m.column_iter_mut() {
        let (x, y) = normalize_column(col[0], col[1]);
        col[0] = x;
        col[1] = y;
    }
    Ok(Frame::from_matrix_unchecked(m))
}

/// Polar angles of the normalized vectors, ascending. Values may dip a hair
/// below zero for vectors within [`AXIS_TOL`] of the positive x-axis.
fn sorted_angles(frame: &Frame) -> Result<Vec<f64>> {
    require_planar(frame)?;
    let mut angles: Vec<f64> = frame
        .columns()
        .map(|c| {
            let (x, y) = normalize_column(c[0], c[1]);
            y.atan2(x)
        })
        .collect();
    angles.sort_by(f64::total_cmp);
    Ok(angles)
}

pub fn angle_gaps(frame: &Frame) -> Result<AngleGaps> {
    let angles = sorted_angles(frame)?;
    let gaps: Vec<f64> = angles.windows(2).map(|w| w[1] - w[0]).collect();
    let cross_angle = angles[angles.len() - 1] - angles[0];
    Ok(AngleGaps { gaps, cross_angle })
}

/// Lexicographic order where entries within `tol` compare equal.
fn lex_cmp(a: &[f64], b: &[f64], tol: f64) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        if (x - y).abs() > tol {
            return x.total_cmp(y);
        }
    }
    a.len().cmp(&b.len())
}

fn sequences_close(a: &[f64], b: &[f64], tol: f64) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
}

pub fn minimal_angle_form(frame: &Frame) -> Result<MinimalAngleForm> {
    minimal_angle_form_with_tol(frame, ANGLE_TOL)
}

/// Minimal angle form with ties in the maximal gap detected within `tol`.
pub fn minimal_angle_form_with_tol(frame: &Frame, tol: f64) -> Result<MinimalAngleForm> {
    let cycle = angle_gaps(frame)?.cyclic();
    let k = cycle.len();
    let max_gap = cycle.iter().cloned().fold(f64::NEG_INFINITY, f64::max);

    let all_minimal_sequences: Vec<Vec<f64>> = (0..k)
        .filter(|&j| cycle[j] >= max_gap - tol)
        .map(|j| (1..k).map(|t| cycle[(j + t) % k]).collect())
        .collect();

    let canonical_gaps = all_minimal_sequences
        .iter()
        .flat_map(|s| [s.clone(), s.iter().rev().cloned().collect()])
        .min_by(|a, b| lex_cmp(a, b, tol))
        .expect("a cycle always has a maximal gap");

    Ok(MinimalAngleForm {
        canonical_gaps,
        min_cross_angle: PI - max_gap,
        tie_count: all_minimal_sequences.len(),
        all_minimal_sequences,
    })
}

/// Decides equivalence of two frames of `R^2`.
///
/// Exact for every pair of frames, including ones whose minimal cross
/// angle is attained by several configurations.
pub fn angle_equivalent(f: &Frame, g: &Frame, tol: f64) -> Result<Verdict> {
    require_planar(f)?;
    require_planar(g)?;
    check_same_shape(f, g)?;
    let mf = minimal_angle_form_with_tol(f, tol)?;
    let mg = minimal_angle_form_with_tol(g, tol)?;

    let not_equivalent = |why: String| Ok(Verdict::new(Decision::NotEquivalent, Certificate::AngleCanonical).with_note(why));

    if (mf.min_cross_angle - mg.min_cross_angle).abs() > tol {
        return not_equivalent(format!(
            "minimal cross angles differ: {} vs {}",
            mf.min_cross_angle, mg.min_cross_angle
        ));
    }
    if mf.tie_count != mg.tie_count {
        return not_equivalent(format!(
            "different numbers of minimal configurations: {} vs {}",
            mf.tie_count, mg.tie_count
        ));
    }
    for s in &mf.all_minimal_sequences {
        for t in &mg.all_minimal_sequences {
            if sequences_close(s, t, tol) {
                return Ok(Verdict::new(Decision::Equivalent, Certificate::AngleCanonical)
                    .with_note("minimal gap sequences agree (rotation)"));
            }
            let reversed: Vec<f64> = t.iter().rev().cloned().collect();
            if sequences_close(s, &reversed, tol) {
                return Ok(Verdict::new(Decision::Equivalent, Certificate::AngleCanonical)
                    .with_note("minimal gap sequences agree after reversal (reflection)"));
            }
        }
    }
    not_equivalent("no minimal gap sequence is shared".into())
}
