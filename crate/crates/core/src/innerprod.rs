//! The inner-product test: compare the sorted absolute off-diagonal Gram
//! entries of two frames.
//!
//! Equal multisets are necessary for equivalence in every dimension. They
//! are sufficient for three vectors in `R^2`; in general sufficiency is an
//! open conjecture, and matches outside the proven regimes are reported as
//! [`Decision::LikelyEquivalent`].

use crate::angle::angle_equivalent;
use crate::error::Result;
use crate::frame::{check_same_shape, frame_potential, gram, Frame};
use crate::verdict::{Certificate, Decision, Verdict};

/// Sorted `|<f_i, f_j>|` for `i < j`.
#[derive(Debug, Clone, PartialEq)]
pub struct AbsGramMultiset {
    values: Vec<f64>,
}

impl AbsGramMultiset {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// First position where the two sorted lists differ by more than `tol`.
    pub fn first_mismatch(&self, other: &AbsGramMultiset, tol: f64) -> Option<usize> {
        if self.len() != other.len() {
            return Some(self.len().min(other.len()));
        }
        self.values
            .iter()
            .zip(&other.values)
            .position(|(a, b)| (a - b).abs() > tol)
    }

    pub fn matches(&self, other: &AbsGramMultiset, tol: f64) -> bool {
        self.first_mismatch(other, tol).is_none()
    }
}

pub fn abs_gram_multiset(frame: &Frame) -> AbsGramMultiset {
    let k = frame.count();
    let mut values = Vec::with_capacity(k * k.saturating_sub(1) / 2);
    values.extend(gram(frame).upper_off_diagonal().map(f64::abs));
    values.sort_unstable_by(f64::total_cmp);
    AbsGramMultiset { values }
}

/// Runs the inner-product test and attaches the strongest certificate
/// available for the frames' shape.
pub fn ip_equivalent(f: &Frame, g: &Frame, tol: f64) -> Result<Verdict> {
    check_same_shape(f, g)?;
    let sf = abs_gram_multiset(f);
    let sg = abs_gram_multiset(g);
    if let Some(i) = sf.first_mismatch(&sg, tol) {
        return Ok(
            Verdict::new(Decision::NotEquivalent, Certificate::AbsGramMismatch).with_note(format!(
                "absolute Gram multisets differ at sorted position {i}: {} vs {}",
                sf.values[i], sg.values[i]
            )),
        );
    }
    match (f.dim(), f.count()) {
        (1, _) => Ok(Verdict::new(Decision::Equivalent, Certificate::TrivialLine)),
        (2, 3) => Ok(Verdict::new(Decision::Equivalent, Certificate::TheoremS23)),
        (2, _) => angle_equivalent(f, g, tol),
        _ => Ok(Verdict::new(Decision::LikelyEquivalent, Certificate::Conjecture1)),
    }
}

/// Whether `FP_p(f)` and `FP_p(g)` agree within `tol` for every `p` in `ps`.
pub fn potentials_equal(f: &Frame, g: &Frame, ps: &[f64], tol: f64) -> Result<bool> {
    check_same_shape(f, g)?;
    Ok(ps
        .iter()
        .all(|&p| (frame_potential(f, p) - frame_potential(g, p)).abs() <= tol))
}
