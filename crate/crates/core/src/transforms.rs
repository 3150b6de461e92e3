//! The three equivalence operations (orthogonal map, relabeling, sign flips)
//! and seeded samplers for them.
//!
//! All randomness comes from [`ChaCha8Rng`] seeded through
//! [`seeded_rng`], so a `u64` seed pins down every generated matrix, frame
//! and transform on every platform.

use nalgebra::DMatrix;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{FrameError, Result};
use crate::frame::Frame;

/// Tolerance on `U^T U = I` when accepting an orthogonal factor.
pub const ORTHOGONALITY_TOL: f64 = 1e-9;

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A composite equivalence `g_i = signs[i] * U f_{permutation[i]}`.
#[derive(Debug, Clone, PartialEq)]
pub struct EquivalenceTransform {
    orthogonal: DMatrix<f64>,
    permutation: Vec<usize>,
    signs: Vec<i8>,
}

impl EquivalenceTransform {
    pub fn new(orthogonal: DMatrix<f64>, permutation: Vec<usize>, signs: Vec<i8>) -> Result<Self> {
        if !orthogonal.is_square() || orthogonal.nrows() == 0 {
            return Err(FrameError::InvalidTransform(format!(
                "orthogonal factor must be square, got {}x{}",
                orthogonal.nrows(),
                orthogonal.ncols()
            )));
        }
        let defect = orthogonality_defect(&orthogonal);
        if !(defect <= ORTHOGONALITY_TOL) {
            return Err(FrameError::InvalidTransform(format!(
                "|U^T U - I|_max = {defect:e} exceeds {ORTHOGONALITY_TOL:e}"
            )));
        }
        if permutation.len() != signs.len() {
            return Err(FrameError::InvalidTransform(format!(
                "permutation has length {} but signs has length {}",
                permutation.len(),
                signs.len()
            )));
        }
        let mut seen = vec![false; permutation.len()];
        for &p in &permutation {
            if p >= seen.len() || std::mem::replace(&mut seen[p], true) {
                return Err(FrameError::InvalidTransform(
                    "permutation is not a bijection".into(),
                ));
            }
        }
        if let Some(s) = signs.iter().find(|&&s| s != 1 && s != -1) {
            return Err(FrameError::InvalidTransform(format!("sign {s} is not +1 or -1")));
        }
        Ok(EquivalenceTransform {
            orthogonal,
            permutation,
            signs,
        })
    }

    pub fn identity(dim: usize, count: usize) -> Self {
        EquivalenceTransform {
            orthogonal: DMatrix::identity(dim, dim),
            permutation: (0..count).collect(),
            signs: vec![1; count],
        }
    }

    pub fn orthogonal(&self) -> &DMatrix<f64> {
        &self.orthogonal
    }

    pub fn permutation(&self) -> &[usize] {
        &self.permutation
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn dim(&self) -> usize {
        self.orthogonal.nrows()
    }

    pub fn count(&self) -> usize {
        self.permutation.len()
    }

    pub fn apply(&self, frame: &Frame) -> Result<Frame> {
        if frame.dim() != self.dim() {
            return Err(FrameError::DimensionMismatch {
                expected: self.dim(),
                found: frame.dim(),
            });
        }
        if frame.count() != self.count() {
            return Err(FrameError::CountMismatch {
                left: self.count(),
                right: frame.count(),
            });
        }
        let rotated = &self.orthogonal * frame.matrix();
        let n = self.dim();
        let mut out = DMatrix::zeros(n, self.count());
        for (i, (&src, &sign)) in self.permutation.iter().zip(&self.signs).enumerate() {
            let s = f64::from(sign);
            for r in 0..n {
                out[(r, i)] = s * rotated[(r, src)];
            }
        }
        Ok(Frame::from_matrix_unchecked(out))
    }

    /// The transform acting as `self` after `first`:
    /// `outer.compose(&first).apply(f) == outer.apply(&first.apply(f))`.
    pub fn compose(&self, first: &EquivalenceTransform) -> Result<EquivalenceTransform> {
        if self.dim() != first.dim() {
            return Err(FrameError::DimensionMismatch {
                expected: self.dim(),
                found: first.dim(),
            });
        }
        if self.count() != first.count() {
            return Err(FrameError::CountMismatch {
                left: self.count(),
                right: first.count(),
            });
        }
        let permutation = self.permutation.iter().map(|&p| first.permutation[p]).collect();
        let signs = self
            .permutation
            .iter()
            .zip(&self.signs)
            .map(|(&p, &s)| s * first.signs[p])
            .collect();
        Ok(EquivalenceTransform {
            orthogonal: &self.orthogonal * &first.orthogonal,
            permutation,
            signs,
        })
    }

    /// The transform undoing `self`.
    pub fn inverse(&self) -> EquivalenceTransform {
        let mut permutation = vec![0; self.count()];
        let mut signs = vec![1; self.count()];
        for (i, (&p, &s)) in self.permutation.iter().zip(&self.signs).enumerate() {
            permutation[p] = i;
            signs[p] = s;
        }
        EquivalenceTransform {
            orthogonal: self.orthogonal.transpose(),
            permutation,
            signs,
        }
    }
}

/// `max |U^T U - I|` entrywise.
pub fn orthogonality_defect(u: &DMatrix<f64>) -> f64 {
    let utu = u.tr_mul(u);
    utu.iter()
        .enumerate()
        .map(|(idx, v)| {
            let (r, c) = (idx % utu.nrows(), idx / utu.nrows());
            (v - if r == c { 1.0 } else { 0.0 }).abs()
        })
        .fold(0.0, f64::max)
}

fn gaussian_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> DMatrix<f64> {
    DMatrix::from_fn(rows, cols, |_, _| rng.sample(StandardNormal))
}

/// Haar-distributed orthogonal matrix: QR of a Gaussian matrix with the
/// columns of `Q` rescaled by the signs of `diag(R)`.
pub fn random_orthogonal_with<R: Rng>(rng: &mut R, dim: usize) -> DMatrix<f64> {
    let qr = gaussian_matrix(rng, dim, dim).qr();
    let r = qr.r();
    let mut q = qr.q();
    for (j, mut col) in q.column_iter_mut().enumerate() {
        if r[(j, j)] < 0.0 {
            col.neg_mut();
        }
    }
    q
}

pub fn random_orthogonal(dim: usize, seed: u64) -> DMatrix<f64> {
    random_orthogonal_with(&mut seeded_rng(seed), dim)
}

/// `count` independent uniform points on the unit sphere of `R^dim`.
pub fn random_unit_frame_with<R: Rng>(rng: &mut R, dim: usize, count: usize) -> Result<Frame> {
    if dim == 0 || count < dim {
        return Err(FrameError::InvalidParameter(format!(
            "need count >= dim >= 1, got dim={dim} count={count}"
        )));
    }
    loop {
        let mut m = gaussian_matrix(rng, dim, count);
        let mut degenerate = false;
        for mut col in m.column_iter_mut() {
            let norm = col.norm();
            if norm < 1e-300 {
                degenerate = true;
            }
            col /= norm;
        }
        if degenerate {
            continue;
        }
        match Frame::from_matrix(m, 1e-12) {
            Ok(frame) => return Ok(frame),
            Err(FrameError::NotSpanning { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
}

pub fn random_unit_frame(dim: usize, count: usize, seed: u64) -> Result<Frame> {
    random_unit_frame_with(&mut seeded_rng(seed), dim, count)
}

pub fn random_transform_with<R: Rng>(rng: &mut R, dim: usize, count: usize) -> EquivalenceTransform {
    let orthogonal = random_orthogonal_with(rng, dim);
    let mut permutation: Vec<usize> = (0..count).collect();
    permutation.shuffle(rng);
    let signs = (0..count).map(|_| if rng.random::<bool>() { 1 } else { -1 }).collect();
    EquivalenceTransform {
        orthogonal,
        permutation,
        signs,
    }
}

pub fn random_transform(dim: usize, count: usize, seed: u64) -> EquivalenceTransform {
    random_transform_with(&mut seeded_rng(seed), dim, count)
}
