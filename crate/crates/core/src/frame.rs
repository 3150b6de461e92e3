//! Unit-norm frames and the quantities that are invariant under equivalence.
//!
//! A frame of `R^n` here is a finite list of `k` unit vectors that span the
//! space. The list is stored as an `n x k` column-major matrix so that the
//! Gram matrix is `F^T F` and the frame operator is `F F^T`.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{FrameError, Result};

/// A validated unit-norm spanning frame. Immutable once built.
#[derive(Debug, Clone, PartialEq)]
pub struct Frame {
    vectors: DMatrix<f64>,
}

impl Frame {
    /// Validates `columns` as a unit-norm frame of `R^dim`.
    ///
    /// Vectors are never renormalized: a column whose norm differs from 1 by
    /// more than `tol` is rejected.
    pub fn new<C: AsRef<[f64]>>(dim: usize, columns: &[C], tol: f64) -> Result<Self> {
        if dim == 0 {
            return Err(FrameError::ZeroDimension);
        }
        if columns.is_empty() {
            return Err(FrameError::Empty);
        }
        let mut data = Vec::with_capacity(dim * columns.len());
        for column in columns {
            let column = column.as_ref();
            if column.len() != dim {
                return Err(FrameError::DimensionMismatch {
                    expected: dim,
                    found: column.len(),
                });
            }
            data.extend_from_slice(column);
        }
        Self::from_matrix(DMatrix::from_vec(dim, columns.len(), data), tol)
    }

    /// Validates an `n x k` matrix whose columns are the frame vectors.
    pub fn from_matrix(vectors: DMatrix<f64>, tol: f64) -> Result<Self> {
        let (dim, count) = vectors.shape();
        if dim == 0 {
            return Err(FrameError::ZeroDimension);
        }
        if count == 0 {
            return Err(FrameError::Empty);
        }
        for (i, column) in vectors.column_iter().enumerate() {
            let norm = column.norm();
            if !norm.is_finite() || (norm - 1.0).abs() > tol {
                return Err(FrameError::NotUnitNorm {
                    column: i + 1,
                    norm,
                });
            }
        }
        let rank = numerical_rank(&vectors);
        if rank < dim {
            return Err(FrameError::NotSpanning { rank, dim });
        }
        Ok(Frame { vectors })
    }

    /// Builds a frame of `R^2` from polar angles in radians.
    pub fn from_angles(angles: &[f64]) -> Result<Self> {
        let columns: Vec<[f64; 2]> = angles.iter().map(|t| [t.cos(), t.sin()]).collect();
        Frame::new(2, &columns, crate::DEFAULT_TOL)
    }

    /// Wraps a matrix that is known to be a frame, e.g. the image of a valid
    /// frame under an orthogonal transform.
    pub(crate) fn from_matrix_unchecked(vectors: DMatrix<f64>) -> Self {
        debug_assert!(vectors.nrows() > 0 && vectors.ncols() > 0);
        Frame { vectors }
    }

    pub fn dim(&self) -> usize {
        self.vectors.nrows()
    }

    pub fn count(&self) -> usize {
        self.vectors.ncols()
    }

    /// The `i`-th frame vector (0-based).
    pub fn column(&self, i: usize) -> &[f64] {
        let n = self.dim();
        &self.vectors.as_slice()[i * n..(i + 1) * n]
    }

    pub fn columns(&self) -> impl Iterator<Item = &[f64]> + '_ {
        self.vectors.as_slice().chunks_exact(self.dim())
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.vectors
    }

    pub fn to_columns(&self) -> Vec<Vec<f64>> {
        self.columns().map(<[f64]>::to_vec).collect()
    }

    /// Largest absolute entrywise difference between two frames of equal shape.
    pub fn max_abs_diff(&self, other: &Frame) -> Result<f64> {
        check_same_shape(self, other)?;
        Ok(self
            .vectors
            .iter()
            .zip(other.vectors.iter())
            .fold(0.0, |m, (a, b)| f64::max(m, (a - b).abs())))
    }
}

pub(crate) fn check_same_shape(f: &Frame, g: &Frame) -> Result<()> {
    if f.dim() != g.dim() {
        return Err(FrameError::DimensionMismatch {
            expected: f.dim(),
            found: g.dim(),
        });
    }
    if f.count() != g.count() {
        return Err(FrameError::CountMismatch {
            left: f.count(),
            right: g.count(),
        });
    }
    Ok(())
}

/// Rank from singular values with the cutoff `n * eps * sigma_max`.
fn numerical_rank(m: &DMatrix<f64>) -> usize {
    let sv = m.singular_values();
    let sigma_max = sv.iter().cloned().fold(0.0, f64::max);
    let cutoff = m.nrows() as f64 * f64::EPSILON * sigma_max;
    sv.iter().filter(|&&s| s > cutoff).count()
}

/// Pairwise inner products `<f_i, f_j>`, a symmetric `k x k` matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct GramMatrix {
    entries: DMatrix<f64>,
}

impl GramMatrix {
    pub fn size(&self) -> usize {
        self.entries.nrows()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[(i, j)]
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.entries
    }

    /// Entries strictly above the diagonal, column by column: `(0,1)`,
    /// `(0,2)`, `(1,2)`, `(0,3)`, ...
    pub fn upper_off_diagonal(&self) -> impl Iterator<Item = f64> + '_ {
        let k = self.size();
        let data = self.entries.as_slice();
        (1..k).flat_map(move |j| data[j * k..j * k + j].iter().copied())
    }

    pub fn max_abs_diff(&self, other: &GramMatrix) -> f64 {
        self.entries
            .iter()
            .zip(other.entries.iter())
            .fold(0.0, |m, (a, b)| f64::max(m, (a - b).abs()))
    }
}

pub fn gram(frame: &Frame) -> GramMatrix {
    let f = frame.matrix();
    // the explicit transpose routes through the blocked gemm kernel, which
    // is several times faster than `tr_mul` once n grows past a few dozen
    GramMatrix {
        entries: f.transpose() * f,
    }
}

/// Optimal constants `A <= B` in `A|x|^2 <= sum |<x, f_i>|^2 <= B|x|^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameBounds {
    pub lower: f64,
    pub upper: f64,
}

impl FrameBounds {
    pub fn is_parseval(&self, tol: f64) -> bool {
        (self.lower - 1.0).abs() <= tol && (self.upper - 1.0).abs() <= tol
    }
}

/// The frame operator `F F^T`.
pub fn frame_operator(frame: &Frame) -> DMatrix<f64> {
    let f = frame.matrix();
    f * f.transpose()
}

/// Extreme eigenvalues of the `n x n` frame operator.
pub fn frame_bounds(frame: &Frame) -> FrameBounds {
    let eig = SymmetricEigen::new(frame_operator(frame));
    let (lower, upper) = eig
        .eigenvalues
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
            (lo.min(v), hi.max(v))
        });
    FrameBounds { lower, upper }
}

pub fn is_tight(frame: &Frame, tol: f64) -> bool {
    let b = frame_bounds(frame);
    b.upper - b.lower <= tol
}

/// `|x|^p` evaluated as `exp(p ln|x|)`, with `0^p = 0`.
pub(crate) fn abs_pow(x: f64, p: f64) -> f64 {
    let a = x.abs();
    if a == 0.0 {
        0.0
    } else {
        (p * a.ln()).exp()
    }
}

/// The p-frame potential `sum_{i<j} |<f_i, f_j>|^p`.
///
/// # Panics
///
/// If `p` is not a positive finite number.
pub fn frame_potential(frame: &Frame, p: f64) -> f64 {
    assert!(p > 0.0 && p.is_finite(), "frame potential needs p > 0");
    gram(frame).upper_off_diagonal().map(|g| abs_pow(g, p)).sum()
}

/// Power sums and elementary symmetric values of a triple of reals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymmetricFunctions3 {
    pub p1: f64,
    pub p2: f64,
    pub p3: f64,
    pub e2: f64,
    pub e3: f64,
}

impl SymmetricFunctions3 {
    pub fn of_triple(x: [f64; 3]) -> Self {
        let p = |k: i32| x.iter().map(|v| v.powi(k)).sum::<f64>();
        power_sums_to_elementary(p(1), p(2), p(3))
    }

    /// The monic cubic `t^3 - p1 t^2 + e2 t - e3` whose roots are the triple.
    pub fn cubic(&self, t: f64) -> f64 {
        ((t - self.p1) * t + self.e2) * t - self.e3
    }
}

/// Newton's identities for three variables: recovers `e2` and `e3` from
/// the first three power sums.
pub fn power_sums_to_elementary(p1: f64, p2: f64, p3: f64) -> SymmetricFunctions3 {
    let e2 = 0.5 * (p1 * p1 - p2);
    let e3 = p3 / 3.0 - 0.5 * p1 * p2 + p1 * p1 * p1 / 6.0;
    SymmetricFunctions3 { p1, p2, p3, e2, e3 }
}
