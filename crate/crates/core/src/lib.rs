//! Deciding whether two unit-norm frames of `R^n` are equivalent, i.e.
//! differ only by an orthogonal transform, a relabeling of the vectors and
//! per-vector sign changes.
//!
//! Three deciders are provided:
//!
//! * [`angle_equivalent`]: exact and `O(k log k)` for frames of `R^2`.
//! * [`ip_equivalent`]: compares sorted absolute Gram entries in
//!   `O(max(log k, n) k^2)`. A mismatch always proves non-equivalence; a
//!   match is proven sufficient only for three vectors in `R^2`.
//! * [`oracle_equivalent`]: exhaustive search over `k! 2^k` relabelings and
//!   signs, returning an explicit witness transform.
//!
//! ```
//! use frame_equiv::{ip_equivalent, random_transform, random_unit_frame, Decision};
//!
//! let f = random_unit_frame(2, 3, 1).unwrap();
//! let g = random_transform(2, 3, 2).apply(&f).unwrap();
//! let verdict = ip_equivalent(&f, &g, 1e-9).unwrap();
//! assert_eq!(verdict.decision, Decision::Equivalent);
//! assert_eq!(verdict.certificate.tag(), "theorem-S(2,3)");
//! ```

pub mod angle;
pub mod corpus;
pub mod error;
pub mod frame;
pub mod innerprod;
pub mod oracle;
pub mod transforms;
pub mod verdict;

/// Default absolute tolerance for unit norms, Gram entries and angles.
pub const DEFAULT_TOL: f64 = 1e-9;

pub use angle::{
    angle_equivalent, angle_gaps, minimal_angle_form, minimal_angle_form_with_tol,
    upper_half_normalize, AngleGaps, MinimalAngleForm, ANGLE_TOL,
};
pub use error::{FrameError, Result};
pub use frame::{
    frame_bounds, frame_operator, frame_potential, gram, is_tight, power_sums_to_elementary, Frame,
    FrameBounds, GramMatrix, SymmetricFunctions3,
};
pub use innerprod::{abs_gram_multiset, ip_equivalent, potentials_equal, AbsGramMultiset};
pub use oracle::{
    gram_equal, oracle_equivalent, oracle_equivalent_unpruned, oracle_verdict, OracleConfig,
    OracleOutcome,
};
pub use transforms::{
    random_orthogonal, random_transform, random_unit_frame, seeded_rng, EquivalenceTransform,
};
pub use verdict::{Certificate, Decision, Verdict};
