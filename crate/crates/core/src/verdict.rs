use std::fmt;

use crate::transforms::EquivalenceTransform;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Decision {
    Equivalent,
    NotEquivalent,
    /// The inner-product invariants match but no proven-sufficient test
    /// covers this `(n, k)`.
    LikelyEquivalent,
}

impl Decision {
    pub fn as_str(self) -> &'static str {
        match self {
            Decision::Equivalent => "equivalent",
            Decision::NotEquivalent => "not-equivalent",
            Decision::LikelyEquivalent => "likely-equivalent",
        }
    }
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Names the result that justifies a [`Verdict`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Certificate {
    /// Minimal angle forms compared in `R^2`.
    AngleCanonical,
    /// Absolute Gram multisets match for frames of 3 vectors in `R^2`.
    TheoremS23,
    /// Absolute Gram multisets match; sufficiency is conjectural.
    Conjecture1,
    /// Absolute Gram multisets differ, which rules out equivalence.
    AbsGramMismatch,
    /// Exhaustive search found a transform.
    OracleWitness,
    /// Exhaustive search found no permutation and signs matching the Gram matrices.
    OracleExhaustive,
    /// Every frame of `R^1` is `(+-1, ..., +-1)`.
    TrivialLine,
}

impl Certificate {
    pub fn tag(self) -> &'static str {
        match self {
            Certificate::AngleCanonical => "angle-canonical",
            Certificate::TheoremS23 => "theorem-S(2,3)",
            Certificate::Conjecture1 => "conjecture-1",
            Certificate::AbsGramMismatch => "abs-gram-mismatch",
            Certificate::OracleWitness => "oracle-witness",
            Certificate::OracleExhaustive => "oracle-exhaustive",
            Certificate::TrivialLine => "trivial-R1",
        }
    }

    /// Whether an `Equivalent` decision backed by this certificate is proven.
    pub fn is_proof_of_equivalence(self) -> bool {
        matches!(
            self,
            Certificate::AngleCanonical
                | Certificate::TheoremS23
                | Certificate::OracleWitness
                | Certificate::TrivialLine
        )
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub decision: Decision,
    pub certificate: Certificate,
    /// Set when the deciding method produces an explicit transform.
    pub witness: Option<EquivalenceTransform>,
    pub note: Option<String>,
}

impl Verdict {
    pub fn new(decision: Decision, certificate: Certificate) -> Self {
        Verdict {
            decision,
            certificate,
            witness: None,
            note: None,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn with_witness(mut self, witness: EquivalenceTransform) -> Self {
        self.witness = Some(witness);
        self
    }

    pub fn is_equivalent(&self) -> bool {
        self.decision == Decision::Equivalent
    }
}
