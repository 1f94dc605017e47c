//! Knot invariants computed from Seifert matrices.

use crate::exact::IntMatrix;

/// Square integer matrix of even size with det(S - S^T) = +-1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeifertMatrix {
    pub entries: IntMatrix,
}
