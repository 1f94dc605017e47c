//! Q/Z-valued linking forms on finite abelian groups.

use crate::exact::{AbelianGroupInvariants, RatMatrix};

/// Finite abelian group with a nonsingular symmetric Q/Z-valued pairing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteLinkingForm {
    pub group: AbelianGroupInvariants,
    pub pairing: RatMatrix,
}
