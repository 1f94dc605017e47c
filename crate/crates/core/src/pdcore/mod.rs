//! Abstract primary decomposition of monoid invariants.

/// Finitely generated monoid instance with UFD-valued invariant.
#[derive(Debug, Clone)]
pub struct PDInstance {}
