use crate::error::Result;
use crate::fstructure::StructurePoint;
use crate::multilinear::lefschetz_rank;

use super::fkcontact::deta_nullity;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LefschetzResult {
    pub rank: usize,
    pub full: bool,
    /// Injectivity is expected iff `n ≥ 3` and `ker dη^i` is the Reeb span.
    pub expected_full: bool,
}

/// Rank of `β ↦ dη^i ∧ β` at a point.
pub fn lefschetz_check(sp: &StructurePoint, i: usize, rank_tol: f64) -> Result<LefschetzResult> {
    let (rank, full) = lefschetz_rank(&sp.deta_form(i), sp.d)?;
    let expected_full = sp.n >= 3 && deta_nullity(sp, i, rank_tol) == sp.s;
    Ok(LefschetzResult { rank, full, expected_full })
}
