//! The weak f-K-contact structure `(−h_i, R(·, ξ_i)ξ_i)` built from a Reeb field.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::fstructure::{max_abs, pointwise_axioms, ResidualRecord, StructurePoint};
use crate::multilinear::{numerical_rank, sym_eigen};

/// Smallest eigenvalue of `hat_Q` accepted as positive.
pub const PD_MARGIN: f64 = 1e-8;

#[derive(Debug, Clone)]
pub struct HatStructure {
    pub hat_f: DMatrix<f64>,
    pub hat_q: DMatrix<f64>,
    /// Axiom residuals of `(hat_f, hat_Q, ξ, η, g)`.
    pub axioms: ResidualRecord,
    /// `max |(hat_Q − Id) P_D|`.
    pub hat_q_minus_id_on_d: f64,
    /// `max |hat_f − f|`, recorded without interpretation.
    pub hat_f_minus_f: f64,
}

/// Nullity of `dη^i` at a point, with the relative rank threshold `rank_tol`.
pub fn deta_nullity(sp: &StructurePoint, i: usize, rank_tol: f64) -> usize {
    sp.d - numerical_rank(&sp.deta[i], rank_tol)
}

/// `hat_f = −h_i`, `hat_Q = R(·, ξ_i)ξ_i` on `𝒟` and `Id` on `ker f`.
///
/// Fails with `HypothesisFailed` when `ker dη^i` is not spanned by the Reeb
/// fields or `hat_Q` is not positive definite.
pub fn induced_fk_contact(sp: &StructurePoint, i: usize, rank_tol: f64) -> Result<HatStructure> {
    let nullity = deta_nullity(sp, i, rank_tol);
    if nullity != sp.s {
        return Err(Error::HypothesisFailed(format!("dim ker d eta^{} = {nullity} at {:?}, expected s = {}", i + 1, sp.point, sp.s)));
    }
    let hat_f = -&sp.h[i];
    let hat_q = sp.jacobi(&sp.xi[i]) * sp.p_d() + sp.p_ker();
    let sym = (sp.g() * &hat_q - (sp.g() * &hat_q).transpose()).abs().max();
    let spec = sym_eigen(&hat_q, sp.g(), 1e-9)?;
    let min = spec.clusters.iter().map(|c| c.eigenvalue).fold(f64::INFINITY, f64::min);
    if !(min > PD_MARGIN) {
        return Err(Error::HypothesisFailed(format!(
            "Jacobi operator of xi_{} not positive definite at {:?}: smallest eigenvalue {min:e} (self-adjointness residual {sym:e})",
            i + 1,
            sp.point
        )));
    }
    let axioms = pointwise_axioms(sp.g(), &hat_f, &hat_q, &sp.xi, &sp.eta, sp.n);
    Ok(HatStructure {
        hat_q_minus_id_on_d: max_abs(&((&hat_q - sp.identity()) * sp.p_d())),
        hat_f_minus_f: max_abs(&(&hat_f - &sp.f)),
        hat_f,
        hat_q,
        axioms,
    })
}

/// `|K(ξ_i, X) − ‖h_i X‖²|` for a unit `X ∈ 𝒟`.
pub fn xi_sectional_residual(sp: &StructurePoint, i: usize, x: &[f64]) -> f64 {
    let k = sp.rm(x, &sp.xi[i], &sp.xi[i], x);
    let hx = sp.mv(&sp.h[i], x);
    (k - sp.ip(&hx, &hx)).abs()
}
