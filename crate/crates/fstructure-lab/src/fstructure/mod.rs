//! Weak metric f-structures as field objects and their structural residuals.

mod axioms;
mod conditions;
mod point;
mod structure;

pub use axioms::{pointwise_axioms, validate_axioms, ResidualRecord, AXIOM_TOL};
pub use conditions::{
    curvature_invariance_residual, delta_tensor, h_tensor, hh_self_adjoint, nearly_c_residual, q_parallel_residual, reeb_conditions,
};
pub use point::{add, along, axpy, max_abs, scale, sub, StructurePoint};
pub use structure::WeakMetricFStructureField;
