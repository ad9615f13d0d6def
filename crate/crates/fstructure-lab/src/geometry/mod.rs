//! Chart-level Riemannian geometry.

mod chart;
mod connection;
mod fields;
mod ops;
pub mod oracle;

pub use chart::{shift_coords, ChartManifold, DomainBlock, MetricJet, SamplingDomain};
pub use connection::{
    christoffel, christoffel_from_jet, riemann, riemann_from_gamma, ConnectionData, CurvatureData, LocalGeometry, CURVATURE_CONVENTION,
};
pub use fields::{connection_terms, contract_last, nabla, nabla2, TensorField, TensorJet};
pub use ops::{
    covariant_derivative, exterior_derivative, exterior_from_covariant, killing_curvature_residual, killing_residual,
    second_covariant_derivative, FormField, EXTERIOR_CROSS_TOL, KILLING_TOL,
};
