//! Pointwise linear and exterior algebra in the chart basis.

mod eigen;
mod kform;
mod lefschetz;
mod tensor;

pub use eigen::{self_adjoint_residual, sym_eigen, Cluster, SpectrumCluster, DEFAULT_CLUSTER_TOL};
pub use kform::{binomial, index_of, multi_indices, sort_with_sign, wedge, KForm};
pub use lefschetz::{lefschetz_matrix, lefschetz_rank, RANK_THRESHOLD};
pub use tensor::{apply, g_inner, inner, mat_vec, norm_g, numerical_rank, PointTensor};
