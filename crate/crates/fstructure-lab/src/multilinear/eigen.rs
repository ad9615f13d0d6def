use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_CLUSTER_TOL: f64 = 1e-6;
const SELF_ADJOINT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cluster {
    /// Mean of the member eigenvalues.
    pub eigenvalue: f64,
    pub multiplicity: usize,
    /// g-orthonormal eigenvectors in chart components.
    pub eigenbasis: Vec<Vec<f64>>,
    /// Raw member eigenvalues, descending.
    pub members: Vec<f64>,
}

/// Eigenvalues of a g-self-adjoint operator grouped into clusters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumCluster {
    pub clusters: Vec<Cluster>,
    pub tolerance: f64,
    /// Smallest distance between neighbouring eigenvalues that landed in
    /// different clusters (infinite for a single cluster).
    pub min_gap: f64,
}

impl SpectrumCluster {
    /// `(eigenvalue, multiplicity)` pairs, descending.
    pub fn shape(&self) -> Vec<(f64, usize)> {
        self.clusters.iter().map(|c| (c.eigenvalue, c.multiplicity)).collect()
    }

    /// g-orthogonal projector onto a cluster's eigenspace: `P = Σ e e^T g`.
    pub fn projector(&self, idx: usize, g: &DMatrix<f64>) -> DMatrix<f64> {
        let d = g.nrows();
        let mut p = DMatrix::zeros(d, d);
        for e in &self.clusters[idx].eigenbasis {
            let v = nalgebra::DVector::from_column_slice(e);
            let gv = g * &v;
            p += &v * gv.transpose();
        }
        p
    }
}

/// Residual of g-self-adjointness, `max |(gA)_{ij} − (gA)_{ji}|`.
pub fn self_adjoint_residual(a: &DMatrix<f64>, g: &DMatrix<f64>) -> f64 {
    let ga = g * a;
    let mut r: f64 = 0.0;
    for i in 0..ga.nrows() {
        for j in 0..ga.ncols() {
            r = r.max((ga[(i, j)] - ga[(j, i)]).abs());
        }
    }
    r
}

/// Cluster the spectrum of `a`, self-adjoint with respect to `g`.
///
/// `g = L L^T`; the operator `B = L^T A L^{-T}` is symmetric and its
/// orthonormal eigenvectors `y` map to g-orthonormal eigenvectors
/// `x = L^{-T} y`. Eigenvalues are sorted in descending order and split
/// wherever two neighbours differ by more than `cluster_tol`. Inside a
/// cluster each vector is sign-normalized (first entry above 1e-12 in
/// magnitude made positive) and the vectors are sorted lexicographically
/// by components, largest first.
pub fn sym_eigen(a: &DMatrix<f64>, g: &DMatrix<f64>, cluster_tol: f64) -> Result<SpectrumCluster> {
    let d = a.nrows();
    if a.ncols() != d || g.shape() != (d, d) {
        return Err(Error::ShapeError("operator and metric must be square of equal size".into()));
    }
    let residual = self_adjoint_residual(a, g);
    if residual > SELF_ADJOINT_TOL {
        return Err(Error::NotSelfAdjoint { residual });
    }
    let chol = g.clone().cholesky().ok_or_else(|| Error::DegenerateMetric { point: Vec::new() })?;
    let l = chol.l();
    let l_inv_t = l.clone().try_inverse().ok_or_else(|| Error::DegenerateMetric { point: Vec::new() })?.transpose();
    let mut b = l.transpose() * a * &l_inv_t;
    b = (&b + b.transpose()) * 0.5;
    let eig = b.symmetric_eigen();

    let mut pairs: Vec<(f64, Vec<f64>)> = (0..d)
        .map(|k| {
            let y = eig.eigenvectors.column(k).into_owned();
            let x = &l_inv_t * y;
            (eig.eigenvalues[k], x.iter().cloned().collect())
        })
        .collect();
    pairs.sort_by(|p, q| q.0.total_cmp(&p.0));

    let mut clusters: Vec<Cluster> = Vec::new();
    let mut min_gap = f64::INFINITY;
    for (lambda, v) in pairs {
        let v = sign_normalize(v);
        match clusters.last_mut() {
            Some(c) if (c.members.last().unwrap() - lambda).abs() <= cluster_tol => {
                c.members.push(lambda);
                c.eigenbasis.push(v);
            }
            last => {
                if let Some(c) = last {
                    min_gap = min_gap.min((c.members.last().unwrap() - lambda).abs());
                }
                clusters.push(Cluster { eigenvalue: lambda, multiplicity: 0, eigenbasis: vec![v], members: vec![lambda] });
            }
        }
    }
    for c in clusters.iter_mut() {
        c.multiplicity = c.members.len();
        c.eigenvalue = c.members.iter().sum::<f64>() / c.multiplicity as f64;
        c.eigenbasis.sort_by(|u, w| {
            for (a, b) in u.iter().zip(w) {
                match b.total_cmp(a) {
                    std::cmp::Ordering::Equal => continue,
                    o => return o,
                }
            }
            std::cmp::Ordering::Equal
        });
    }
    Ok(SpectrumCluster { clusters, tolerance: cluster_tol, min_gap })
}

fn sign_normalize(mut v: Vec<f64>) -> Vec<f64> {
    if let Some(first) = v.iter().find(|x| x.abs() > 1e-12) {
        if *first < 0.0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_operator_is_one_cluster() {
        let s = sym_eigen(&DMatrix::zeros(5, 5), &DMatrix::identity(5, 5), DEFAULT_CLUSTER_TOL).unwrap();
        assert_eq!(s.shape(), vec![(0.0, 5)]);
    }

    #[test]
    fn diagonal_clusters() {
        let a = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![-4.0, -4.0, -1.0, -1.0, 0.0]));
        let s = sym_eigen(&a, &DMatrix::identity(5, 5), 1e-6).unwrap();
        let mults: Vec<usize> = s.clusters.iter().map(|c| c.multiplicity).collect();
        assert_eq!(mults, vec![1, 2, 2]);
        assert_eq!(s.clusters[0].eigenvalue, 0.0);
        assert_eq!(s.clusters[2].eigenvalue, -4.0);
    }

    #[test]
    fn rejects_non_self_adjoint() {
        let a = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 0.0, 0.0]);
        assert!(matches!(sym_eigen(&a, &DMatrix::identity(2, 2), 1e-6), Err(Error::NotSelfAdjoint { .. })));
    }

    #[test]
    fn weighted_metric_eigenvectors_are_g_orthonormal() {
        let g = DMatrix::from_row_slice(2, 2, &[2.0, 0.5, 0.5, 1.0]);
        // A = g^{-1} S with S symmetric is g-self-adjoint
        let s = DMatrix::from_row_slice(2, 2, &[1.0, 0.3, 0.3, -2.0]);
        let a = g.clone().try_inverse().unwrap() * s;
        let spec = sym_eigen(&a, &g, 1e-6).unwrap();
        let vs: Vec<&Vec<f64>> = spec.clusters.iter().flat_map(|c| c.eigenbasis.iter()).collect();
        for (i, u) in vs.iter().enumerate() {
            for (j, w) in vs.iter().enumerate() {
                let ip = crate::multilinear::inner(&g, u, w);
                assert!((ip - if i == j { 1.0 } else { 0.0 }).abs() < 1e-12);
            }
        }
    }
}
