use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense tensor at a point in the chart basis. Contravariant indices come
/// first, then covariant ones; components are row-major in that order.
/// A (1,1) tensor therefore stores `T^a_b` at `a * d + b`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointTensor {
    pub contravariant: usize,
    pub covariant: usize,
    pub dim: usize,
    pub components: Vec<f64>,
    pub point: Vec<f64>,
}

impl PointTensor {
    pub fn zeros(contravariant: usize, covariant: usize, dim: usize, point: &[f64]) -> Self {
        PointTensor {
            contravariant,
            covariant,
            dim,
            components: vec![0.0; dim.pow((contravariant + covariant) as u32)],
            point: point.to_vec(),
        }
    }

    pub fn new(contravariant: usize, covariant: usize, dim: usize, components: Vec<f64>, point: &[f64]) -> Result<Self> {
        let want = dim.pow((contravariant + covariant) as u32);
        if components.len() != want {
            return Err(Error::ShapeError(format!("expected {want} components, got {}", components.len())));
        }
        Ok(PointTensor { contravariant, covariant, dim, components, point: point.to_vec() })
    }

    pub fn operator(m: &DMatrix<f64>, point: &[f64]) -> Self {
        let d = m.nrows();
        let mut c = vec![0.0; d * d];
        for a in 0..d {
            for b in 0..d {
                c[a * d + b] = m[(a, b)];
            }
        }
        PointTensor { contravariant: 1, covariant: 1, dim: d, components: c, point: point.to_vec() }
    }

    pub fn bilinear(m: &DMatrix<f64>, point: &[f64]) -> Self {
        let mut t = Self::operator(m, point);
        t.contravariant = 0;
        t.covariant = 2;
        t
    }

    pub fn rank(&self) -> usize {
        self.contravariant + self.covariant
    }

    /// Matrix view of a rank-2 tensor.
    pub fn matrix(&self) -> Result<DMatrix<f64>> {
        if self.rank() != 2 {
            return Err(Error::ShapeError(format!("rank {} tensor is not a matrix", self.rank())));
        }
        Ok(DMatrix::from_row_slice(self.dim, self.dim, &self.components))
    }

    pub fn max_abs(&self) -> f64 {
        self.components.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    /// Largest componentwise deviation from (anti)symmetry of a rank-2 tensor.
    pub fn symmetry_residual(&self, skew: bool) -> Result<f64> {
        let m = self.matrix()?;
        let sign = if skew { -1.0 } else { 1.0 };
        let mut r: f64 = 0.0;
        for i in 0..self.dim {
            for j in 0..self.dim {
                r = r.max((m[(i, j)] - sign * m[(j, i)]).abs());
            }
        }
        Ok(r)
    }
}

/// Contraction of a (1,1) tensor with a vector.
pub fn apply(op: &PointTensor, v: &[f64]) -> Result<Vec<f64>> {
    if op.contravariant != 1 || op.covariant != 1 || v.len() != op.dim {
        return Err(Error::ShapeError(format!(
            "cannot apply a ({},{}) tensor of dimension {} to a vector of length {}",
            op.contravariant,
            op.covariant,
            op.dim,
            v.len()
        )));
    }
    let d = op.dim;
    Ok((0..d).map(|a| (0..d).map(|b| op.components[a * d + b] * v[b]).sum()).collect())
}

/// `g(u, v)` for an SPD metric; rejects metrics whose Cholesky factorization fails.
pub fn g_inner(g: &PointTensor, u: &[f64], v: &[f64]) -> Result<f64> {
    let m = g.matrix()?;
    if u.len() != g.dim || v.len() != g.dim {
        return Err(Error::ShapeError("vector length does not match the metric".into()));
    }
    if g.symmetry_residual(false)? > 1e-12 || m.clone().cholesky().is_none() {
        return Err(Error::DegenerateMetric { point: g.point.clone() });
    }
    Ok(inner(&m, u, v))
}

/// Unchecked `u^T g v`.
pub fn inner(g: &DMatrix<f64>, u: &[f64], v: &[f64]) -> f64 {
    let d = u.len();
    let mut s = 0.0;
    for i in 0..d {
        if u[i] == 0.0 {
            continue;
        }
        let mut row = 0.0;
        for j in 0..d {
            row += g[(i, j)] * v[j];
        }
        s += u[i] * row;
    }
    s
}

pub fn mat_vec(m: &DMatrix<f64>, v: &[f64]) -> Vec<f64> {
    let (r, c) = m.shape();
    (0..r).map(|i| (0..c).map(|j| m[(i, j)] * v[j]).sum()).collect()
}

pub fn norm_g(g: &DMatrix<f64>, v: &[f64]) -> f64 {
    inner(g, v, v).max(0.0).sqrt()
}

/// Largest singular-value count above `rel * sigma_max`.
pub fn numerical_rank(m: &DMatrix<f64>, rel: f64) -> usize {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0;
    }
    let sv = m.clone().svd(false, false).singular_values;
    let top = sv.iter().cloned().fold(0.0, f64::max);
    if top == 0.0 {
        return 0;
    }
    sv.iter().filter(|s| **s > rel * top).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn apply_identity_and_rotation() {
        let id = PointTensor::operator(&DMatrix::identity(3, 3), &[0.0; 3]);
        assert_eq!(apply(&id, &[1.0, 2.0, 3.0]).unwrap(), vec![1.0, 2.0, 3.0]);
        let j = PointTensor::operator(&DMatrix::from_row_slice(2, 2, &[0.0, -1.0, 1.0, 0.0]), &[0.0; 2]);
        let once = apply(&j, &[1.0, 0.0]).unwrap();
        assert_eq!(apply(&j, &once).unwrap(), vec![-1.0, 0.0]);
        assert!(matches!(apply(&j, &[1.0]), Err(Error::ShapeError(_))));
    }

    #[test]
    fn euclidean_inner_product() {
        let g = PointTensor::bilinear(&DMatrix::identity(2, 2), &[0.0; 2]);
        assert_eq!(g_inner(&g, &[1.0, 0.0], &[1.0, 0.0]).unwrap(), 1.0);
        assert_eq!(g_inner(&g, &[1.0, 0.0], &[0.0, 1.0]).unwrap(), 0.0);
        let bad = PointTensor::bilinear(&DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0]), &[0.0; 2]);
        assert!(matches!(g_inner(&bad, &[1.0, 0.0], &[1.0, 0.0]), Err(Error::DegenerateMetric { .. })));
    }
}
