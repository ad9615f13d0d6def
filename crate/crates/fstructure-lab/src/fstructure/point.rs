use nalgebra::DMatrix;

use crate::geometry::LocalGeometry;
use crate::multilinear::{inner, mat_vec, norm_g, KForm};

/// A structure evaluated at one point: values and covariant derivatives.
///
/// Operators are matrices `M[(a, b)] = T^a_b`. Derivative arrays use the
/// layout `[(a*d + b)*d + c] = (∇_c T)^a_b`.
#[derive(Debug, Clone)]
pub struct StructurePoint {
    pub point: Vec<f64>,
    pub d: usize,
    pub n: usize,
    pub s: usize,
    pub geo: LocalGeometry,
    pub f: DMatrix<f64>,
    pub df: Vec<f64>,
    pub q: DMatrix<f64>,
    pub dq: Vec<f64>,
    pub xi: Vec<Vec<f64>>,
    /// `h_i = ∇ξ_i`.
    pub h: Vec<DMatrix<f64>>,
    pub dh: Vec<Vec<f64>>,
    pub eta: Vec<Vec<f64>>,
    /// `dη^i(∂_a, ∂_b)`, from the partials of the one-form field.
    pub deta: Vec<DMatrix<f64>>,
}

/// `Σ_c x^c T[(a*d + b)*d + c]` as a matrix.
pub fn along(flat: &[f64], d: usize, x: &[f64]) -> DMatrix<f64> {
    DMatrix::from_fn(d, d, |a, b| {
        let base = (a * d + b) * d;
        (0..d).map(|c| flat[base + c] * x[c]).sum()
    })
}

pub fn add(u: &[f64], v: &[f64]) -> Vec<f64> {
    u.iter().zip(v).map(|(a, b)| a + b).collect()
}

pub fn sub(u: &[f64], v: &[f64]) -> Vec<f64> {
    u.iter().zip(v).map(|(a, b)| a - b).collect()
}

pub fn scale(c: f64, v: &[f64]) -> Vec<f64> {
    v.iter().map(|a| c * a).collect()
}

/// `u += c v`.
pub fn axpy(u: &mut [f64], c: f64, v: &[f64]) {
    u.iter_mut().zip(v).for_each(|(a, b)| *a += c * b);
}

pub fn max_abs(m: &DMatrix<f64>) -> f64 {
    m.iter().fold(0.0, |acc, x| acc.max(x.abs()))
}

impl StructurePoint {
    pub fn g(&self) -> &DMatrix<f64> {
        &self.geo.g
    }

    pub fn ip(&self, u: &[f64], v: &[f64]) -> f64 {
        inner(&self.geo.g, u, v)
    }

    pub fn norm(&self, v: &[f64]) -> f64 {
        norm_g(&self.geo.g, v)
    }

    pub fn mv(&self, m: &DMatrix<f64>, v: &[f64]) -> Vec<f64> {
        mat_vec(m, v)
    }

    pub fn identity(&self) -> DMatrix<f64> {
        DMatrix::identity(self.d, self.d)
    }

    /// `Q̃ = Q − Id`.
    pub fn q_tilde(&self) -> DMatrix<f64> {
        &self.q - self.identity()
    }

    /// `∇_X f`.
    pub fn nabla_f(&self, x: &[f64]) -> DMatrix<f64> {
        along(&self.df, self.d, x)
    }

    pub fn nabla_q(&self, x: &[f64]) -> DMatrix<f64> {
        along(&self.dq, self.d, x)
    }

    pub fn nabla_h(&self, i: usize, x: &[f64]) -> DMatrix<f64> {
        along(&self.dh[i], self.d, x)
    }

    pub fn eta_of(&self, i: usize, v: &[f64]) -> f64 {
        self.eta[i].iter().zip(v).map(|(a, b)| a * b).sum()
    }

    /// `Σ ξ_i ⊗ η^i`, the projector onto the Reeb distribution.
    pub fn p_ker(&self) -> DMatrix<f64> {
        let d = self.d;
        let mut p = DMatrix::zeros(d, d);
        for (x, e) in self.xi.iter().zip(&self.eta) {
            for a in 0..d {
                for b in 0..d {
                    p[(a, b)] += x[a] * e[b];
                }
            }
        }
        p
    }

    /// `Id − Σ ξ_i ⊗ η^i`.
    pub fn p_d(&self) -> DMatrix<f64> {
        self.identity() - self.p_ker()
    }

    pub fn project_d(&self, v: &[f64]) -> Vec<f64> {
        let mut out = v.to_vec();
        for i in 0..self.s {
            axpy(&mut out, -self.eta_of(i, v), &self.xi[i]);
        }
        out
    }

    /// `R(X,Y)Z`.
    pub fn r(&self, x: &[f64], y: &[f64], z: &[f64]) -> Vec<f64> {
        self.geo.r_op(x, y, z)
    }

    /// `g(R(X,Y)Z, V)`.
    pub fn rm(&self, x: &[f64], y: &[f64], z: &[f64], v: &[f64]) -> f64 {
        self.geo.rm(x, y, z, v)
    }

    /// The curvature defect
    /// `g(R(X,Y)Q̃Z, V) + g(R(X,Y)Z, Q̃V) − g(R(Q̃X,Y)Z, V) − g(R(X,Q̃Y)Z, V)`.
    pub fn delta(&self, x: &[f64], y: &[f64], z: &[f64], v: &[f64]) -> f64 {
        let qt = self.q_tilde();
        let qx = self.mv(&qt, x);
        let qy = self.mv(&qt, y);
        let qz = self.mv(&qt, z);
        let qv = self.mv(&qt, v);
        self.rm(x, y, &qz, v) + self.rm(x, y, z, &qv) - self.rm(&qx, y, z, v) - self.rm(x, &qy, z, v)
    }

    /// Lower the first index of an operator: `g(M e_a, e_b)` at `(a, b)`.
    pub fn bilinear(&self, m: &DMatrix<f64>) -> DMatrix<f64> {
        (self.g() * m).transpose()
    }

    /// 2-form `(X, Y) ↦ g(M X, Y)` for a g-skew `M`.
    pub fn two_form(&self, m: &DMatrix<f64>) -> KForm {
        KForm::from_skew_matrix(&self.bilinear(m), &self.point)
    }

    pub fn eta_form(&self, i: usize) -> KForm {
        KForm::from_covector(&self.eta[i], &self.point)
    }

    pub fn deta_form(&self, i: usize) -> KForm {
        KForm::from_skew_matrix(&self.deta[i], &self.point)
    }

    /// Jacobi-type operator `X ↦ R(X, ζ)ζ`.
    pub fn jacobi(&self, zeta: &[f64]) -> DMatrix<f64> {
        let d = self.d;
        let mut m = DMatrix::zeros(d, d);
        for b in 0..d {
            let mut e = vec![0.0; d];
            e[b] = 1.0;
            let col = self.r(&e, zeta, zeta);
            for a in 0..d {
                m[(a, b)] = col[a];
            }
        }
        m
    }
}
