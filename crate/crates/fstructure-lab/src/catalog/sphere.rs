//! Stereographic charts of round spheres and pullbacks of ambient tensors.
//!
//! `Sᵐ ⊂ ℝ^{m+1}` is projected from the pole `e_P`, `P = m` (0-based). Chart
//! coordinate `a` sits over ambient axis `a`. With `σ = 2/(1 + |u|²)` and
//! `w = (u, −1)` the embedding is `x = σw + e_P`, its differential is
//! `∂_a x = σE_a − σ² u_a w`, and the induced metric is `σ² δ`.

use super::octonion::phi;
use crate::error::Result;
use crate::geometry::{ChartManifold, SamplingDomain, TensorField};
use crate::jets::{sum, ScalarField};

/// Shared expression pieces of one stereographic chart.
#[derive(Debug, Clone)]
pub struct Stereographic {
    pub m: usize,
    pub sigma: ScalarField,
    pub sigma_inv: ScalarField,
    u: Vec<ScalarField>,
}

impl Stereographic {
    pub fn new(m: usize) -> Self {
        let u: Vec<ScalarField> = (0..m).map(ScalarField::coord).collect();
        let r2 = sum(u.iter().map(|c| c * c));
        let one_plus = 1.0 + &r2;
        Stereographic { m, sigma: 2.0 / &one_plus, sigma_inv: 0.5 * &one_plus, u }
    }

    pub fn pole(&self) -> usize {
        self.m
    }

    pub fn chart(&self, name: &str, n: usize, s: usize, radius: f64) -> Result<ChartManifold> {
        let s2 = &self.sigma * &self.sigma;
        let mut upper = Vec::with_capacity(self.m * (self.m + 1) / 2);
        for i in 0..self.m {
            for j in i..self.m {
                upper.push(if i == j { s2.clone() } else { ScalarField::zero() });
            }
        }
        ChartManifold::new(name, n, s, upper, SamplingDomain::ball(self.m, radius))
    }

    /// Ambient position `x(u)`.
    pub fn embedding(&self) -> Vec<ScalarField> {
        let mut x: Vec<ScalarField> = self.u.iter().map(|c| &self.sigma * c).collect();
        x.push(1.0 - &self.sigma);
        x
    }

    /// Pullback of the operator `v ↦ x × v` (ambient dimension 7) or of
    /// its tangential part on a sphere inside a coordinate subspace of ℝ⁷.
    ///
    /// `T^a_b = σ Σ_k u_k φ_{akb} + (1 − σ) φ_{aPb} − σ Σ_k u_k (u_b φ_{aPk} + u_a φ_{kPb})`.
    pub fn cross_operator(&self) -> Result<TensorField> {
        let m = self.m;
        let p = self.pole();
        let mut rows = Vec::with_capacity(m);
        for a in 0..m {
            let mut row = Vec::with_capacity(m);
            for b in 0..m {
                let lin = sum((0..m).filter(|&k| phi(a, k, b) != 0.0).map(|k| phi(a, k, b) * &self.u[k]));
                let quad = sum((0..m).map(|k| {
                    let c = &(phi(a, p, k) * &self.u[b]) + &(phi(k, p, b) * &self.u[a]);
                    &self.u[k] * &c
                }));
                let pab = phi(a, p, b);
                let inner = &(&lin - &quad) - pab;
                row.push(&(&self.sigma * &inner) + pab);
            }
            rows.push(row);
        }
        TensorField::operator(rows)
    }

    /// Pullback of the tangent field `x ↦ A x` for skew `A` of size `m + 1`:
    /// `V^a = Σ_k A_{ak} u_k − A_{aP} + σ⁻¹ A_{aP} − u_a Σ_k u_k A_{kP}`.
    pub fn linear_field(&self, a_mat: &[Vec<f64>]) -> TensorField {
        let m = self.m;
        let p = self.pole();
        let tail = sum((0..m).filter(|&k| a_mat[k][p] != 0.0).map(|k| a_mat[k][p] * &self.u[k]));
        let comps = (0..m)
            .map(|a| {
                let lin = sum((0..m).filter(|&k| a_mat[a][k] != 0.0).map(|k| a_mat[a][k] * &self.u[k]));
                let pole = &(a_mat[a][p] * &self.sigma_inv) - a_mat[a][p];
                &(&lin + &pole) - &(&self.u[a] * &tail)
            })
            .collect();
        TensorField::vector(comps)
    }

    /// `g(V, ·)` for a pulled-back vector field, `η_a = σ² V^a`.
    pub fn lower(&self, v: &TensorField) -> TensorField {
        let s2 = &self.sigma * &self.sigma;
        TensorField::covector(v.components.iter().map(|c| &s2 * c).collect())
    }
}

/// `A_{ij} = φ_{ij7}` restricted to the first six axes, so `A x = x × e₇`.
pub fn cross_e7_matrix() -> Vec<Vec<f64>> {
    (0..6).map(|i| (0..6).map(|j| phi(i, j, 6)).collect()).collect()
}
