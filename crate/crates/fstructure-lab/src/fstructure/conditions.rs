use super::axioms::ResidualRecord;
use super::point::{add, axpy, max_abs, StructurePoint};
use super::structure::WeakMetricFStructureField;
use crate::error::Result;
use crate::multilinear::{self_adjoint_residual, PointTensor};

impl StructurePoint {
    /// `[ξ_i, ξ_j]`, `g(∇_X ξ_i, ξ_j)` and `η^k(∇_{ξ_i} ξ_j)` families.
    pub fn reeb(&self, xs: &[Vec<f64>]) -> ResidualRecord {
        let mut rec = ResidualRecord::new();
        rec.set("xi_bracket", 0.0);
        rec.set("xi_normal_parallel", 0.0);
        rec.set("xi_geodesic", 0.0);
        for i in 0..self.s {
            for j in 0..self.s {
                // [ξ_i, ξ_j] = ∇_{ξ_i} ξ_j − ∇_{ξ_j} ξ_i = h_j ξ_i − h_i ξ_j
                let a = self.mv(&self.h[j], &self.xi[i]);
                let b = self.mv(&self.h[i], &self.xi[j]);
                rec.raise("xi_bracket", self.norm(&super::point::sub(&a, &b)));
                for x in xs {
                    let hx = self.mv(&self.h[i], x);
                    rec.raise("xi_normal_parallel", self.ip(&hx, &self.xi[j]).abs());
                }
                for k in 0..self.s {
                    rec.raise("xi_geodesic", self.eta_of(k, &a).abs());
                }
            }
        }
        rec
    }

    /// Second fundamental form and curvature of the Reeb foliation.
    pub fn reeb_foliation(&self) -> ResidualRecord {
        let mut rec = ResidualRecord::new();
        rec.set("kerf_totally_geodesic", 0.0);
        rec.set("kerf_flat", 0.0);
        let pd = self.p_d();
        for i in 0..self.s {
            for j in 0..self.s {
                let nab = self.mv(&self.h[j], &self.xi[i]);
                rec.raise("kerf_totally_geodesic", self.norm(&self.mv(&pd, &nab)));
                for k in 0..self.s {
                    rec.raise("kerf_flat", self.norm(&self.r(&self.xi[i], &self.xi[j], &self.xi[k])));
                }
            }
        }
        rec
    }

    /// `(∇_X f)Y + (∇_Y f)X`.
    pub fn nearly_c(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        add(&self.mv(&self.nabla_f(x), y), &self.mv(&self.nabla_f(y), x))
    }

    /// `(∇_X Q)Y` with `Y` projected into the contact distribution first.
    pub fn q_parallel_on_d(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        self.mv(&self.nabla_q(x), &self.project_d(y))
    }

    /// `(∇_X Q)Y + Σ η^i(Y) Q̃ ∇_X ξ_i` for general `Y`.
    pub fn q_parallel_general(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        let mut out = self.mv(&self.nabla_q(x), y);
        let qt = self.q_tilde();
        for i in 0..self.s {
            let hx = self.mv(&self.h[i], x);
            axpy(&mut out, self.eta_of(i, y), &self.mv(&qt, &hx));
        }
        out
    }

    /// `Σ_j |η^j(R(Q̃X, Y)Z)|` and `Σ_j |η^j(R(X, Y)Z)|` after projecting
    /// the arguments into the contact distribution.
    pub fn curvature_invariance(&self, x: &[f64], y: &[f64], z: &[f64]) -> (f64, f64) {
        let (x, y, z) = (self.project_d(x), self.project_d(y), self.project_d(z));
        let qx = self.mv(&self.q_tilde(), &x);
        let weak = self.r(&qx, &y, &z);
        let classical = self.r(&x, &y, &z);
        let mut w = 0.0;
        let mut c = 0.0;
        for j in 0..self.s {
            w += self.eta_of(j, &weak).abs();
            c += self.eta_of(j, &classical).abs();
        }
        (w, c)
    }

    /// `g(R(ξ_j, Z) fX, fY)`, maximized over `j`.
    pub fn r_xi_z_ff(&self, x: &[f64], y: &[f64], z: &[f64]) -> f64 {
        let fx = self.mv(&self.f, x);
        let fy = self.mv(&self.f, y);
        (0..self.s).map(|j| self.rm(&self.xi[j], z, &fx, &fy).abs()).fold(0.0, f64::max)
    }
}

pub fn reeb_conditions(s: &WeakMetricFStructureField, p: &[f64], xs: &[Vec<f64>]) -> Result<ResidualRecord> {
    Ok(s.at(p)?.reeb(xs))
}

pub fn nearly_c_residual(s: &WeakMetricFStructureField, p: &[f64], x: &[f64], y: &[f64]) -> Result<Vec<f64>> {
    Ok(s.at(p)?.nearly_c(x, y))
}

/// `h_i` at `p` with its g-skewness residual.
pub fn h_tensor(s: &WeakMetricFStructureField, i: usize, p: &[f64]) -> Result<(PointTensor, f64)> {
    let sp = s.at(p)?;
    if i >= sp.s {
        return Err(crate::Error::InvalidParameter(format!("Reeb index {i} with s = {}", sp.s)));
    }
    let h = &sp.h[i];
    let gh = sp.g() * h;
    let skew = max_abs(&(&gh + gh.transpose()));
    Ok((PointTensor::operator(h, p), skew))
}

pub fn delta_tensor(s: &WeakMetricFStructureField, p: &[f64], x: &[f64], y: &[f64], z: &[f64], v: &[f64]) -> Result<f64> {
    Ok(s.at(p)?.delta(x, y, z, v))
}

/// `(∇_X Q)Y_𝒟` and the general-`Y` companion residual.
pub fn q_parallel_residual(s: &WeakMetricFStructureField, p: &[f64], x: &[f64], y: &[f64]) -> Result<(Vec<f64>, Vec<f64>)> {
    let sp = s.at(p)?;
    Ok((sp.q_parallel_on_d(x, y), sp.q_parallel_general(x, y)))
}

/// Weak and classical curvature invariance plus `g(R(ξ_j, Z) fX, fY)`.
pub fn curvature_invariance_residual(s: &WeakMetricFStructureField, p: &[f64], x: &[f64], y: &[f64], z: &[f64]) -> Result<ResidualRecord> {
    let sp = s.at(p)?;
    let (w, c) = sp.curvature_invariance(x, y, z);
    let mut rec = ResidualRecord::new();
    rec.set("curvature_invariance_weak", w);
    rec.set("curvature_invariance_classical", c);
    rec.set("r_xi_z_ff", sp.r_xi_z_ff(x, y, z));
    Ok(rec)
}

/// g-self-adjointness residual of `h_i h_j`.
pub fn hh_self_adjoint(sp: &StructurePoint, i: usize, j: usize) -> f64 {
    self_adjoint_residual(&(&sp.h[i] * &sp.h[j]), sp.g())
}
