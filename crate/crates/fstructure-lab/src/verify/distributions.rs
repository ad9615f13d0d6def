//! Integrability and total geodesy of the eigendistributions of `h_i²`.
//!
//! For a g-orthogonal projector field `P` the second fundamental form of its
//! image is `B(X, Y) = (Id − P)(∇_X P)Y` on sections. The image is totally
//! geodesic iff `B = 0` and involutive iff `B` is symmetric.

use std::collections::{BTreeMap, BTreeSet};

use nalgebra::DMatrix;

use super::sampling::{point_rng, unit_vector};
use super::spectral::h2_spectrum;
use crate::error::Result;
use crate::fstructure::{sub, StructurePoint};

/// Offset separating the distribution draws from the identity draws.
const STREAM_OFFSET: usize = 1 << 32;

#[derive(Debug, Clone, Default)]
pub struct DistributionResult {
    /// `candidate:involutive` and `candidate:totally_geodesic` residuals.
    pub residuals: BTreeMap<String, f64>,
    /// Candidates that were empty at some point.
    pub empty: BTreeSet<String>,
    /// `max ‖(h_i − h_j)X‖`.
    pub uniform_coframe: f64,
    /// `max ‖h_j P X‖` with `P` the projector onto `ker h_i`.
    pub common_kernel: f64,
}

impl DistributionResult {
    fn raise(&mut self, id: String, v: f64) {
        let e = self.residuals.entry(id).or_insert(0.0);
        if v.is_nan() || v > *e {
            *e = v;
        }
    }

    pub fn merge(&mut self, other: DistributionResult) {
        for (k, v) in other.residuals {
            self.raise(k, v);
        }
        self.empty.extend(other.empty);
        self.uniform_coframe = self.uniform_coframe.max(other.uniform_coframe);
        self.common_kernel = self.common_kernel.max(other.common_kernel);
    }
}

/// `c_id·Id + c_ker·P_ker + Σ_k c_k P_k`, a projector assembled from the
/// eigenprojectors of `h_i²` and the projector onto `ker f`.
struct Candidate {
    id: String,
    c_id: f64,
    c_ker: f64,
    c: Vec<f64>,
}

impl Candidate {
    fn combine(&self, id: &DMatrix<f64>, ker: &DMatrix<f64>, parts: &[DMatrix<f64>]) -> DMatrix<f64> {
        let mut m = id * self.c_id + ker * self.c_ker;
        for (c, p) in self.c.iter().zip(parts) {
            if *c != 0.0 {
                m += p * *c;
            }
        }
        m
    }
}

fn outer(u: &[f64], w: &[f64]) -> DMatrix<f64> {
    DMatrix::from_fn(u.len(), w.len(), |a, b| u[a] * w[b])
}

/// `∇_X Σ ξ_i ⊗ η^i = Σ (h_i X) ⊗ η^i + ξ_i ⊗ g(h_i X, ·)`.
fn d_p_ker(sp: &StructurePoint, x: &[f64]) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(sp.d, sp.d);
    for i in 0..sp.s {
        let hx = sp.mv(&sp.h[i], x);
        m += outer(&hx, &sp.eta[i]) + outer(&sp.xi[i], &sp.geo.flat(&hx));
    }
    m
}

/// `∇_X P_k = Σ_{m≠k} (P_k A' P_m + P_m A' P_k)/(μ_k − μ_m)` with `A' = ∇_X(h_i²)`.
fn d_projectors(sp: &StructurePoint, i: usize, projs: &[DMatrix<f64>], eig: &[f64], x: &[f64]) -> Vec<DMatrix<f64>> {
    let h = &sp.h[i];
    let nh = sp.nabla_h(i, x);
    let da = &nh * h + h * &nh;
    (0..projs.len())
        .map(|k| {
            let mut m = DMatrix::zeros(sp.d, sp.d);
            for (mi, pm) in projs.iter().enumerate() {
                if mi != k {
                    m += (&projs[k] * &da * pm + pm * &da * &projs[k]) / (eig[k] - eig[mi]);
                }
            }
            m
        })
        .collect()
}

/// Residuals at one point for all Reeb indices.
pub fn point_diagnostics(sp: &StructurePoint, index: usize, vectors: usize, seed: u64, cluster_tol: f64) -> Result<DistributionResult> {
    let mut out = DistributionResult::default();
    let mut rng = point_rng(seed, index + STREAM_OFFSET);
    let draws: Vec<(Vec<f64>, Vec<f64>)> = (0..vectors.max(1)).map(|_| (unit_vector(sp, &mut rng), unit_vector(sp, &mut rng))).collect();
    let pk = sp.p_ker();
    let id = sp.identity();
    let zero_m = DMatrix::zeros(sp.d, sp.d);

    for i in 0..sp.s {
        let spec = h2_spectrum(sp, i, cluster_tol)?;
        let projs: Vec<DMatrix<f64>> = (0..spec.clusters.len()).map(|k| spec.projector(k, sp.g())).collect();
        let eig: Vec<f64> = spec.clusters.iter().map(|c| c.eigenvalue).collect();
        let zero = spec.clusters.iter().position(|c| c.eigenvalue.abs() <= cluster_tol);
        let nc = projs.len();
        let unit = |k: Option<usize>, sign: f64| -> Vec<f64> { (0..nc).map(|m| if Some(m) == k { sign } else { 0.0 }).collect() };

        let mut cands = Vec::new();
        let mut j = 0;
        for k in 0..nc {
            if Some(k) == zero {
                continue;
            }
            j += 1;
            cands.push(Candidate { id: format!("kerf+D{},{}", i + 1, j), c_id: 0.0, c_ker: 1.0, c: unit(Some(k), 1.0) });
        }
        cands.push(Candidate { id: format!("kerf+D{},0", i + 1), c_id: 0.0, c_ker: 0.0, c: unit(zero, 1.0) });
        cands.push(Candidate { id: format!("D{},0", i + 1), c_id: 0.0, c_ker: -1.0, c: unit(zero, 1.0) });
        cands.push(Candidate { id: format!("kerf+D{},1..r", i + 1), c_id: 1.0, c_ker: 1.0, c: unit(zero, -1.0) });

        for c in &cands {
            let p = c.combine(&id, &pk, &projs);
            if zero.is_none() || p.trace() < 0.5 {
                out.empty.insert(c.id.clone());
                continue;
            }
            let comp = &id - &p;
            for (x, y) in &draws {
                let (xp, yp) = (sp.mv(&p, x), sp.mv(&p, y));
                let dx = c.combine(&zero_m, &d_p_ker(sp, &xp), &d_projectors(sp, i, &projs, &eig, &xp));
                let dy = c.combine(&zero_m, &d_p_ker(sp, &yp), &d_projectors(sp, i, &projs, &eig, &yp));
                let bxy = sp.mv(&comp, &sp.mv(&dx, &yp));
                let byx = sp.mv(&comp, &sp.mv(&dy, &xp));
                out.raise(format!("{}:totally_geodesic", c.id), sp.norm(&bxy).max(sp.norm(&byx)));
                out.raise(format!("{}:involutive", c.id), sp.norm(&sub(&bxy, &byx)));
            }
        }

        let pz = zero.map(|z| projs[z].clone()).unwrap_or_else(|| zero_m.clone());
        for (x, _) in &draws {
            for jj in 0..sp.s {
                out.uniform_coframe = out.uniform_coframe.max(sp.norm(&sp.mv(&(&sp.h[i] - &sp.h[jj]), x)));
                out.common_kernel = out.common_kernel.max(sp.norm(&sp.mv(&sp.h[jj], &sp.mv(&pz, x))));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::geometry::oracle::fd_christoffel;

    // ∇_X P = ∂_X P + [Γ_X, P], with ∂_X P from the projectors at p ± hX.
    fn fd_nabla(
        s: &crate::fstructure::WeakMetricFStructureField,
        p: &[f64],
        x: &[f64],
        proj: impl Fn(&StructurePoint) -> DMatrix<f64>,
    ) -> DMatrix<f64> {
        let h = 1e-5;
        let d = p.len();
        let at = |t: f64| proj(&s.at(&(0..d).map(|k| p[k] + t * x[k]).collect::<Vec<_>>()).unwrap());
        let gamma = fd_christoffel(&s.host, p, h).unwrap();
        let gx = DMatrix::from_fn(d, d, |a, e| (0..d).map(|c| gamma[(a * d + c) * d + e] * x[c]).sum());
        let p0 = at(0.0);
        (at(h) - at(-h)) / (2.0 * h) + &gx * &p0 - &p0 * &gx
    }

    #[test]
    fn projector_derivatives_match_differences() {
        for name in ["s5", "product-b5-nk:lambda=2", "s5-perturbed:eps=0.01"] {
            let s = catalog::build(name).unwrap().structure;
            for p in s.sample_points(3, 21) {
                let sp = s.at(&p).unwrap();
                let x: Vec<f64> = (0..sp.d).map(|k| 0.3 + 0.1 * k as f64).collect();
                let spec = h2_spectrum(&sp, 0, 1e-6).unwrap();
                let projs: Vec<DMatrix<f64>> = (0..spec.clusters.len()).map(|k| spec.projector(k, sp.g())).collect();
                let eig: Vec<f64> = spec.clusters.iter().map(|c| c.eigenvalue).collect();
                let ours = d_projectors(&sp, 0, &projs, &eig, &x);
                for (k, dk) in ours.iter().enumerate() {
                    let fd = fd_nabla(&s, &p, &x, |q| h2_spectrum(q, 0, 1e-6).unwrap().projector(k, q.g()));
                    assert!(crate::fstructure::max_abs(&(dk - fd)) < 1e-6, "{name}: cluster {k}");
                }
                let fd = fd_nabla(&s, &p, &x, |q| q.p_ker());
                assert!(crate::fstructure::max_abs(&(d_p_ker(&sp, &x) - fd)) < 1e-6, "{name}: ker f");
            }
        }
    }
}
