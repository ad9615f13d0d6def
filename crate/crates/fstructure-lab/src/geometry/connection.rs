use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::chart::{ChartManifold, MetricJet};
use crate::error::{Error, Result};
use crate::jets::{seed_point, Jet2};
use crate::multilinear::inner;

/// Levi-Civita connection at a point. `gamma[(k*d + i)*d + j] = Γ^k_{ij}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConnectionData {
    pub point: Vec<f64>,
    pub dim: usize,
    pub gamma: Vec<f64>,
    pub metric: Vec<f64>,
    pub inverse: Vec<f64>,
}

impl ConnectionData {
    pub fn christoffel(&self, k: usize, i: usize, j: usize) -> f64 {
        self.gamma[(k * self.dim + i) * self.dim + j]
    }
}

/// Curvature at a point.
///
/// Convention: `R(X,Y)Z = ∇_X∇_Y Z − ∇_Y∇_X Z − ∇_{[X,Y]}Z`,
/// `R(X,Y,Z,V) = g(R(X,Y)Z, V)`, `Ric(Y,Z) = tr(X ↦ R(X,Y)Z)`,
/// `K(X,Y) = R(X,Y,Y,X) / (|X|²|Y|² − g(X,Y)²)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurvatureData {
    pub point: Vec<f64>,
    pub dim: usize,
    /// `riemann[((x*d + y)*d + z)*d + v] = R(∂_x, ∂_y, ∂_z, ∂_v)`.
    pub riemann: Vec<f64>,
    /// `ricci[y*d + z] = Ric(∂_y, ∂_z)`.
    pub ricci: Vec<f64>,
    pub convention: String,
}

pub const CURVATURE_CONVENTION: &str =
    "R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z; R(X,Y,Z,V) = g(R(X,Y)Z,V); K(X,Y) = R(X,Y,Y,X)/(|X|^2|Y|^2 - g(X,Y)^2)";

/// Everything derived from the metric jet at one point.
#[derive(Debug, Clone)]
pub struct LocalGeometry {
    pub point: Vec<f64>,
    pub dim: usize,
    pub g: DMatrix<f64>,
    pub g_inv: DMatrix<f64>,
    pub metric_jet: MetricJet,
    /// `Γ^k_{ij}` at `(k*d + i)*d + j`.
    pub gamma: Vec<f64>,
    /// `∂_m Γ^k_{ij}` at `((k*d + i)*d + j)*d + m`.
    pub dgamma: Vec<f64>,
    /// `R^a_{bce}` at `((a*d + b)*d + c)*d + e`, meaning `R(∂_c, ∂_e)∂_b = R^a_{bce} ∂_a`.
    pub riemann_op: Vec<f64>,
}

impl LocalGeometry {
    pub fn at(m: &ChartManifold, p: &[f64]) -> Result<Self> {
        let seeds = seed_point(p, m.dim())?;
        Self::with_seeds(m, p, &seeds)
    }

    pub fn with_seeds(m: &ChartManifold, p: &[f64], seeds: &[Jet2]) -> Result<Self> {
        let jet = m.metric_jet_seeded(seeds)?;
        Self::from_metric_jet(p, jet)
    }

    pub fn from_metric_jet(p: &[f64], jet: MetricJet) -> Result<Self> {
        let d = jet.g.nrows();
        let chol = jet.g.clone().cholesky().ok_or_else(|| Error::DegenerateMetric { point: p.to_vec() })?;
        let mut g_inv = chol.inverse();
        g_inv = (&g_inv + g_inv.transpose()) * 0.5;
        let (gamma, dgamma) = christoffel_from_jet(&jet, &g_inv);
        let riemann_op = riemann_from_gamma(d, &gamma, &dgamma);
        Ok(LocalGeometry { point: p.to_vec(), dim: d, g: jet.g.clone(), g_inv, metric_jet: jet, gamma, dgamma, riemann_op })
    }

    pub fn connection(&self) -> ConnectionData {
        ConnectionData {
            point: self.point.clone(),
            dim: self.dim,
            gamma: self.gamma.clone(),
            metric: self.g.iter().cloned().collect(),
            inverse: self.g_inv.iter().cloned().collect(),
        }
    }

    pub fn curvature(&self) -> CurvatureData {
        let d = self.dim;
        let mut riemann = vec![0.0; d * d * d * d];
        for x in 0..d {
            for y in 0..d {
                for z in 0..d {
                    for v in 0..d {
                        let mut s = 0.0;
                        for a in 0..d {
                            s += self.g[(v, a)] * self.riemann_op[((a * d + z) * d + x) * d + y];
                        }
                        riemann[((x * d + y) * d + z) * d + v] = s;
                    }
                }
            }
        }
        let mut ricci = vec![0.0; d * d];
        for y in 0..d {
            for z in 0..d {
                ricci[y * d + z] = (0..d).map(|a| self.riemann_op[((a * d + z) * d + a) * d + y]).sum();
            }
        }
        CurvatureData { point: self.point.clone(), dim: d, riemann, ricci, convention: CURVATURE_CONVENTION.into() }
    }

    /// `∇_X Y` for coordinate-constant `Y`, i.e. `Γ(X, Y)`.
    pub fn gamma_xy(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        let d = self.dim;
        let mut out = vec![0.0; d];
        for k in 0..d {
            let mut s = 0.0;
            for i in 0..d {
                if x[i] == 0.0 {
                    continue;
                }
                for j in 0..d {
                    s += self.gamma[(k * d + i) * d + j] * x[i] * y[j];
                }
            }
            out[k] = s;
        }
        out
    }

    /// `R(X,Y)Z` as a vector.
    pub fn r_op(&self, x: &[f64], y: &[f64], z: &[f64]) -> Vec<f64> {
        let d = self.dim;
        let mut out = vec![0.0; d];
        for b in 0..d {
            if z[b] == 0.0 {
                continue;
            }
            for c in 0..d {
                if x[c] == 0.0 {
                    continue;
                }
                for e in 0..d {
                    let w = z[b] * x[c] * y[e];
                    if w == 0.0 {
                        continue;
                    }
                    for a in 0..d {
                        out[a] += self.riemann_op[((a * d + b) * d + c) * d + e] * w;
                    }
                }
            }
        }
        out
    }

    /// `R(X,Y,Z,V) = g(R(X,Y)Z, V)`.
    pub fn rm(&self, x: &[f64], y: &[f64], z: &[f64], v: &[f64]) -> f64 {
        inner(&self.g, &self.r_op(x, y, z), v)
    }

    pub fn ricci(&self, y: &[f64], z: &[f64]) -> f64 {
        let d = self.dim;
        let mut s = 0.0;
        for a in 0..d {
            let mut e = vec![0.0; d];
            e[a] = 1.0;
            s += self.r_op(&e, y, z)[a];
        }
        s
    }

    pub fn sectional(&self, x: &[f64], y: &[f64]) -> f64 {
        let area = inner(&self.g, x, x) * inner(&self.g, y, y) - inner(&self.g, x, y).powi(2);
        self.rm(x, y, y, x) / area
    }

    pub fn inner(&self, u: &[f64], v: &[f64]) -> f64 {
        inner(&self.g, u, v)
    }

    /// Lower an index: `(g v)_a`.
    pub fn flat(&self, v: &[f64]) -> Vec<f64> {
        crate::multilinear::mat_vec(&self.g, v)
    }
}

/// Christoffel symbols and their partials from the metric jet.
pub fn christoffel_from_jet(jet: &MetricJet, g_inv: &DMatrix<f64>) -> (Vec<f64>, Vec<f64>) {
    let d = jet.g.nrows();
    let dg = |i: usize, j: usize, c: usize| jet.dg[(i * d + j) * d + c];
    let ddg = |i: usize, j: usize, c: usize, e: usize| jet.ddg[((i * d + j) * d + c) * d + e];
    // first kind: Γ_{lij} = ½(∂_i g_jl + ∂_j g_il − ∂_l g_ij)
    let mut first = vec![0.0; d * d * d];
    for l in 0..d {
        for i in 0..d {
            for j in i..d {
                let v = 0.5 * (dg(j, l, i) + dg(i, l, j) - dg(i, j, l));
                first[(l * d + i) * d + j] = v;
                first[(l * d + j) * d + i] = v;
            }
        }
    }
    let mut gamma = vec![0.0; d * d * d];
    for k in 0..d {
        for i in 0..d {
            for j in i..d {
                let v: f64 = (0..d).map(|l| g_inv[(k, l)] * first[(l * d + i) * d + j]).sum();
                gamma[(k * d + i) * d + j] = v;
                gamma[(k * d + j) * d + i] = v;
            }
        }
    }
    // ∂_m Γ^k_ij = g^{kl} (∂_m Γ_{lij} − ∂_m g_{la} Γ^a_ij)
    let mut dgamma = vec![0.0; d * d * d * d];
    let mut inner_term = vec![0.0; d];
    for i in 0..d {
        for j in i..d {
            for m in 0..d {
                for (l, slot) in inner_term.iter_mut().enumerate() {
                    let dfirst = 0.5 * (ddg(j, l, i, m) + ddg(i, l, j, m) - ddg(i, j, l, m));
                    let corr: f64 = (0..d).map(|a| dg(l, a, m) * gamma[(a * d + i) * d + j]).sum();
                    *slot = dfirst - corr;
                }
                for k in 0..d {
                    let v: f64 = (0..d).map(|l| g_inv[(k, l)] * inner_term[l]).sum();
                    dgamma[((k * d + i) * d + j) * d + m] = v;
                    dgamma[((k * d + j) * d + i) * d + m] = v;
                }
            }
        }
    }
    (gamma, dgamma)
}

/// `R^a_{bce} = ∂_c Γ^a_{eb} − ∂_e Γ^a_{cb} + Γ^a_{cf} Γ^f_{eb} − Γ^a_{ef} Γ^f_{cb}`.
pub fn riemann_from_gamma(d: usize, gamma: &[f64], dgamma: &[f64]) -> Vec<f64> {
    let gm = |k: usize, i: usize, j: usize| gamma[(k * d + i) * d + j];
    let dgm = |k: usize, i: usize, j: usize, m: usize| dgamma[((k * d + i) * d + j) * d + m];
    let mut r = vec![0.0; d * d * d * d];
    for a in 0..d {
        for b in 0..d {
            for c in 0..d {
                for e in 0..d {
                    let mut v = dgm(a, e, b, c) - dgm(a, c, b, e);
                    for f in 0..d {
                        v += gm(a, c, f) * gm(f, e, b) - gm(a, e, f) * gm(f, c, b);
                    }
                    r[((a * d + b) * d + c) * d + e] = v;
                }
            }
        }
    }
    r
}

pub fn christoffel(m: &ChartManifold, p: &[f64]) -> Result<ConnectionData> {
    Ok(LocalGeometry::at(m, p)?.connection())
}

pub fn riemann(m: &ChartManifold, p: &[f64]) -> Result<CurvatureData> {
    Ok(LocalGeometry::at(m, p)?.curvature())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::chart::SamplingDomain;
    use crate::jets::ScalarField;

    #[test]
    fn euclidean_is_flat() {
        let m = ChartManifold::euclidean("e3", 1, 1, SamplingDomain::cube(3, 1.0));
        let c = christoffel(&m, &[0.1, 0.2, 0.3]).unwrap();
        assert!(c.gamma.iter().all(|g| *g == 0.0));
        let r = riemann(&m, &[0.1, 0.2, 0.3]).unwrap();
        assert!(r.riemann.iter().all(|x| *x == 0.0));
    }

    #[test]
    fn polar_coordinates() {
        let r = ScalarField::coord(0);
        let upper = vec![ScalarField::one(), ScalarField::zero(), &r * &r];
        let m = ChartManifold::new("polar", 1, 0, upper, SamplingDomain::cube(2, 3.0)).unwrap();
        let c = christoffel(&m, &[2.0, 0.4]).unwrap();
        assert!((c.christoffel(0, 1, 1) + 2.0).abs() < 1e-15);
        assert!((c.christoffel(1, 0, 1) - 0.5).abs() < 1e-15);
        assert_eq!(c.christoffel(1, 1, 0), c.christoffel(1, 0, 1));
        // the plane is flat in any coordinates
        let k = riemann(&m, &[2.0, 0.4]).unwrap();
        assert!(k.riemann.iter().all(|x| x.abs() < 1e-14));
    }
}
