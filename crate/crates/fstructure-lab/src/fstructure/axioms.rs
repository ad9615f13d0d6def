use std::collections::BTreeMap;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::point::{max_abs, StructurePoint};
use super::structure::WeakMetricFStructureField;
use crate::error::Result;
use crate::multilinear::{mat_vec, numerical_rank, RANK_THRESHOLD};

pub const AXIOM_TOL: f64 = 1e-10;

/// Named residuals, ordered by name.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ResidualRecord {
    pub residuals: BTreeMap<String, f64>,
}

impl ResidualRecord {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, id: &str, value: f64) {
        self.residuals.insert(id.to_string(), value);
    }

    /// Keep the larger value; NaN wins so that it is never hidden.
    pub fn raise(&mut self, id: &str, value: f64) {
        let e = self.residuals.entry(id.to_string()).or_insert(0.0);
        if value.is_nan() || value > *e {
            *e = value;
        }
    }

    pub fn merge_max(&mut self, other: &ResidualRecord) {
        for (k, v) in &other.residuals {
            self.raise(k, *v);
        }
    }

    pub fn get(&self, id: &str) -> Option<f64> {
        self.residuals.get(id).copied()
    }

    pub fn max(&self) -> f64 {
        self.residuals.values().fold(0.0, |m, v| if v.is_nan() { f64::NAN } else { m.max(*v) })
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.residuals.values().all(|v| *v <= tol)
    }

    pub fn failures(&self, tol: f64) -> Vec<(&str, f64)> {
        self.residuals.iter().filter(|(_, v)| !(**v <= tol)).map(|(k, v)| (k.as_str(), *v)).collect()
    }
}

fn asym(m: &DMatrix<f64>, sign: f64) -> f64 {
    let mut r: f64 = 0.0;
    for a in 0..m.nrows() {
        for b in 0..m.ncols() {
            r = r.max((m[(a, b)] + sign * m[(b, a)]).abs());
        }
    }
    r
}

/// Axiom residuals of a pointwise quintuple. `n` is half the rank that `f`
/// must have.
pub fn pointwise_axioms(
    g: &DMatrix<f64>,
    f: &DMatrix<f64>,
    q: &DMatrix<f64>,
    xi: &[Vec<f64>],
    eta: &[Vec<f64>],
    n: usize,
) -> ResidualRecord {
    let d = g.nrows();
    let s = xi.len();
    let mut rec = ResidualRecord::new();
    let gf = g * f;
    let gq = g * q;
    rec.set("f_skew", asym(&gf, 1.0));
    rec.set("q_self_adjoint", asym(&gq, -1.0));
    rec.set("q_nonsingular", if numerical_rank(q, RANK_THRESHOLD) == d { 0.0 } else { 1.0 });
    rec.set("f_rank", (numerical_rank(f, RANK_THRESHOLD) as f64 - 2.0 * n as f64).abs());

    let mut eta_xi = DMatrix::zeros(d, d);
    let mut eta_eta = DMatrix::zeros(d, d);
    for i in 0..s {
        for a in 0..d {
            for b in 0..d {
                eta_xi[(a, b)] += xi[i][a] * eta[i][b];
                eta_eta[(a, b)] += eta[i][a] * eta[i][b];
            }
        }
    }
    rec.set("f_squared", max_abs(&(f * f + q - &eta_xi)));
    // g(fX, fY) − g(X, QY) + Σ η(X)η(Y)
    rec.set("metric_compat", max_abs(&(f.transpose() * g * f - &gq + &eta_eta)));

    let mut dual: f64 = 0.0;
    let mut fixes: f64 = 0.0;
    let mut metric_dual: f64 = 0.0;
    let mut ortho: f64 = 0.0;
    let mut kills: f64 = 0.0;
    let mut eta_f: f64 = 0.0;
    let mut eta_q: f64 = 0.0;
    for i in 0..s {
        let qxi = mat_vec(q, &xi[i]);
        let fxi = mat_vec(f, &xi[i]);
        let gxi = mat_vec(g, &xi[i]);
        for a in 0..d {
            fixes = fixes.max((qxi[a] - xi[i][a]).abs());
            kills = kills.max(fxi[a].abs());
            metric_dual = metric_dual.max((eta[i][a] - gxi[a]).abs());
            let ef: f64 = (0..d).map(|k| eta[i][k] * f[(k, a)]).sum();
            let eq: f64 = (0..d).map(|k| eta[i][k] * q[(k, a)]).sum();
            eta_f = eta_f.max(ef.abs());
            eta_q = eta_q.max((eq - eta[i][a]).abs());
        }
        for j in 0..s {
            let delta = if i == j { 1.0 } else { 0.0 };
            let e: f64 = (0..d).map(|a| eta[i][a] * xi[j][a]).sum();
            dual = dual.max((e - delta).abs());
            let gij: f64 = (0..d).map(|a| gxi[a] * xi[j][a]).sum();
            ortho = ortho.max((gij - delta).abs());
        }
    }
    rec.set("eta_xi_dual", dual);
    rec.set("q_fixes_xi", fixes);
    rec.set("eta_is_metric_dual", metric_dual);
    rec.set("xi_orthonormal", ortho);
    rec.set("f_kills_xi", kills);
    rec.set("eta_kills_f", eta_f);
    rec.set("eta_q", eta_q);
    rec.set("q_f_commute", max_abs(&(q * f - f * q)));
    rec
}

impl StructurePoint {
    pub fn axioms(&self) -> ResidualRecord {
        let mut rec = pointwise_axioms(self.g(), &self.f, &self.q, &self.xi, &self.eta, self.n);
        // idempotency of the contact projector, reported alongside
        let p = self.p_d();
        rec.set("d_projector_idempotent", max_abs(&(&p * &p - &p)));
        rec
    }
}

/// One named residual per axiom at `p`.
pub fn validate_axioms(s: &WeakMetricFStructureField, p: &[f64]) -> Result<ResidualRecord> {
    Ok(s.at(p)?.axioms())
}
