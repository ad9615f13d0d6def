use nalgebra::DMatrix;
use sha2::{Digest, Sha256};

use super::point::StructurePoint;
use crate::error::{Error, Result};
use crate::geometry::{nabla, nabla2, ChartManifold, LocalGeometry, TensorField};
use crate::jets::{seed_point, JetCache};

/// The quintuple `(f, Q, ξ, η, g)` as fields over a chart.
#[derive(Debug, Clone, PartialEq)]
pub struct WeakMetricFStructureField {
    pub name: String,
    pub host: ChartManifold,
    pub f: TensorField,
    pub q: TensorField,
    pub xi: Vec<TensorField>,
    pub eta: Vec<TensorField>,
}

impl WeakMetricFStructureField {
    pub fn new(
        name: &str,
        host: ChartManifold,
        f: TensorField,
        q: TensorField,
        xi: Vec<TensorField>,
        eta: Vec<TensorField>,
    ) -> Result<Self> {
        let d = host.dim();
        let op = |t: &TensorField, what: &str| -> Result<()> {
            if t.contravariant != 1 || t.covariant != 1 || t.dim != d {
                return Err(Error::ShapeError(format!("{what} must be a (1,1) field of dimension {d}")));
            }
            Ok(())
        };
        op(&f, "f")?;
        op(&q, "Q")?;
        if xi.len() != host.s || eta.len() != host.s {
            return Err(Error::ShapeError(format!(
                "chart has s = {} but {} Reeb fields and {} one-forms were given",
                host.s,
                xi.len(),
                eta.len()
            )));
        }
        if xi.iter().any(|x| x.contravariant != 1 || x.covariant != 0 || x.dim != d) {
            return Err(Error::ShapeError("Reeb fields must be vector fields on the chart".into()));
        }
        if eta.iter().any(|x| x.contravariant != 0 || x.covariant != 1 || x.dim != d) {
            return Err(Error::ShapeError("structure one-forms must be covector fields on the chart".into()));
        }
        Ok(WeakMetricFStructureField { name: name.to_string(), host, f, q, xi, eta })
    }

    pub fn dim(&self) -> usize {
        self.host.dim()
    }

    pub fn n(&self) -> usize {
        self.host.n
    }

    pub fn s(&self) -> usize {
        self.host.s
    }

    pub fn sample_points(&self, count: usize, seed: u64) -> Vec<Vec<f64>> {
        self.host.domain.sample(count, seed)
    }

    /// Evaluate everything the residual checks need at `p`.
    pub fn at(&self, p: &[f64]) -> Result<StructurePoint> {
        let d = self.dim();
        let seeds = seed_point(p, d)?;
        let mut cache = JetCache::new();
        let mjet = self.host.metric_jet_with(&seeds, &mut cache)?;
        let geo = LocalGeometry::from_metric_jet(p, mjet)?;

        let fj = self.f.jet_with(&seeds, &mut cache)?;
        let qj = self.q.jet_with(&seeds, &mut cache)?;
        let f = DMatrix::from_row_slice(d, d, &fj.value);
        let q = DMatrix::from_row_slice(d, d, &qj.value);
        let df = nabla(&fj, &geo.gamma);
        let dq = nabla(&qj, &geo.gamma);

        let mut xi = Vec::with_capacity(self.s());
        let mut h = Vec::with_capacity(self.s());
        let mut dh = Vec::with_capacity(self.s());
        for x in &self.xi {
            let j = x.jet_with(&seeds, &mut cache)?;
            let first = nabla(&j, &geo.gamma);
            h.push(DMatrix::from_row_slice(d, d, &first));
            dh.push(nabla2(&j, &geo.gamma, &geo.dgamma));
            xi.push(j.value);
        }
        let mut eta = Vec::with_capacity(self.s());
        let mut deta = Vec::with_capacity(self.s());
        for e in &self.eta {
            let j = e.jet_with(&seeds, &mut cache)?;
            // dη(∂_a, ∂_b) = ∂_a η_b − ∂_b η_a
            deta.push(DMatrix::from_fn(d, d, |a, b| j.grad[b * d + a] - j.grad[a * d + b]));
            eta.push(j.value);
        }
        Ok(StructurePoint { point: p.to_vec(), d, n: self.n(), s: self.s(), geo, f, df, q, dq, xi, h, dh, eta, deta })
    }

    /// Second covariant derivative array of `f` at `p`, laid out as in
    /// [`nabla2`].
    pub fn nabla2_f(&self, p: &[f64]) -> Result<Vec<f64>> {
        let seeds = seed_point(p, self.dim())?;
        let mut cache = JetCache::new();
        let geo = LocalGeometry::from_metric_jet(p, self.host.metric_jet_with(&seeds, &mut cache)?)?;
        let fj = self.f.jet_with(&seeds, &mut cache)?;
        Ok(nabla2(&fj, &geo.gamma, &geo.dgamma))
    }

    /// Canonical text of every defining expression, the input of
    /// [`structure_hash`](Self::structure_hash).
    pub fn canonical_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("name {}\nn {}\ns {}\n", self.name, self.n(), self.s()));
        out.push_str(&format!("domain {}\n", serde_json::to_string(&self.host.domain).unwrap_or_default()));
        let mut section = |label: &str, fields: &[&TensorField]| {
            for (k, t) in fields.iter().enumerate() {
                for (c, e) in t.components.iter().enumerate() {
                    out.push_str(&format!("{label}{k}[{c}] {e}\n"));
                }
            }
        };
        let metric: Vec<String> = self.host.metric_upper().iter().map(|e| e.to_string()).collect();
        section("f", &[&self.f]);
        section("q", &[&self.q]);
        section("xi", &self.xi.iter().collect::<Vec<_>>());
        section("eta", &self.eta.iter().collect::<Vec<_>>());
        for (k, m) in metric.iter().enumerate() {
            out.push_str(&format!("g[{k}] {m}\n"));
        }
        out
    }

    pub fn structure_hash(&self) -> String {
        let digest = Sha256::digest(self.canonical_text().as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }
}
