use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jets::{seed_point, Jet2, JetCache, ScalarField};

/// One factor of a sampling domain, covering a consecutive run of coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DomainBlock {
    /// Closed ball of the given radius about the origin of the block.
    Ball { dim: usize, radius: f64 },
    /// Axis-aligned box.
    Box { lo: Vec<f64>, hi: Vec<f64> },
}

impl DomainBlock {
    pub fn dim(&self) -> usize {
        match self {
            DomainBlock::Ball { dim, .. } => *dim,
            DomainBlock::Box { lo, .. } => lo.len(),
        }
    }

    fn contains(&self, x: &[f64]) -> bool {
        match self {
            DomainBlock::Ball { radius, .. } => x.iter().map(|v| v * v).sum::<f64>() <= radius * radius * (1.0 + 1e-12),
            DomainBlock::Box { lo, hi } => x.iter().zip(lo.iter().zip(hi)).all(|(v, (l, h))| *l <= *v && *v <= *h),
        }
    }

    fn sample(&self, rng: &mut ChaCha8Rng, out: &mut Vec<f64>) {
        match self {
            DomainBlock::Ball { dim, radius } => {
                let dir: Vec<f64> = (0..*dim).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
                let norm = dir.iter().map(|v| v * v).sum::<f64>().sqrt().max(1e-300);
                let u: f64 = rng.random();
                let r = radius * u.powf(1.0 / *dim as f64);
                out.extend(dir.iter().map(|v| r * v / norm));
            }
            DomainBlock::Box { lo, hi } => {
                for (l, h) in lo.iter().zip(hi) {
                    let u: f64 = rng.random();
                    out.push(l + u * (h - l));
                }
            }
        }
    }
}

/// Product of blocks; coordinates are the concatenation of block coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SamplingDomain {
    pub blocks: Vec<DomainBlock>,
}

impl SamplingDomain {
    pub fn ball(dim: usize, radius: f64) -> Self {
        SamplingDomain { blocks: vec![DomainBlock::Ball { dim, radius }] }
    }

    pub fn cube(dim: usize, half_width: f64) -> Self {
        SamplingDomain { blocks: vec![DomainBlock::Box { lo: vec![-half_width; dim], hi: vec![half_width; dim] }] }
    }

    pub fn product(&self, other: &SamplingDomain) -> Self {
        SamplingDomain { blocks: self.blocks.iter().chain(&other.blocks).cloned().collect() }
    }

    pub fn dim(&self) -> usize {
        self.blocks.iter().map(DomainBlock::dim).sum()
    }

    pub fn contains(&self, p: &[f64]) -> bool {
        if p.len() != self.dim() {
            return false;
        }
        let mut off = 0;
        self.blocks.iter().all(|b| {
            let k = b.dim();
            let ok = b.contains(&p[off..off + k]);
            off += k;
            ok
        })
    }

    /// `count` points drawn from a ChaCha8 stream seeded with `seed`.
    pub fn sample(&self, count: usize, seed: u64) -> Vec<Vec<f64>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..count)
            .map(|_| {
                let mut p = Vec::with_capacity(self.dim());
                for b in &self.blocks {
                    b.sample(&mut rng, &mut p);
                }
                p
            })
            .collect()
    }
}

/// A coordinate chart of dimension `2n + s` with its metric.
#[derive(Debug, Clone, PartialEq)]
pub struct ChartManifold {
    pub name: String,
    pub n: usize,
    pub s: usize,
    /// Upper triangle of the metric, row-major: `(0,0), (0,1), …, (0,d-1), (1,1), …`.
    metric: Vec<ScalarField>,
    pub domain: SamplingDomain,
}

/// Metric with its first and second partials at a point.
/// `dg[(i*d + j)*d + c] = ∂_c g_ij`, `ddg[((i*d + j)*d + c)*d + e] = ∂_c ∂_e g_ij`.
#[derive(Debug, Clone)]
pub struct MetricJet {
    pub g: DMatrix<f64>,
    pub dg: Vec<f64>,
    pub ddg: Vec<f64>,
}

impl ChartManifold {
    pub fn new(name: &str, n: usize, s: usize, metric_upper: Vec<ScalarField>, domain: SamplingDomain) -> Result<Self> {
        let d = 2 * n + s;
        if d == 0 {
            return Err(Error::InvalidParameter("chart dimension must be positive".into()));
        }
        if metric_upper.len() != d * (d + 1) / 2 {
            return Err(Error::ShapeError(format!(
                "a {d}-dimensional metric needs {} upper-triangle entries, got {}",
                d * (d + 1) / 2,
                metric_upper.len()
            )));
        }
        if domain.dim() != d {
            return Err(Error::ShapeError(format!("domain has dimension {}, chart {d}", domain.dim())));
        }
        if let Some(k) = metric_upper.iter().filter_map(|f| f.max_coord()).max() {
            if k >= d {
                return Err(Error::ShapeError(format!("metric references coordinate {k} in dimension {d}")));
            }
        }
        Ok(ChartManifold { name: name.to_string(), n, s, metric: metric_upper, domain })
    }

    /// From a full symmetric matrix of fields; only the upper triangle is kept.
    pub fn from_matrix(name: &str, n: usize, s: usize, metric: &[Vec<ScalarField>], domain: SamplingDomain) -> Result<Self> {
        let d = metric.len();
        let mut upper = Vec::with_capacity(d * (d + 1) / 2);
        for (i, row) in metric.iter().enumerate() {
            if row.len() != d {
                return Err(Error::ShapeError("metric matrix must be square".into()));
            }
            upper.extend(row[i..].iter().cloned());
        }
        Self::new(name, n, s, upper, domain)
    }

    pub fn euclidean(name: &str, n: usize, s: usize, domain: SamplingDomain) -> Self {
        let d = 2 * n + s;
        let mut upper = Vec::new();
        for i in 0..d {
            for j in i..d {
                upper.push(ScalarField::constant(if i == j { 1.0 } else { 0.0 }));
            }
        }
        Self::new(name, n, s, upper, domain).expect("euclidean chart is well formed")
    }

    pub fn dim(&self) -> usize {
        2 * self.n + self.s
    }

    pub fn metric_upper(&self) -> &[ScalarField] {
        &self.metric
    }

    pub fn metric_entry(&self, i: usize, j: usize) -> &ScalarField {
        let d = self.dim();
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        let start = i * d - i * i.saturating_sub(1) / 2;
        &self.metric[start + (j - i)]
    }

    /// Product chart `self × other`, block-diagonal metric.
    pub fn product(&self, other: &ChartManifold, name: &str, n: usize, s: usize) -> Result<ChartManifold> {
        let (d1, d2) = (self.dim(), other.dim());
        let d = d1 + d2;
        let mut rows = vec![vec![ScalarField::zero(); d]; d];
        for i in 0..d1 {
            for j in 0..d1 {
                rows[i][j] = self.metric_entry(i, j).clone();
            }
        }
        for i in 0..d2 {
            for j in 0..d2 {
                rows[d1 + i][d1 + j] = shift_coords(other.metric_entry(i, j), d1);
            }
        }
        Self::from_matrix(name, n, s, &rows, self.domain.product(&other.domain))
    }

    pub fn metric_value(&self, p: &[f64]) -> Result<DMatrix<f64>> {
        let d = self.check_point(p)?;
        let mut g = DMatrix::zeros(d, d);
        for i in 0..d {
            for j in i..d {
                let v = self.metric_entry(i, j).value_at(p)?;
                g[(i, j)] = v;
                g[(j, i)] = v;
            }
        }
        Ok(g)
    }

    pub fn metric_jet(&self, p: &[f64]) -> Result<MetricJet> {
        let d = self.check_point(p)?;
        let seeds = seed_point(p, d)?;
        self.metric_jet_seeded(&seeds)
    }

    pub fn metric_jet_seeded(&self, seeds: &[Jet2]) -> Result<MetricJet> {
        self.metric_jet_with(seeds, &mut JetCache::new())
    }

    pub fn metric_jet_with(&self, seeds: &[Jet2], cache: &mut JetCache) -> Result<MetricJet> {
        let d = self.dim();
        let mut g = DMatrix::zeros(d, d);
        let mut dg = vec![0.0; d * d * d];
        let mut ddg = vec![0.0; d * d * d * d];
        for i in 0..d {
            for j in i..d {
                let jet = self.metric_entry(i, j).eval_jet_cached(seeds, cache)?;
                for (a, b) in [(i, j), (j, i)] {
                    g[(a, b)] = jet.value;
                    for c in 0..d {
                        dg[(a * d + b) * d + c] = jet.gradient[c];
                        for e in 0..d {
                            ddg[((a * d + b) * d + c) * d + e] = jet.hessian[c * d + e];
                        }
                    }
                }
            }
        }
        Ok(MetricJet { g, dg, ddg })
    }

    fn check_point(&self, p: &[f64]) -> Result<usize> {
        let d = self.dim();
        if p.len() != d || p.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidPoint(format!("expected {d} finite coordinates, got {p:?}")));
        }
        Ok(d)
    }

    /// Confirm the metric is SPD at every given point.
    pub fn check_spd(&self, points: &[Vec<f64>]) -> Result<()> {
        for p in points {
            if self.metric_value(p)?.cholesky().is_none() {
                return Err(Error::DegenerateMetric { point: p.clone() });
            }
        }
        Ok(())
    }
}

/// Rename coordinate `k` to `k + offset` throughout a field.
pub fn shift_coords(f: &ScalarField, offset: usize) -> ScalarField {
    use crate::jets::Node;
    if offset == 0 {
        return f.clone();
    }
    match f.node() {
        Node::Const(_) => f.clone(),
        Node::Coord(k) => ScalarField::coord(k + offset),
        Node::Add(a, b) => ScalarField::from_node(Node::Add(shift_coords(a, offset), shift_coords(b, offset))),
        Node::Sub(a, b) => ScalarField::from_node(Node::Sub(shift_coords(a, offset), shift_coords(b, offset))),
        Node::Mul(a, b) => ScalarField::from_node(Node::Mul(shift_coords(a, offset), shift_coords(b, offset))),
        Node::Div(a, b) => ScalarField::from_node(Node::Div(shift_coords(a, offset), shift_coords(b, offset))),
        Node::Sin(a) => ScalarField::from_node(Node::Sin(shift_coords(a, offset))),
        Node::Cos(a) => ScalarField::from_node(Node::Cos(shift_coords(a, offset))),
        Node::Exp(a) => ScalarField::from_node(Node::Exp(shift_coords(a, offset))),
        Node::Sqrt(a) => ScalarField::from_node(Node::Sqrt(shift_coords(a, offset))),
        Node::Pow(a, r) => ScalarField::from_node(Node::Pow(shift_coords(a, offset), *r)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampling_is_deterministic_and_inside() {
        let dom = SamplingDomain::ball(5, 1.5).product(&SamplingDomain::cube(2, 1.0));
        let a = dom.sample(32, 0x5EED);
        assert_eq!(a, dom.sample(32, 0x5EED));
        assert!(a.iter().all(|p| dom.contains(p)));
    }

    #[test]
    fn upper_triangle_lookup() {
        let d = 3;
        let upper: Vec<ScalarField> = (0..6).map(|k| ScalarField::constant(k as f64 + 1.0)).collect();
        let m = ChartManifold::new("t", 1, 1, upper, SamplingDomain::cube(d, 1.0)).unwrap();
        let g = m.metric_value(&[0.0; 3]).unwrap();
        assert_eq!(g, DMatrix::from_row_slice(3, 3, &[1.0, 2.0, 3.0, 2.0, 4.0, 5.0, 3.0, 5.0, 6.0]));
    }
}
