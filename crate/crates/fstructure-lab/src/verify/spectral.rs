use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::report::Tolerances;
use crate::error::{Error, Result};
use crate::fstructure::StructurePoint;
use crate::multilinear::{sym_eigen, SpectrumCluster};

/// Clustered `Spec(h_i²)` at a point, refusing near-threshold gaps.
pub fn h2_spectrum(sp: &StructurePoint, i: usize, cluster_tol: f64) -> Result<SpectrumCluster> {
    let h2 = &sp.h[i] * &sp.h[i];
    let spec = sym_eigen(&h2, sp.g(), cluster_tol)?;
    if spec.min_gap > cluster_tol && spec.min_gap <= 2.0 * cluster_tol {
        return Err(Error::AmbiguousSpectrum(format!(
            "h_{}^2 at {:?}: neighbouring eigenvalues {:e} apart, within twice the clustering tolerance {:e}; shape {:?}",
            i + 1,
            sp.point,
            spec.min_gap,
            cluster_tol,
            spec.shape()
        )));
    }
    Ok(spec)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusterSummary {
    pub eigenvalue: f64,
    pub multiplicity: usize,
}

/// Spectrum of one `h_i²` across the sample.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReebSpectrum {
    /// 1-based Reeb index.
    pub index: usize,
    /// Clusters at the first sample point, descending.
    pub clusters: Vec<ClusterSummary>,
    /// `λ_{i,j} = √(−μ)` for the nonzero clusters `μ`, increasing.
    pub lambdas: Vec<f64>,
    /// Number of distinct nonzero eigenvalues.
    pub r: usize,
    /// Multiplicity of `0`, which equals `2p_i + s`.
    pub kernel_multiplicity: usize,
    pub p: usize,
    /// `max |center(p) − center(p₀)|` over points and clusters.
    pub drift: f64,
    /// Whether every point had the same multiplicities.
    pub shape_stable: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub per_reeb: Vec<ReebSpectrum>,
    /// `max ‖[h_i, h_j]‖` (componentwise) for `i < j`, as `(i, j, norm)`, 1-based.
    pub commutators: Vec<(usize, usize, f64)>,
    /// Off-diagonal mass of `h_j²` in the eigenframe of `h_i²`.
    pub simultaneous_residual: f64,
    /// Hypothesis status at the time of the run.
    pub hypotheses: Vec<(String, bool)>,
}

/// Block-off-diagonal mass of `B` in the eigenframe of `spec`.
fn off_block(spec: &SpectrumCluster, b: &DMatrix<f64>, g: &DMatrix<f64>) -> f64 {
    let vecs: Vec<(usize, &Vec<f64>)> =
        spec.clusters.iter().enumerate().flat_map(|(c, cl)| cl.eigenbasis.iter().map(move |v| (c, v))).collect();
    let mut r: f64 = 0.0;
    for (ca, va) in &vecs {
        let gva = g * nalgebra::DVector::from_column_slice(va);
        for (cb, vb) in &vecs {
            if ca == cb {
                continue;
            }
            let bvb = b * nalgebra::DVector::from_column_slice(vb);
            r = r.max(gva.dot(&bvb).abs());
        }
    }
    r
}

/// Per-point spectra → cross-point report.
pub fn spectral_report(points: &[StructurePoint], tol: &Tolerances, hypotheses: Vec<(String, bool)>) -> Result<SpectrumReport> {
    let s = points.first().map(|p| p.s).unwrap_or(0);
    let mut per_reeb = Vec::with_capacity(s);
    let mut simultaneous: f64 = 0.0;
    let mut commutators = Vec::new();
    for i in 0..s {
        let specs: Vec<SpectrumCluster> = points.iter().map(|sp| h2_spectrum(sp, i, tol.cluster)).collect::<Result<_>>()?;
        let first = &specs[0];
        let mut drift: f64 = 0.0;
        let mut stable = true;
        for sc in &specs {
            let same = sc.clusters.len() == first.clusters.len()
                && sc.clusters.iter().zip(&first.clusters).all(|(a, b)| a.multiplicity == b.multiplicity);
            if !same {
                stable = false;
                continue;
            }
            for (a, b) in sc.clusters.iter().zip(&first.clusters) {
                drift = drift.max((a.eigenvalue - b.eigenvalue).abs());
            }
        }
        let clusters: Vec<ClusterSummary> =
            first.clusters.iter().map(|c| ClusterSummary { eigenvalue: c.eigenvalue, multiplicity: c.multiplicity }).collect();
        let kernel = clusters.iter().filter(|c| c.eigenvalue.abs() <= tol.cluster).map(|c| c.multiplicity).sum::<usize>();
        let mut lambdas: Vec<f64> =
            clusters.iter().filter(|c| c.eigenvalue.abs() > tol.cluster).map(|c| (-c.eigenvalue).max(0.0).sqrt()).collect();
        lambdas.sort_by(f64::total_cmp);
        per_reeb.push(ReebSpectrum {
            index: i + 1,
            r: lambdas.len(),
            lambdas,
            kernel_multiplicity: kernel,
            p: kernel.saturating_sub(s) / 2,
            clusters,
            drift,
            shape_stable: stable,
        });
        for (sp, spec) in points.iter().zip(&specs) {
            for j in 0..s {
                if j != i {
                    simultaneous = simultaneous.max(off_block(spec, &(&sp.h[j] * &sp.h[j]), sp.g()));
                }
            }
        }
    }
    for i in 0..s {
        for j in (i + 1)..s {
            let c = points.iter().map(|sp| crate::fstructure::max_abs(&(&sp.h[i] * &sp.h[j] - &sp.h[j] * &sp.h[i]))).fold(0.0, f64::max);
            commutators.push((i + 1, j + 1, c));
        }
    }
    Ok(SpectrumReport { per_reeb, commutators, simultaneous_residual: simultaneous, hypotheses })
}

/// Whether a measured shape matches an expected `(eigenvalue, multiplicity)` list.
pub fn shape_matches(spec: &ReebSpectrum, expected: &[(f64, usize)], tol: f64) -> bool {
    spec.clusters.len() == expected.len()
        && spec.clusters.iter().zip(expected).all(|(c, (e, m))| c.multiplicity == *m && (c.eigenvalue - e).abs() <= tol)
}
