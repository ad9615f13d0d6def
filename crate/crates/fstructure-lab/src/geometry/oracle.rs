use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::chart::ChartManifold;
use super::connection::{riemann_from_gamma, LocalGeometry};
use crate::error::{Error, Result};

/// Γ from central differences of the metric values with step `h`.
pub fn fd_christoffel(m: &ChartManifold, p: &[f64], h: f64) -> Result<Vec<f64>> {
    let d = m.dim();
    let g = m.metric_value(p)?;
    let g_inv = g.clone().cholesky().ok_or_else(|| Error::DegenerateMetric { point: p.to_vec() })?.inverse();
    let mut dg = vec![0.0; d * d * d];
    let mut q = p.to_vec();
    for c in 0..d {
        q[c] = p[c] + h;
        let plus = m.metric_value(&q)?;
        q[c] = p[c] - h;
        let minus = m.metric_value(&q)?;
        q[c] = p[c];
        for i in 0..d {
            for j in 0..d {
                dg[(i * d + j) * d + c] = (plus[(i, j)] - minus[(i, j)]) / (2.0 * h);
            }
        }
    }
    Ok(gamma_from(&g_inv, &dg, d))
}

fn gamma_from(g_inv: &DMatrix<f64>, dg: &[f64], d: usize) -> Vec<f64> {
    let dgi = |i: usize, j: usize, c: usize| dg[(i * d + j) * d + c];
    let mut gamma = vec![0.0; d * d * d];
    for k in 0..d {
        for i in 0..d {
            for j in 0..d {
                gamma[(k * d + i) * d + j] = (0..d).map(|l| 0.5 * g_inv[(k, l)] * (dgi(j, l, i) + dgi(i, l, j) - dgi(i, j, l))).sum();
            }
        }
    }
    gamma
}

/// `R^a_{bce}` from central differences of the finite-difference Γ.
pub fn fd_riemann_op(m: &ChartManifold, p: &[f64], h: f64) -> Result<Vec<f64>> {
    let d = m.dim();
    let gamma = fd_christoffel(m, p, h)?;
    let mut dgamma = vec![0.0; d * d * d * d];
    let mut q = p.to_vec();
    for e in 0..d {
        q[e] = p[e] + h;
        let plus = fd_christoffel(m, &q, h)?;
        q[e] = p[e] - h;
        let minus = fd_christoffel(m, &q, h)?;
        q[e] = p[e];
        for (k, (a, b)) in plus.iter().zip(&minus).enumerate() {
            dgamma[k * d + e] = (a - b) / (2.0 * h);
        }
    }
    Ok(riemann_from_gamma(d, &gamma, &dgamma))
}

/// Jet-versus-difference comparison at one step size.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleDeviation {
    pub step: f64,
    pub gamma: f64,
    pub riemann: f64,
}

fn max_dev(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).fold(0.0, |m, (x, y)| m.max((x - y).abs()))
}

pub fn oracle_deviation(m: &ChartManifold, p: &[f64], step: f64) -> Result<OracleDeviation> {
    let geo = LocalGeometry::at(m, p)?;
    Ok(OracleDeviation {
        step,
        gamma: max_dev(&geo.gamma, &fd_christoffel(m, p, step)?),
        riemann: max_dev(&geo.riemann_op, &fd_riemann_op(m, p, step)?),
    })
}

/// Below this the deviations are round-off and the order check is moot.
const RICHARDSON_FLOOR: f64 = 1e-12;

/// A coarse/fine pair whose deviations should shrink with the step.
/// Returns a warning when the finer step is no better than the coarse one.
pub fn richardson_warning(coarse: &OracleDeviation, fine: &OracleDeviation) -> Option<String> {
    let worse = |c: f64, f: f64| f > RICHARDSON_FLOOR && f >= c;
    if worse(coarse.gamma, fine.gamma) || worse(coarse.riemann, fine.riemann) {
        Some(format!(
            "deviation did not shrink from step {:e} to {:e} (gamma {:e} -> {:e}, riemann {:e} -> {:e}); step may be too small",
            coarse.step, fine.step, coarse.gamma, fine.gamma, coarse.riemann, fine.riemann
        ))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::chart::SamplingDomain;
    use crate::jets::ScalarField;

    #[test]
    fn flat_deviation_is_zero() {
        let m = ChartManifold::euclidean("e4", 2, 0, SamplingDomain::cube(4, 1.0));
        let dev = oracle_deviation(&m, &[0.1, 0.2, -0.3, 0.4], 1e-4).unwrap();
        assert_eq!((dev.gamma, dev.riemann), (0.0, 0.0));
    }

    #[test]
    fn curved_deviation_shrinks() {
        // round sphere in geodesic polar coordinates; not polynomial, so the stencil has truncation error
        let s = ScalarField::coord(0).sin();
        let m = ChartManifold::new("sphere", 1, 0, vec![ScalarField::one(), ScalarField::zero(), &s * &s], SamplingDomain::cube(2, 3.0))
            .unwrap();
        let coarse = oracle_deviation(&m, &[1.3, 0.2], 1e-2).unwrap();
        let fine = oracle_deviation(&m, &[1.3, 0.2], 1e-3).unwrap();
        assert!(fine.gamma < coarse.gamma);
        assert!(richardson_warning(&coarse, &fine).is_none());
    }
}
