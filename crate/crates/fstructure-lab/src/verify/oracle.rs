use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::geometry::oracle::{oracle_deviation, richardson_warning, OracleDeviation};
use crate::geometry::ChartManifold;

/// Step compared against the jets.
pub const ORACLE_STEP: f64 = 1e-4;
/// Coarser step for the order check.
pub const COARSE_STEP: f64 = 1e-3;

/// Finite-difference cross-check of Γ and R over a set of points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub points: usize,
    pub fine: OracleDeviation,
    pub coarse: OracleDeviation,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
}

fn worst(a: OracleDeviation, b: &OracleDeviation) -> OracleDeviation {
    OracleDeviation { step: a.step, gamma: a.gamma.max(b.gamma), riemann: a.riemann.max(b.riemann) }
}

pub fn oracle_report(m: &ChartManifold, points: &[Vec<f64>]) -> Result<OracleReport> {
    let mut fine = OracleDeviation { step: ORACLE_STEP, gamma: 0.0, riemann: 0.0 };
    let mut coarse = OracleDeviation { step: COARSE_STEP, gamma: 0.0, riemann: 0.0 };
    for p in points {
        fine = worst(fine, &oracle_deviation(m, p, ORACLE_STEP)?);
        coarse = worst(coarse, &oracle_deviation(m, p, COARSE_STEP)?);
    }
    let warning = richardson_warning(&coarse, &fine);
    Ok(OracleReport { points: points.len(), fine, coarse, warning })
}
