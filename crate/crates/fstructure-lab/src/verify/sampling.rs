use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::fstructure::StructurePoint;

/// Default seed for sample points and vector draws.
pub const DEFAULT_SEED: u64 = 0x5EED;

/// Vector stream for point `index`: one ChaCha stream per point, so draws do
/// not depend on evaluation order.
pub fn point_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

/// Standard Gaussian in the chart basis, scaled to g-unit length.
pub fn unit_vector(sp: &StructurePoint, rng: &mut ChaCha8Rng) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..sp.d).map(|_| StandardNormal.sample(rng)).collect();
        let n = sp.norm(&v);
        if n > 1e-8 {
            return v.iter().map(|x| x / n).collect();
        }
    }
}

/// Unit vector in the contact distribution.
pub fn unit_d_vector(sp: &StructurePoint, rng: &mut ChaCha8Rng) -> Vec<f64> {
    loop {
        let v = sp.project_d(&unit_vector(sp, rng));
        let n = sp.norm(&v);
        if n > 1e-6 {
            return v.iter().map(|x| x / n).collect();
        }
        if sp.d == sp.s {
            return v;
        }
    }
}

/// One draw of the vectors every pointwise identity consumes.
#[derive(Debug, Clone)]
pub struct Draw {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub z: Vec<f64>,
    pub v: Vec<f64>,
    /// Unit vectors in `𝒟`.
    pub xd: Vec<f64>,
    pub yd: Vec<f64>,
    pub zd: Vec<f64>,
}

impl Draw {
    pub fn new(sp: &StructurePoint, rng: &mut ChaCha8Rng) -> Self {
        Draw {
            x: unit_vector(sp, rng),
            y: unit_vector(sp, rng),
            z: unit_vector(sp, rng),
            v: unit_vector(sp, rng),
            xd: unit_d_vector(sp, rng),
            yd: unit_d_vector(sp, rng),
            zd: unit_d_vector(sp, rng),
        }
    }
}
