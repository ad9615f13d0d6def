//! Spectrum of h² and its constancy across the sample.

use fstructure_lab::catalog;
use fstructure_lab::verify::{run, RunOptions, Suite};

fn main() -> fstructure_lab::Result<()> {
    for name in ["s5", "product-b5-nk:lambda=2", "product-s6:s=2"] {
        let e = catalog::build(name)?;
        let r = run(&e.structure, &e.manifest, &RunOptions { suites: vec![Suite::Spectral], ..RunOptions::default() })?;
        let spec = r.spectrum.expect("spectral suite ran");
        for s in &spec.per_reeb {
            let shape: Vec<String> = s.clusters.iter().map(|c| format!("{:.3}x{}", c.eigenvalue, c.multiplicity)).collect();
            println!("{name:<24} h_{}^2: {{{}}} p={} r={} drift {:.1e}", s.index, shape.join(", "), s.p, s.r, s.drift);
        }
        for (i, j, c) in &spec.commutators {
            println!("{name:<24} |[h_{i}, h_{j}]| = {c:.1e}");
        }
    }
    Ok(())
}
