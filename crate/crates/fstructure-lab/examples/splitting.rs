//! The splitting classifier over the catalog.

use fstructure_lab::catalog;
use fstructure_lab::verify::{run, RunOptions, Suite};

fn main() -> fstructure_lab::Result<()> {
    let opts = RunOptions { suites: vec![Suite::Classify], points: 16, ..RunOptions::default() };
    for name in catalog::list() {
        let e = catalog::build(name)?;
        let r = run(&e.structure, &e.manifest, &opts)?;
        if let Some(v) = &r.verdict {
            println!("{name:<28} {:<24} max|h| {:.2e}", v.verdict.as_str(), v.evidence.get("max_h_norm").copied().unwrap_or(0.0));
        }
    }
    println!("\n{}", fstructure_lab::verify::classify::DISCLAIMER);
    Ok(())
}
