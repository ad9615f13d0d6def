//! Load a structure from TOML and run two suites on it.

use fstructure_lab::cli::structure_file::load_structure;
use fstructure_lab::verify::{run, RunOptions, Suite};

fn main() -> fstructure_lab::Result<()> {
    let path = std::env::args().nth(1).unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/warped-3.toml").into());
    let (s, manifest) = load_structure(std::path::Path::new(&path))?;
    let r = run(&s, &manifest, &RunOptions { suites: vec![Suite::Axioms, Suite::Reeb], points: 16, ..RunOptions::default() })?;
    for e in &r.entries {
        println!("{:<8} {:<24} {:>10} {:?}", e.suite, e.id, e.max_residual.map(|v| format!("{v:.2e}")).unwrap_or_default(), e.status);
    }
    println!("consistent with manifest: {}", r.consistent());
    Ok(())
}
