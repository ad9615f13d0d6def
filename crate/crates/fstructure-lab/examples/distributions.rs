//! Involutivity and total geodesy of the eigendistributions of h².

use fstructure_lab::catalog;
use fstructure_lab::verify::{run, RunOptions, Suite};

fn main() -> fstructure_lab::Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "product-b5-nk:lambda=1".into());
    let e = catalog::build(&name)?;
    let r = run(&e.structure, &e.manifest, &RunOptions { suites: vec![Suite::Distributions], ..RunOptions::default() })?;
    for e in r.entries.iter().filter(|e| e.suite == "distributions") {
        match e.max_residual {
            Some(v) => println!("{:<36} {v:.2e}", e.id),
            None => println!("{:<36} empty", e.id),
        }
    }
    Ok(())
}
