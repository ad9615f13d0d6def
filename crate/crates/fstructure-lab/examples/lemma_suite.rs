//! The lemma identities on S⁵ and its λ = 2 rescaling side by side.

use fstructure_lab::catalog;
use fstructure_lab::verify::{run, RunOptions, Suite};

fn main() -> fstructure_lab::Result<()> {
    let opts = RunOptions { suites: vec![Suite::Lemmas], points: 16, ..RunOptions::default() };
    let a = catalog::build("s5")?;
    let b = catalog::build("s5-scaled:lambda=2")?;
    let ra = run(&a.structure, &a.manifest, &opts)?;
    let rb = run(&b.structure, &b.manifest, &opts)?;
    let show = |e: Option<&fstructure_lab::verify::Entry>| match e {
        Some(e) => match e.max_residual {
            Some(v) => format!("{v:>10.2e}"),
            None => format!("{:>10}", "skipped"),
        },
        None => String::new(),
    };
    println!("{:<32} {:>10} {:>10}", "id", "lambda=1", "lambda=2");
    for e in &ra.entries {
        println!("{:<32} {} {}", e.id, show(Some(e)), show(rb.entry(&e.suite, &e.id)));
    }
    Ok(())
}
