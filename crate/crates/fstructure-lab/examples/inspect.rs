//! Print every entry of one catalog run: `cargo run --example inspect -- s5`.

use fstructure_lab::catalog;
use fstructure_lab::verify::{run, RunOptions};

fn main() -> fstructure_lab::Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "s5".into());
    let entry = catalog::build(&name)?;
    let rep = run(&entry.structure, &entry.manifest, &RunOptions { oracle: true, ..RunOptions::default() })?;
    for e in &rep.entries {
        let r = e.max_residual.map(|r| format!("{r:.3e}")).unwrap_or_else(|| "-".into());
        println!("{:<14} {:<40} {:>11} {:?} {}", e.suite, e.id, r, e.status, e.note.as_deref().unwrap_or(""));
    }
    for (k, v) in &rep.measurements {
        println!("measure {k} = {v:.6e}");
    }
    if let Some(o) = &rep.oracle {
        println!("oracle {:?}", o);
    }
    if let Some(s) = &rep.spectrum {
        println!("spectrum {:?}", s.per_reeb);
    }
    Ok(())
}
