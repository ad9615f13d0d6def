//! Run every catalog entry through all suites and print the mismatches.

use fstructure_lab::catalog;
use fstructure_lab::verify::{run, RunOptions};

fn main() -> fstructure_lab::Result<()> {
    let mut opts = RunOptions::default();
    if let Some(n) = std::env::args().nth(1) {
        opts.points = n.parse().expect("points");
    }
    let filter = std::env::args().nth(2);
    for name in catalog::list() {
        if filter.as_deref().is_some_and(|f| !name.starts_with(f)) {
            continue;
        }
        let entry = catalog::build(name)?;
        let t = std::time::Instant::now();
        let rep = run(&entry.structure, &entry.manifest, &opts)?;
        let verdict = rep.verdict.as_ref().map(|v| v.verdict.as_str()).unwrap_or("-");
        println!("{name:<36} consistent={} verdict={verdict} ({:.1}s)", rep.consistent(), t.elapsed().as_secs_f64());
        for e in rep.mismatches() {
            println!(
                "    {}/{} status={:?} expected={:?} residual={:?} note={}",
                e.suite,
                e.id,
                e.status,
                e.expected,
                e.max_residual,
                e.note.as_deref().unwrap_or("")
            );
        }
    }
    Ok(())
}
