//! Pointwise axiom residuals for a catalog entry: `cargo run --example axioms -- flat:n=2,s=1`.

use fstructure_lab::catalog;
use fstructure_lab::fstructure::validate_axioms;

fn main() -> fstructure_lab::Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "s5-scaled:lambda=2".into());
    let s = catalog::build(&name)?.structure;
    for p in s.sample_points(4, 3) {
        let r = validate_axioms(&s, &p)?;
        println!("{:?}", p.iter().map(|v| format!("{v:+.3}")).collect::<Vec<_>>());
        for (id, v) in r.failures(0.0) {
            println!("  {id:<20} {v:.2e}");
        }
    }
    Ok(())
}
