//! Rank of β ↦ dη ∧ β on 2-forms.

use fstructure_lab::catalog;
use fstructure_lab::verify::lefschetz_check;

fn main() -> fstructure_lab::Result<()> {
    for name in ["s5", "product-b5-nk:lambda=1", "flat:n=3,s=1"] {
        let s = catalog::build(name)?.structure;
        let sp = s.at(&s.sample_points(1, 4)[0])?;
        let l = lefschetz_check(&sp, 0, 1e-8)?;
        println!("{name:<24} rank {:>3}  full {:<5}  expected full {}", l.rank, l.full, l.expected_full);
    }
    Ok(())
}
