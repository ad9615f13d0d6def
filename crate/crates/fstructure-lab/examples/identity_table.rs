//! Print the pointwise identity table as markdown.

use fstructure_lab::verify::identities::{all, TolClass};

fn main() {
    println!("| key | formula | tolerance | hypotheses | per Reeb index |");
    println!("|---|---|---|---|---|");
    for i in all() {
        let tol = match i.tol {
            TolClass::Axioms => "axioms",
            TolClass::Connection => "connection",
            TolClass::Curvature => "curvature",
            TolClass::Lemma => "lemma",
            TolClass::Drift => "drift",
        };
        let gate: Vec<&str> = i.gate.iter().map(|h| h.name()).collect();
        let gate = if gate.is_empty() { "none".to_string() } else { gate.join(", ") };
        println!(
            "| `{}/{}` | `{}` | {tol} | {gate} | {} |",
            i.suite,
            i.id,
            i.formula.replace('|', "\\|"),
            if i.reeb { "yes" } else { "no" }
        );
    }
}
