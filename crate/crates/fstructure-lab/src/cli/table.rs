use std::fmt::Write;

use crate::verify::{Status, SuiteReport};

fn status_name(s: Status) -> &'static str {
    match s {
        Status::Pass => "PASS",
        Status::Fail => "FAIL",
        Status::ExpectedFail => "EXPECTED-FAIL",
        Status::UnexpectedPass => "UNEXPECTED-PASS",
        Status::Skipped => "SKIPPED",
    }
}

/// Fixed-width human summary of a report.
pub fn render_table(r: &SuiteReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "structure  {}  (d={}, n={}, s={})", r.structure, r.dim, r.n, r.s);
    let _ = writeln!(out, "hash       {}", r.structure_hash);
    let _ = writeln!(out, "seed       {}  points {}  vectors {}", r.seed, r.points, r.vectors);
    let _ = writeln!(out, "{:<14} {:<34} {:>11} {:>9}  {:<15} {:<8} OK", "SUITE", "ID", "RESIDUAL", "TOL", "STATUS", "EXPECT");
    for e in &r.entries {
        let res = e.max_residual.map(|v| format!("{v:.3e}")).unwrap_or_else(|| "-".into());
        let exp = format!("{:?}", e.expected).to_lowercase();
        let _ = writeln!(
            out,
            "{:<14} {:<34} {:>11} {:>9.1e}  {:<15} {:<8} {}",
            e.suite,
            e.id,
            res,
            e.tolerance,
            status_name(e.status),
            exp,
            if e.matches_manifest { "yes" } else { "NO" }
        );
        if let Some(n) = &e.note {
            if e.status == Status::Skipped || !e.matches_manifest {
                let _ = writeln!(out, "{:<14}   {}", "", n);
            }
        }
    }
    if let Some(sp) = &r.spectrum {
        for rs in &sp.per_reeb {
            let shape: Vec<String> = rs.clusters.iter().map(|c| format!("{:.6}x{}", c.eigenvalue, c.multiplicity)).collect();
            let _ = writeln!(out, "spectrum   h_{}^2: {{{}}}  drift {:.2e}", rs.index, shape.join(", "), rs.drift);
        }
    }
    if let Some(v) = &r.verdict {
        let _ = writeln!(out, "verdict    {}  ({})", v.verdict.as_str(), v.disclaimer);
    }
    if let Some(o) = &r.oracle {
        let _ = writeln!(
            out,
            "oracle     step {:e}: gamma {:.2e}, riemann {:.2e}; step {:e}: gamma {:.2e}, riemann {:.2e}",
            o.fine.step, o.fine.gamma, o.fine.riemann, o.coarse.step, o.coarse.gamma, o.coarse.riemann
        );
        if let Some(w) = &o.warning {
            let _ = writeln!(out, "warning    {w}");
        }
    }
    let bad = r.mismatches().len();
    let _ = writeln!(out, "{} entries, {} mismatches: {}", r.entries.len(), bad, if bad == 0 { "CONSISTENT" } else { "MISMATCH" });
    out
}
