//! The nine acceptance criteria, one printed line each.
//!
//! Runs without the libtest harness so the lines always reach stdout.

use fstructure_lab::catalog::{self, rotate_two_structures, RotationPair, CATALOG, CONTROLS};
use fstructure_lab::fstructure::{max_abs, StructurePoint};
use fstructure_lab::multilinear::{binomial, lefschetz_rank, multi_indices, numerical_rank, KForm};
use fstructure_lab::verify::{identities, oracle_report, run, RunOptions, Status, Suite, SuiteReport, Verdict};
use fstructure_lab::Error;
use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

/// One-ulp-scale rounding of constant entries such as `√2·√2` or `sin t cos t`.
const ROUNDOFF: f64 = 8.0 * f64::EPSILON;

struct Outcome {
    ok: bool,
    detail: String,
}

fn report(name: &str, opts: &RunOptions) -> SuiteReport {
    let e = catalog::build(name).unwrap_or_else(|e| panic!("{name}: {e}"));
    run(&e.structure, &e.manifest, opts).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn res(r: &SuiteReport, suite: &str, id: &str) -> f64 {
    r.residual(suite, id).unwrap_or(f64::NAN)
}

fn gaussian(d: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    (0..d).map(|_| StandardNormal.sample(rng)).collect()
}

fn unit(sp: &StructurePoint, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let v = gaussian(sp.d, rng);
    let n = sp.norm(&v);
    v.iter().map(|x| x / n).collect()
}

fn ac1() -> Outcome {
    let opts = RunOptions { suites: vec![Suite::Axioms], ..RunOptions::default() };
    let constant = ["flat:", "rotated:", "product-flat:"];
    let mut worst: f64 = 0.0;
    let mut worst_const: f64 = 0.0;
    let mut ok = true;
    for name in CATALOG {
        let r = report(name, &opts);
        let m = identities::AXIOM_IDS
            .iter()
            .filter(|i| i.tol == identities::TolClass::Axioms)
            .filter_map(|i| r.residual("axioms", i.id))
            .fold(0.0, f64::max);
        worst = worst.max(m);
        ok &= m <= 1e-9;
        if constant.iter().any(|p| name.starts_with(p)) {
            worst_const = worst_const.max(m);
            ok &= m <= ROUNDOFF;
        }
    }
    Outcome { ok, detail: format!("{} entries, max axiom residual {worst:.2e}, constant-field entries {worst_const:.2e}", CATALOG.len()) }
}

fn ac2() -> Outcome {
    let mut gamma: f64 = 0.0;
    let mut riem: f64 = 0.0;
    let mut sym: f64 = 0.0;
    let opts = RunOptions { suites: vec![Suite::Axioms], points: 16, ..RunOptions::default() };
    for name in CATALOG.iter().chain(CONTROLS) {
        let e = catalog::build(name).unwrap();
        let pts = e.structure.sample_points(8, 0x5EED);
        let o = oracle_report(&e.structure.host, &pts).unwrap();
        gamma = gamma.max(o.fine.gamma);
        riem = riem.max(o.fine.riemann);
        let r = run(&e.structure, &e.manifest, &opts).unwrap();
        sym = sym.max(res(&r, "axioms", "riemann_symmetries")).max(res(&r, "axioms", "bianchi"));
    }
    Outcome {
        ok: gamma <= 1e-5 && riem <= 1e-5 && sym <= 1e-10,
        detail: format!("step 1e-4: max Gamma dev {gamma:.2e}, max Riemann dev {riem:.2e}; symmetries/Bianchi {sym:.2e}"),
    }
}

fn ac3() -> Outcome {
    let s = catalog::s6_nearly_kahler().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut diag: f64 = 0.0;
    let mut off: f64 = 0.0;
    let mut sec: f64 = 0.0;
    for p in s.sample_points(512, 0x5EED) {
        let sp = s.at(&p).unwrap();
        let x = unit(&sp, &mut rng);
        let y = unit(&sp, &mut rng);
        let nx = sp.nabla_f(&x);
        diag = diag.max(sp.norm(&sp.mv(&nx, &x)));
        off = off.max(sp.norm(&sp.mv(&nx, &y)));
        sec = sec.max((sp.geo.sectional(&x, &y) - 1.0).abs());
    }
    Outcome {
        ok: diag <= 1e-8 && off > 0.1 && sec <= 1e-8,
        detail: format!("512 samples: max |(nabla_X J)X| {diag:.2e}, max |(nabla_X J)Y| {off:.3}, |K - 1| {sec:.2e}"),
    }
}

fn ac4() -> Outcome {
    let r = report("s5", &RunOptions::default());
    let nearly = res(&r, "lemmas", "nearly_c");
    let killing = res(&r, "reeb", "xi_killing");
    let lemmas: Vec<_> = r.entries.iter().filter(|e| e.suite == "lemmas").collect();
    let all_pass = lemmas.iter().all(|e| e.status == Status::Pass && e.max_residual.is_some_and(|v| v <= 1e-7));
    let spec = r.spectrum.as_ref().unwrap();
    let shape_ok = fstructure_lab::verify::spectral::shape_matches(&spec.per_reeb[0], &[(0.0, 1), (-1.0, 4)], 1e-6);
    let drift = spec.per_reeb[0].drift;
    let sectional = res(&r, "fkcontact", "xi_sectional");

    let s = catalog::s5_nearly_cosymplectic().unwrap();
    let mut deta: f64 = 0.0;
    let mut ric: f64 = 0.0;
    for p in s.sample_points(64, 0x5EED) {
        let sp = s.at(&p).unwrap();
        deta = deta.max(max_abs(&sp.deta[0]));
        ric = ric.max((sp.geo.ricci(&sp.xi[0], &sp.xi[0]) - 4.0).abs());
    }
    Outcome {
        ok: nearly <= 1e-8 && deta > 0.1 && killing <= 1e-8 && all_pass && shape_ok && drift <= 1e-6 && ric <= 1e-5 && sectional <= 1e-6,
        detail: format!(
            "nearly-C {nearly:.1e}, max|d eta| {deta:.2}, Killing {killing:.1e}, {} lemma entries pass={all_pass}, spec {{0x1,-1x4}}={shape_ok} drift {drift:.1e}, |Ric(xi,xi)-4| {ric:.1e}, |K(xi,X)-|hX|^2| {sectional:.1e}",
            lemmas.len()
        ),
    }
}

fn ac5() -> Outcome {
    let r = report("s5-scaled:lambda=2", &RunOptions::default());
    let axioms_ok = r.entries.iter().filter(|e| e.suite == "axioms").all(|e| e.status == Status::Pass || e.max_residual.is_none());
    let items = ["nabla_h_xi", "nabla_f_xi", "h_f_anticommute", "h_q_commute", "curvature_f_derivation"];
    let items_ok = items.iter().all(|id| r.entry("lemmas", id).is_some_and(|e| e.status == Status::Pass));
    let qp = res(&r, "lemmas", "q_parallel_on_d");
    let gated = identities::gated_on(&[identities::Hyp::QParallel]);
    let skipped = gated.iter().all(|k| {
        let (suite, id) = k.split_once('/').unwrap();
        r.entry(suite, id).is_some_and(|e| e.status == Status::Skipped)
    });
    let p = report("s5-perturbed:eps=0.01", &RunOptions { suites: vec![Suite::Lemmas], ..RunOptions::default() });
    let nearly = res(&p, "lemmas", "nearly_c");
    Outcome {
        ok: axioms_ok && items_ok && qp > 1e-3 && skipped && nearly > 1e-3 && r.consistent() && p.consistent(),
        detail: format!(
            "lambda=2: axioms pass={axioms_ok}, (a)-(d),(f) pass={items_ok}, Q-parallel residual {qp:.3}, {} gated entries SKIPPED={skipped}; perturbed nearly-C {nearly:.2e}",
            gated.len()
        ),
    }
}

fn ac6() -> Outcome {
    let mut worst: f64 = 0.0;
    for t in [0.1, std::f64::consts::FRAC_PI_4] {
        let s = rotate_two_structures(t, RotationPair::SelfDual).unwrap();
        for p in s.sample_points(16, 1) {
            let sp = s.at(&p).unwrap();
            let mut eta_xi = DMatrix::zeros(sp.d, sp.d);
            for a in 0..sp.d {
                for b in 0..sp.d {
                    eta_xi[(a, b)] = sp.xi[0][a] * sp.eta[0][b];
                }
            }
            worst = worst.max(max_abs(&(&sp.f * &sp.f + &sp.q - eta_xi)));
        }
    }
    let rejected =
        matches!(rotate_two_structures(std::f64::consts::FRAC_PI_4, RotationPair::AntiSelfDual), Err(Error::InvalidParameter(_)));
    let small = rotate_two_structures(0.1, RotationPair::AntiSelfDual).is_ok();
    Outcome {
        ok: worst <= ROUNDOFF && rejected && small,
        detail: format!("max |f^2 + Q - eta(x)xi| {worst:.1e} at t in {{0.1, pi/4}}; asd pair: t=0.1 accepted={small}, t=pi/4 rejected as not SPD={rejected}"),
    }
}

fn ac7() -> Outcome {
    let opts = RunOptions::default();
    let mut ok = true;
    let mut parts = Vec::new();
    for name in ["product-s6:s=1", "product-s6:s=2"] {
        let r = report(name, &opts);
        let v = r.verdict.as_ref().unwrap();
        let h = v.evidence["max_h_norm"];
        ok &= v.verdict == Verdict::ProductWithRs && h <= 1e-9;
        parts.push(format!("{name} {} |h| {h:.1e}", v.verdict.as_str()));
    }
    let b = report("product-b5-nk:lambda=1", &opts);
    let inv = res(&b, "distributions", "D1,0:involutive");
    let geo = res(&b, "distributions", "D1,0:totally_geodesic");
    let shape = fstructure_lab::verify::spectral::shape_matches(&b.spectrum.as_ref().unwrap().per_reeb[0], &[(0.0, 5), (-1.0, 4)], 1e-6);
    let bv = b.verdict.as_ref().unwrap().verdict;
    ok &= bv == Verdict::B4sTimesNkCandidate && inv <= 1e-7 && geo <= 1e-7 && shape;
    parts.push(format!("b5-nk(1) {} D1,0 inv {inv:.1e} geo {geo:.1e} spec {{0x5,-1x4}}={shape}", bv.as_str()));
    let s = report("s5", &opts);
    let sv = s.verdict.as_ref().unwrap().verdict;
    let hat = s.measurements.get("hat_q_minus_id_on_d").copied().unwrap_or(f64::NAN);
    let fk = s.entries.iter().filter(|e| e.suite == "fkcontact").all(|e| e.status == Status::Pass);
    ok &= sv == Verdict::NoSplitDetected && fk && hat <= 1e-6;
    parts.push(format!("s5 {} fk-contact pass={fk} |hatQ - Id| on D {hat:.1e}", sv.as_str()));
    Outcome { ok, detail: parts.join("; ") }
}

/// `β ↦ ω ∧ β` assembled from the shuffle formula, independent of the library's map.
fn brute_force_rank(omega: &KForm) -> usize {
    let d = omega.dim;
    let pairs = multi_indices(d, 2);
    let quads = multi_indices(d, 4);
    let w = |a: usize, b: usize| -> f64 {
        if a < b {
            omega.get(&[a, b])
        } else if a > b {
            -omega.get(&[b, a])
        } else {
            0.0
        }
    };
    let mut m = DMatrix::zeros(quads.len(), pairs.len());
    for (col, jk) in pairs.iter().enumerate() {
        for (row, q) in quads.iter().enumerate() {
            // (2,2)-shuffles of q with signs
            let shuffles = [
                ((0, 1), (2, 3), 1.0),
                ((0, 2), (1, 3), -1.0),
                ((0, 3), (1, 2), 1.0),
                ((1, 2), (0, 3), 1.0),
                ((1, 3), (0, 2), -1.0),
                ((2, 3), (0, 1), 1.0),
            ];
            let mut v = 0.0;
            for ((a, b), (c, e), sign) in shuffles {
                let beta = if [q[c], q[e]] == [jk[0], jk[1]] { 1.0 } else { 0.0 };
                v += sign * w(q[a], q[b]) * beta;
            }
            m[(row, col)] = v;
        }
    }
    numerical_rank(&m, 1e-8)
}

fn symplectic(blocks: usize, d: usize) -> KForm {
    let p = vec![0.0; d];
    let mut w = KForm::zero(2, d, &p);
    for b in 0..blocks {
        w = w.add(&KForm::basis(&[2 * b, 2 * b + 1], d, &p).unwrap()).unwrap();
    }
    w
}

fn ac8() -> Outcome {
    let w7 = symplectic(3, 7);
    let w5 = symplectic(2, 5);
    let (r7, full7) = lefschetz_rank(&w7, 7).unwrap();
    let (r5, full5) = lefschetz_rank(&w5, 5).unwrap();
    let (b7, b5) = (brute_force_rank(&w7), brute_force_rank(&w5));
    let s5 = report("s5", &RunOptions { suites: vec![Suite::Lefschetz], ..RunOptions::default() });
    let s5_rank = s5.measurements.get("lefschetz_rank_max").copied().unwrap_or(f64::NAN);
    Outcome {
        ok: r7 == 21 && full7 && b7 == 21 && binomial(7, 2) == 21 && r5 <= 5 && !full5 && b5 == r5 && s5_rank <= 5.0 && s5.consistent(),
        detail: format!(
            "d=7,n=3: rank {r7} (brute force {b7}) full={full7}; d=5: rank {r5} (brute force {b5}) full={full5}; S5 d eta rank {s5_rank}"
        ),
    }
}

fn ac9() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let mut jsons = Vec::new();
    for k in 0..2 {
        let out = dir.path().join(format!("run{k}.json"));
        let argv = ["fslab", "--catalog", "product-b5-nk:lambda=1", "--json-only", "--out", out.to_str().unwrap()];
        let code = fstructure_lab::cli::main_with_args(argv, &mut Vec::new(), &mut Vec::new());
        assert_eq!(code, 0);
        let mut v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
        v.as_object_mut().unwrap().remove("timestamp");
        jsons.push(serde_json::to_vec(&v).unwrap());
    }
    let a = report("s5", &RunOptions::default()).json_without_timestamp();
    let b = report("s5", &RunOptions::default()).json_without_timestamp();
    Outcome {
        ok: jsons[0] == jsons[1] && a == b,
        detail: format!(
            "two CLI runs: {} bytes each, identical={}; library runs identical={}",
            jsons[0].len(),
            jsons[0] == jsons[1],
            a == b
        ),
    }
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("axioms", ac1),
        ("oracle equivalence", ac2),
        ("S6 nearly Kahler", ac3),
        ("S5 nearly cosymplectic", ac4),
        ("expected failure", ac5),
        ("rotated example", ac6),
        ("splitting", ac7),
        ("Lefschetz", ac8),
        ("determinism", ac9),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let o = f();
        println!("AC{} {:<24} {}  {}", k + 1, name, if o.ok { "PASS" } else { "FAIL" }, o.detail);
        if !o.ok {
            failed += 1;
        }
    }
    println!("acceptance: {}/9 criteria pass", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
