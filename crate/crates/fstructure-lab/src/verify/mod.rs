//! Verification suites over sampled points of a structure.

pub mod classify;
pub mod distributions;
pub mod fkcontact;
pub mod identities;
pub mod lefschetz;
pub mod oracle;
pub mod pointwise;
pub mod report;
pub mod sampling;
pub mod spectral;

use std::collections::BTreeMap;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use rayon::prelude::*;

use crate::catalog::Manifest;
use crate::error::{Error, Result};
use crate::fstructure::{max_abs, ResidualRecord, StructurePoint, WeakMetricFStructureField};

pub use classify::{splitting_classifier, Evidence, SplitVerdict, Verdict};
pub use distributions::DistributionResult;
pub use fkcontact::{deta_nullity, induced_fk_contact, xi_sectional_residual, HatStructure};
pub use identities::{Hyp, Identity, TolClass};
pub use lefschetz::{lefschetz_check, LefschetzResult};
pub use oracle::{oracle_report, OracleReport};
pub use report::{apply_manifest, Entry, EntryList, Outcome, SkipKind, Status, SuiteReport, Tolerances, SCHEMA_VERSION};
pub use sampling::DEFAULT_SEED;
pub use spectral::{h2_spectrum, spectral_report, SpectrumReport};

pub const CURVATURE_CONVENTION: &str =
    "R(X,Y) = [nabla_X, nabla_Y] - nabla_[X,Y]; R(X,Y,Z,V) = g(R(X,Y)Z, V); K(X,Y) = R(X,Y,Y,X) for g-orthonormal X, Y";
pub const Q_TILDE: &str = "Q~ = Q - Id";

/// Points at which the oracle recomputes Γ and R.
const ORACLE_POINTS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Axioms,
    Reeb,
    Lemmas,
    Spectral,
    Distributions,
    Classify,
    Fkcontact,
    Lefschetz,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Axioms,
        Suite::Reeb,
        Suite::Lemmas,
        Suite::Spectral,
        Suite::Distributions,
        Suite::Classify,
        Suite::Fkcontact,
        Suite::Lefschetz,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Axioms => "axioms",
            Suite::Reeb => "reeb",
            Suite::Lemmas => "lemmas",
            Suite::Spectral => "spectral",
            Suite::Distributions => "distributions",
            Suite::Classify => "classify",
            Suite::Fkcontact => "fkcontact",
            Suite::Lefschetz => "lefschetz",
        }
    }

    pub fn parse(name: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|s| s.name() == name)
            .ok_or_else(|| Error::Config(format!("unknown suite {name:?}; known: all, {}", Suite::ALL.map(|s| s.name()).join(", "))))
    }

    /// Comma-separated list; `all` selects every suite. Sorted, deduplicated.
    pub fn parse_list(list: &str) -> Result<Vec<Suite>> {
        let mut out = Vec::new();
        for tok in list.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            if tok == "all" {
                out.extend(Suite::ALL);
            } else {
                out.push(Suite::parse(tok)?);
            }
        }
        if out.is_empty() {
            return Err(Error::Config("empty suite list".into()));
        }
        out.sort();
        out.dedup();
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOptions {
    pub points: usize,
    pub vectors: usize,
    pub seed: u64,
    pub tol: Tolerances,
    pub suites: Vec<Suite>,
    pub oracle: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { points: 64, vectors: 8, seed: DEFAULT_SEED, tol: Tolerances::default(), suites: Suite::ALL.to_vec(), oracle: false }
    }
}

impl RunOptions {
    fn has(&self, s: Suite) -> bool {
        self.suites.contains(&s)
    }
}

fn tol_of(t: &Tolerances, c: TolClass) -> f64 {
    match c {
        TolClass::Axioms => t.axioms,
        TolClass::Connection => t.connection,
        TolClass::Curvature => t.curvature,
        TolClass::Lemma => t.lemma,
        TolClass::Drift => t.drift,
    }
}

/// Status of each hypothesis on the merged record.
fn hypotheses(rec: &ResidualRecord, tol: &Tolerances) -> BTreeMap<Hyp, (bool, f64)> {
    let check = |suite: &str, id: &str| -> (bool, f64) {
        let ident = identities::lookup(suite, id).expect("hypothesis id is in the table");
        match rec.get(id) {
            Some(v) => (v <= tol_of(tol, ident.tol), v),
            None => (true, 0.0),
        }
    };
    let mut out = BTreeMap::new();
    let mut ax = (true, 0.0f64);
    for ident in identities::AXIOM_IDS {
        let (ok, v) = check("axioms", ident.id);
        ax = (ax.0 && ok, if v.is_nan() { f64::NAN } else { ax.1.max(v) });
    }
    out.insert(Hyp::Axioms, ax);
    out.insert(Hyp::NearlyC, check("lemmas", "nearly_c"));
    out.insert(Hyp::XiBracket, check("reeb", "xi_bracket"));
    out.insert(Hyp::XiNormal, check("reeb", "xi_normal_parallel"));
    out.insert(Hyp::QParallel, check("lemmas", "q_parallel_on_d"));
    out.insert(Hyp::CurvInv, check("lemmas", "curvature_invariance_weak"));
    out
}

/// First failing hypothesis of a gate, as a skip reason.
fn gate_failure(gate: &[Hyp], hyps: &BTreeMap<Hyp, (bool, f64)>) -> Option<String> {
    let failed: Vec<String> = gate.iter().filter(|h| !hyps[h].0).map(|h| format!("{} (residual {:.3e})", h.name(), hyps[h].1)).collect();
    if failed.is_empty() {
        None
    } else {
        Some(format!("hypothesis failed: {}", failed.join(", ")))
    }
}

/// Run the selected suites on `s` and compare with `manifest`.
pub fn run(s: &WeakMetricFStructureField, manifest: &Manifest, opts: &RunOptions) -> Result<SuiteReport> {
    if opts.points == 0 {
        return Err(Error::Config("points must be at least 1".into()));
    }
    let started = Instant::now();
    let wall = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
    let tol = &opts.tol;
    let ns = s.s();
    let samples = opts.points * opts.vectors.max(1);

    let points = s.sample_points(opts.points, opts.seed);
    let evals: Vec<(StructurePoint, pointwise::PointEval)> = points
        .par_iter()
        .enumerate()
        .map(|(k, p)| {
            let sp = s.at(p)?;
            let ev = pointwise::evaluate_point(&sp, k, opts.vectors, opts.seed)?;
            Ok((sp, ev))
        })
        .collect::<Result<_>>()?;

    let mut rec = ResidualRecord::new();
    for (_, ev) in &evals {
        rec.merge_max(&ev.rec);
    }
    let mut measurements = BTreeMap::new();
    let mut trace_drift: f64 = 0.0;
    for i in 0..ns {
        let t0 = evals[0].1.trace_h2[i];
        measurements.insert(format!("trace_h2[{}]", i + 1), t0);
        for (_, ev) in &evals {
            trace_drift = trace_drift.max((ev.trace_h2[i] - t0).abs());
        }
    }
    if ns > 0 {
        rec.set("trace_h2_constant", trace_drift);
    }
    let sps: Vec<StructurePoint> = evals.into_iter().map(|(sp, _)| sp).collect();
    let mut hyps = hypotheses(&rec, tol);
    let axioms_ok = hyps[&Hyp::Axioms].0;
    let uniform = sps.iter().flat_map(|sp| sp.h.iter().flat_map(move |a| sp.h.iter().map(move |b| max_abs(&(a - b))))).fold(0.0, f64::max);
    hyps.insert(Hyp::Uniform, (uniform <= tol.lemma, uniform));
    let nullities: Vec<usize> =
        sps.iter().flat_map(|sp| (0..ns).map(move |i| (sp, i))).map(|(sp, i)| deta_nullity(sp, i, tol.rank)).collect();
    let (min_null, max_null) = (nullities.iter().copied().min().unwrap_or(0), nullities.iter().copied().max().unwrap_or(0));
    let nondegenerate = nullities.iter().all(|k| *k == ns);
    hyps.insert(Hyp::HNondegenerate, (nondegenerate, max_null as f64));

    let mut list = EntryList::default();
    let table = [(Suite::Axioms, identities::AXIOM_IDS), (Suite::Reeb, identities::REEB_IDS), (Suite::Lemmas, identities::LEMMA_IDS)];
    for (suite, ids) in table {
        if !opts.has(suite) {
            continue;
        }
        for ident in ids {
            let outcome = if ident.reeb && ns == 0 {
                Outcome::Skipped(SkipKind::Vacuous, "no Reeb fields (s = 0)".into())
            } else if let Some(why) = gate_failure(ident.gate, &hyps) {
                Outcome::Skipped(SkipKind::Hypothesis, why)
            } else {
                Outcome::Residual(rec.get(ident.id).unwrap_or(0.0))
            };
            list.push(ident.suite, ident.id, ident.formula, outcome, tol_of(tol, ident.tol), samples);
        }
    }

    // spectra
    let mut spectrum = None;
    if opts.has(Suite::Spectral) {
        let suite = "spectral";
        if ns == 0 {
            for id in ["clustering", "drift", "simultaneous_diagonalization"] {
                list.push(suite, id, "", Outcome::Skipped(SkipKind::Vacuous, "no Reeb fields (s = 0)".into()), tol.drift, opts.points);
            }
        } else if let Some(why) = gate_failure(&[Hyp::Axioms], &hyps) {
            for id in ["clustering", "drift", "simultaneous_diagonalization"] {
                list.push(suite, id, "", Outcome::Skipped(SkipKind::Hypothesis, why.clone()), tol.drift, opts.points);
            }
        } else {
            let attached: Vec<(String, bool)> = hyps.iter().map(|(h, (ok, _))| (h.name().to_string(), *ok)).collect();
            match spectral_report(&sps, tol, attached) {
                Ok(rep) => {
                    list.push(
                        suite,
                        "clustering",
                        "gaps of Spec(h_i^2) exceed twice the cluster tolerance",
                        Outcome::Check { ok: true, value: 0.0 },
                        tol.cluster,
                        opts.points,
                    );
                    let drift = rep.per_reeb.iter().map(|r| r.drift).fold(0.0, f64::max);
                    let stable = rep.per_reeb.iter().all(|r| r.shape_stable);
                    let outcome = if stable { Outcome::Residual(drift) } else { Outcome::Check { ok: false, value: drift } };
                    list.push(suite, "drift", "max |center(p) - center(p0)| over clusters of Spec(h_i^2)", outcome, tol.drift, opts.points);
                    list.push(
                        suite,
                        "simultaneous_diagonalization",
                        "off-diagonal mass of h_j^2 in the eigenframe of h_i^2",
                        Outcome::Residual(rep.simultaneous_residual),
                        tol.lemma,
                        opts.points,
                    );
                    if let Some(expected) = &manifest.spectrum {
                        let ok = rep.per_reeb.iter().all(|r| spectral::shape_matches(r, expected, tol.cluster.sqrt()));
                        list.push(
                            suite,
                            "spectrum_matches_manifest",
                            "Spec(h_i^2) equals the declared eigenvalues and multiplicities",
                            Outcome::Check { ok, value: drift },
                            tol.cluster,
                            opts.points,
                        );
                    }
                    spectrum = Some(rep);
                }
                Err(Error::AmbiguousSpectrum(msg)) => {
                    list.push(
                        suite,
                        "clustering",
                        "gaps of Spec(h_i^2) exceed twice the cluster tolerance",
                        Outcome::Check { ok: false, value: f64::NAN },
                        tol.cluster,
                        opts.points,
                    );
                    if let Some(e) = list.entries.last_mut() {
                        e.note = Some(msg);
                    }
                }
                Err(e) => return Err(e),
            }
        }
    }

    // distributions, also needed by the classifier
    let need_dist = opts.has(Suite::Distributions) || opts.has(Suite::Classify);
    let dist = if need_dist && ns > 0 && axioms_ok {
        let parts: Vec<DistributionResult> = sps
            .par_iter()
            .enumerate()
            .map(|(k, sp)| distributions::point_diagnostics(sp, k, opts.vectors, opts.seed, tol.cluster))
            .collect::<Result<_>>()?;
        let mut d = DistributionResult::default();
        for p in parts {
            d.merge(p);
        }
        Some(d)
    } else {
        None
    };
    if let Some(d) = &dist {
        measurements.insert("uniform_coframe".into(), d.uniform_coframe);
        measurements.insert("common_kernel".into(), d.common_kernel);
    }
    if opts.has(Suite::Distributions) {
        let suite = "distributions";
        if ns == 0 {
            list.push(suite, "*", "", Outcome::Skipped(SkipKind::Vacuous, "no Reeb fields (s = 0)".into()), tol.lemma, 0);
        } else if let Some(d) = &dist {
            for (id, v) in &d.residuals {
                let cand = id.split(':').next().unwrap_or(id);
                let formula = if id.ends_with(":involutive") {
                    "(Id - P)(nabla_X P)Y = (Id - P)(nabla_Y P)X for X, Y in the distribution"
                } else {
                    "(Id - P)(nabla_X P)Y = 0 for X, Y in the distribution"
                };
                let outcome = if d.empty.contains(cand) {
                    Outcome::Skipped(SkipKind::Vacuous, format!("{cand} is empty at some sample point"))
                } else {
                    Outcome::Residual(*v)
                };
                list.push(suite, id, formula, outcome, tol.lemma, samples);
            }
            for cand in &d.empty {
                if !d.residuals.keys().any(|k| k.starts_with(&format!("{cand}:"))) {
                    for kind in ["involutive", "totally_geodesic"] {
                        list.push(
                            suite,
                            &format!("{cand}:{kind}"),
                            "",
                            Outcome::Skipped(SkipKind::Vacuous, format!("{cand} is empty")),
                            tol.lemma,
                            0,
                        );
                    }
                }
            }
        } else {
            let why = gate_failure(&[Hyp::Axioms], &hyps).unwrap_or_default();
            list.push(suite, "*", "", Outcome::Skipped(SkipKind::Hypothesis, why), tol.lemma, 0);
        }
    }

    if ns > 0 {
        measurements.insert("deta_nullity_min".into(), min_null as f64);
        measurements.insert("deta_nullity_max".into(), max_null as f64);
    }

    let mut verdict = None;
    if opts.has(Suite::Classify) {
        let suite = "classify";
        let formula =
            "PRODUCT_WITH_RS iff h = 0; B4S_TIMES_NK_CANDIDATE iff uniform coframe, dim ker d eta > s, diagnostics and hypotheses pass";
        if ns == 0 {
            list.push(suite, "verdict", formula, Outcome::Skipped(SkipKind::Vacuous, "no Reeb fields (s = 0)".into()), tol.connection, 0);
        } else {
            let max_h = sps.iter().flat_map(|sp| sp.h.iter().map(max_abs)).fold(0.0, f64::max);
            let (uniform, common, diagnostics) = match &dist {
                Some(d) => (
                    d.uniform_coframe,
                    d.common_kernel,
                    d.residuals
                        .iter()
                        .filter(|(k, _)| !d.empty.contains(k.split(':').next().unwrap_or("")))
                        .map(|(_, v)| *v)
                        .fold(0.0, f64::max),
                ),
                None => (f64::NAN, f64::NAN, f64::NAN),
            };
            let hypotheses_pass =
                [Hyp::Axioms, Hyp::NearlyC, Hyp::XiBracket, Hyp::XiNormal, Hyp::QParallel, Hyp::CurvInv].iter().all(|h| hyps[h].0);
            let ev = Evidence {
                max_h,
                uniform_coframe: uniform,
                common_kernel: common,
                min_deta_nullity: min_null,
                max_deta_nullity: max_null,
                diagnostics,
                hypotheses_pass,
            };
            let v = splitting_classifier(&ev, ns, tol.connection, tol.lemma);
            let outcome = match &manifest.verdict {
                Some(expected) => Outcome::Check { ok: expected == v.verdict.as_str(), value: max_h },
                None => Outcome::Check { ok: true, value: max_h },
            };
            list.push(suite, "verdict", formula, outcome, tol.connection, opts.points);
            if let Some(e) = list.entries.last_mut() {
                e.note = Some(v.verdict.as_str().to_string());
            }
            verdict = Some(v);
        }
    }

    if opts.has(Suite::Fkcontact) {
        let suite = "fkcontact";
        let f_ax = "(-h_i, R(., xi_i)xi_i on D + Id on ker f, xi, eta, g) satisfies the structure axioms";
        let f_k = "K(xi_i, X) = |h_i X|^2 for unit X in D";
        if ns == 0 {
            for id in ["hat_axioms", "xi_sectional"] {
                list.push(suite, id, "", Outcome::Skipped(SkipKind::Vacuous, "no Reeb fields (s = 0)".into()), tol.curvature, 0);
            }
        } else if let Some(why) = gate_failure(&[Hyp::Axioms], &hyps) {
            list.push(suite, "hat_axioms", f_ax, Outcome::Skipped(SkipKind::Hypothesis, why.clone()), tol.curvature, 0);
            list.push(suite, "xi_sectional", f_k, Outcome::Skipped(SkipKind::Hypothesis, why), tol.drift, 0);
        } else {
            let per_point: Vec<Result<(f64, f64, f64, f64)>> = sps
                .par_iter()
                .enumerate()
                .map(|(k, sp)| {
                    let mut rng = sampling::point_rng(opts.seed, k + (2usize << 32));
                    let mut acc = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
                    for i in 0..ns {
                        let hat = induced_fk_contact(sp, i, tol.rank)?;
                        acc.0 = acc.0.max(hat.axioms.max());
                        acc.2 = acc.2.max(hat.hat_q_minus_id_on_d);
                        acc.3 = acc.3.max(hat.hat_f_minus_f);
                        for _ in 0..opts.vectors.max(1) {
                            let x = sampling::unit_d_vector(sp, &mut rng);
                            acc.1 = acc.1.max(xi_sectional_residual(sp, i, &x));
                        }
                    }
                    Ok(acc)
                })
                .collect();
            let mut failure = None;
            let mut acc = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
            for r in per_point {
                match r {
                    Ok(a) => acc = (acc.0.max(a.0), acc.1.max(a.1), acc.2.max(a.2), acc.3.max(a.3)),
                    Err(Error::HypothesisFailed(msg)) => {
                        failure.get_or_insert(msg);
                    }
                    Err(e) => return Err(e),
                }
            }
            match failure {
                Some(msg) => {
                    list.push(suite, "hat_axioms", f_ax, Outcome::Skipped(SkipKind::Hypothesis, msg.clone()), tol.curvature, 0);
                    list.push(suite, "xi_sectional", f_k, Outcome::Skipped(SkipKind::Hypothesis, msg), tol.drift, 0);
                }
                None => {
                    list.push(suite, "hat_axioms", f_ax, Outcome::Residual(acc.0), tol.curvature, opts.points);
                    list.push(suite, "xi_sectional", f_k, Outcome::Residual(acc.1), tol.drift, samples);
                    measurements.insert("hat_q_minus_id_on_d".into(), acc.2);
                    measurements.insert("hat_f_minus_f".into(), acc.3);
                }
            }
        }
    }

    if opts.has(Suite::Lefschetz) {
        let suite = "lefschetz";
        let formula = "beta -> d eta^i ^ beta is injective on 2-forms iff n >= 3 and ker d eta^i = span xi";
        if ns == 0 || s.dim() < 4 {
            list.push(
                suite,
                "rank_matches_expected",
                formula,
                Outcome::Skipped(SkipKind::Vacuous, "needs s >= 1 and d >= 4".into()),
                0.0,
                0,
            );
        } else if let Some(why) = gate_failure(&[Hyp::Axioms], &hyps) {
            list.push(suite, "rank_matches_expected", formula, Outcome::Skipped(SkipKind::Hypothesis, why), 0.0, 0);
        } else {
            let results: Vec<LefschetzResult> =
                sps.par_iter().flat_map_iter(|sp| (0..ns).map(move |i| lefschetz_check(sp, i, tol.rank))).collect::<Result<_>>()?;
            let ok = results.iter().all(|r| r.full == r.expected_full);
            let min = results.iter().map(|r| r.rank).min().unwrap_or(0);
            let max = results.iter().map(|r| r.rank).max().unwrap_or(0);
            list.push(suite, "rank_matches_expected", formula, Outcome::Check { ok, value: max as f64 }, 0.0, results.len());
            measurements.insert("lefschetz_rank_min".into(), min as f64);
            measurements.insert("lefschetz_rank_max".into(), max as f64);
            measurements.insert("lefschetz_full".into(), if results.iter().all(|r| r.full) { 1.0 } else { 0.0 });
        }
    }

    let oracle = if opts.oracle {
        let take = points.len().min(ORACLE_POINTS);
        Some(oracle_report(&s.host, &points[..take])?)
    } else {
        None
    };

    let mut entries = list.entries;
    apply_manifest(&mut entries, manifest);
    entries.sort_by(|a, b| (a.suite.as_str(), a.id.as_str()).cmp(&(b.suite.as_str(), b.id.as_str())));

    let mut timestamp = BTreeMap::new();
    timestamp.insert("started_unix".into(), wall.to_string());
    timestamp.insert("elapsed_ms".into(), started.elapsed().as_millis().to_string());

    Ok(SuiteReport {
        schema_version: SCHEMA_VERSION,
        structure: s.name.clone(),
        structure_hash: s.structure_hash(),
        dim: s.dim(),
        n: s.n(),
        s: ns,
        seed: format!("{:#x}", opts.seed),
        points: opts.points,
        vectors: opts.vectors,
        tolerances: *tol,
        curvature_convention: CURVATURE_CONVENTION.into(),
        q_tilde: Q_TILDE.into(),
        suites: opts.suites.iter().map(|s| s.name().to_string()).collect(),
        entries,
        measurements,
        spectrum,
        verdict,
        oracle,
        timestamp,
    })
}
