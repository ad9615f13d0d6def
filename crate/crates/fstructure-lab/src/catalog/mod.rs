//! Concrete structures addressable by name, each with an expected-outcome manifest.
//!
//! Names look like `s5`, `s5-scaled:lambda=2`, `flat:n=3,s=2,scales=1,4,9`,
//! `rotated:t=0.3,pair=asd`, `product-s6:s=2`, `product-b5-nk:lambda=1`.
//! A parameter token without `=` continues the previous value, so list values
//! such as `scales=1,4,9` need no quoting.

mod entries;
pub mod octonion;
pub mod sphere;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub use entries::{
    flat_model, product_b5_times_nk, product_with_euclidean, rotate_two_structures, rotation_pair, s5_nearly_cosymplectic, s5_perturbed,
    s6_nearly_kahler, s6_rotation_field, scale_structure, RotationPair, FLAT_HALF_WIDTH, S5_RADIUS, S6_RADIUS, SPD_MARGIN,
};

use crate::error::{Error, Result};
use crate::fstructure::WeakMetricFStructureField;
use crate::verify::identities::{gated_on, Hyp};

/// Expected outcome of one report entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Expectation {
    Pass,
    Fail,
    Skip,
}

/// Which report entries must fail or be skipped; everything else must pass.
///
/// Keys are `suite/id`; a key ending in `/*` covers a whole suite and an
/// exact key always wins over a suite-wide one.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Manifest {
    pub expect_fail: Vec<String>,
    pub expect_skip: Vec<String>,
    /// Expected `Spec(h_1²)` as (eigenvalue, multiplicity), descending.
    pub spectrum: Option<Vec<(f64, usize)>>,
    /// Expected classifier verdict name.
    pub verdict: Option<String>,
}

impl Manifest {
    pub fn expectation(&self, suite: &str, id: &str) -> Expectation {
        let key = format!("{suite}/{id}");
        let wild = format!("{suite}/*");
        if self.expect_fail.contains(&key) {
            return Expectation::Fail;
        }
        if self.expect_skip.contains(&key) {
            return Expectation::Skip;
        }
        if self.expect_fail.contains(&wild) {
            return Expectation::Fail;
        }
        if self.expect_skip.contains(&wild) {
            return Expectation::Skip;
        }
        Expectation::Pass
    }

    fn fail(mut self, keys: &[&str]) -> Self {
        self.expect_fail.extend(keys.iter().map(|k| k.to_string()));
        self
    }

    fn skip(mut self, keys: &[&str]) -> Self {
        self.expect_skip.extend(keys.iter().map(|k| k.to_string()));
        self
    }

    /// Skip every identity gated on one of `hyps`.
    fn hypotheses_fail(mut self, hyps: &[Hyp]) -> Self {
        self.expect_skip.extend(gated_on(hyps));
        self
    }

    fn spectrum(mut self, s: &[(f64, usize)]) -> Self {
        self.spectrum = Some(s.to_vec());
        self
    }

    fn verdict(mut self, v: &str) -> Self {
        self.verdict = Some(v.to_string());
        self
    }
}

/// A constructed structure together with its name, parameters and manifest.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub params: BTreeMap<String, String>,
    pub structure: WeakMetricFStructureField,
    pub manifest: Manifest,
}

/// Split `head:k=v,k=v` into the head and its parameter map.
pub fn parse_name(name: &str) -> Result<(String, BTreeMap<String, String>)> {
    let name = name.trim();
    let (head, rest) = match name.split_once(':') {
        Some((h, r)) => (h, r),
        None => (name, ""),
    };
    let mut params: BTreeMap<String, String> = BTreeMap::new();
    let mut last: Option<String> = None;
    for tok in rest.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        match tok.split_once('=') {
            Some((k, v)) => {
                let k = k.trim().to_string();
                if params.insert(k.clone(), v.trim().to_string()).is_some() {
                    return Err(Error::Parse(format!("parameter {k} given twice in {name}")));
                }
                last = Some(k);
            }
            None => {
                let k = last.as_ref().ok_or_else(|| Error::Parse(format!("dangling value {tok} in {name}")))?;
                let v = params.get_mut(k).expect("key present");
                v.push(',');
                v.push_str(tok);
            }
        }
    }
    if head.is_empty() {
        return Err(Error::Parse("empty catalog name".into()));
    }
    Ok((head.to_string(), params))
}

struct Params<'a> {
    name: &'a str,
    map: BTreeMap<String, String>,
}

impl Params<'_> {
    fn take(&mut self, key: &str) -> Option<String> {
        self.map.remove(key)
    }

    fn real(&mut self, key: &str, default: Option<f64>) -> Result<f64> {
        match self.take(key) {
            Some(v) => parse_real(&v).ok_or_else(|| Error::Parse(format!("{key}={v} is not a number in {}", self.name))),
            None => default.ok_or_else(|| Error::Parse(format!("{} needs {key}=", self.name))),
        }
    }

    fn int(&mut self, key: &str, default: Option<usize>) -> Result<usize> {
        match self.take(key) {
            Some(v) => v.parse().map_err(|_| Error::Parse(format!("{key}={v} is not a count in {}", self.name))),
            None => default.ok_or_else(|| Error::Parse(format!("{} needs {key}=", self.name))),
        }
    }

    fn reals(&mut self, key: &str) -> Result<Option<Vec<f64>>> {
        match self.take(key) {
            Some(v) => v
                .split(',')
                .map(|t| parse_real(t).ok_or_else(|| Error::Parse(format!("{key} entry {t} is not a number"))))
                .collect::<Result<Vec<_>>>()
                .map(Some),
            None => Ok(None),
        }
    }

    fn finish(self) -> Result<()> {
        match self.map.keys().next() {
            Some(k) => Err(Error::Parse(format!("unknown parameter {k} for {}", self.name))),
            None => Ok(()),
        }
    }
}

/// Reals, also accepting `pi`, `pi/k` and `k*pi`.
fn parse_real(s: &str) -> Option<f64> {
    let s = s.trim();
    if let Ok(v) = s.parse::<f64>() {
        return Some(v);
    }
    let pi = std::f64::consts::PI;
    if s == "pi" {
        return Some(pi);
    }
    if let Some(k) = s.strip_prefix("pi/") {
        return k.parse::<f64>().ok().map(|k| pi / k);
    }
    if let Some(k) = s.strip_suffix("*pi") {
        return k.parse::<f64>().ok().map(|k| k * pi);
    }
    None
}

/// Lemma-suite items that depend on `(∇_X Q)Y = 0`.
const FK_SKIPPED: &[&str] = &["fkcontact/*"];

/// `h = 0`: no Reeb-derived structure to reconstruct.
fn flat_manifest(s: usize) -> Manifest {
    let m = Manifest::default().verdict("PRODUCT_WITH_RS");
    if s == 0 {
        m
    } else {
        m.skip(FK_SKIPPED).hypotheses_fail(&[Hyp::HNondegenerate])
    }
}

/// Construct a catalog entry from its name.
pub fn build(name: &str) -> Result<CatalogEntry> {
    let (head, map) = parse_name(name)?;
    let mut p = Params { name, map: map.clone() };
    let (structure, manifest) = match head.as_str() {
        "flat" => {
            let n = p.int("n", None)?;
            let s = p.int("s", Some(0))?;
            let scales = p.reals("scales")?.unwrap_or_else(|| vec![1.0; n]);
            (flat_model(n, s, &scales)?, flat_manifest(s))
        }
        "s6" => (s6_nearly_kahler()?, Manifest::default()),
        "s5" => (s5_nearly_cosymplectic()?, s5_manifest(1.0)),
        "s5-scaled" => {
            let l = p.real("lambda", None)?;
            (scale_structure(&s5_nearly_cosymplectic()?, l)?, s5_manifest(l))
        }
        "s5-perturbed" => {
            let eps = p.real("eps", Some(0.01))?;
            (s5_perturbed(eps)?, perturbed_manifest())
        }
        "rotated" => {
            let t = p.real("t", None)?;
            let pair = match p.take("pair").as_deref() {
                None | Some("sd") => RotationPair::SelfDual,
                Some("asd") => RotationPair::AntiSelfDual,
                Some(other) => return Err(Error::Parse(format!("unknown pair {other}; use sd or asd"))),
            };
            (rotate_two_structures(t, pair)?, flat_manifest(1))
        }
        "product-s6" => {
            let s = p.int("s", Some(1))?;
            (product_with_euclidean(&s6_nearly_kahler()?, s)?, flat_manifest(s))
        }
        "product-flat" => {
            let n = p.int("n", None)?;
            let s = p.int("s", Some(1))?;
            let scales = p.reals("scales")?.unwrap_or_else(|| vec![1.0; n]);
            (product_with_euclidean(&flat_model(n, 0, &scales)?, s)?, flat_manifest(s))
        }
        "product-b5-nk" => {
            let l = p.real("lambda", None)?;
            (product_b5_times_nk(l)?, b5_manifest(l))
        }
        other => return Err(Error::Parse(format!("unknown catalog entry {other}"))),
    };
    p.finish()?;
    Ok(CatalogEntry { name: name.to_string(), params: map, structure, manifest })
}

fn s5_manifest(lambda: f64) -> Manifest {
    let m = Manifest::default().spectrum(&[(0.0, 1), (-1.0, 4)]).verdict("NO_SPLIT_DETECTED");
    if lambda == 1.0 {
        m
    } else {
        m.fail(&["lemmas/q_parallel_on_d"]).hypotheses_fail(&[Hyp::QParallel])
    }
}

fn b5_manifest(lambda: f64) -> Manifest {
    let m = Manifest::default().spectrum(&[(0.0, 5), (-1.0, 4)]).skip(FK_SKIPPED).hypotheses_fail(&[Hyp::HNondegenerate]);
    if lambda == 1.0 {
        m.verdict("B4S_TIMES_NK_CANDIDATE")
    } else {
        m.verdict("NO_SPLIT_DETECTED").fail(&["lemmas/q_parallel_on_d"]).hypotheses_fail(&[Hyp::QParallel])
    }
}

fn perturbed_manifest() -> Manifest {
    Manifest::default()
        .fail(&[
            "axioms/f_skew",
            "axioms/f_squared",
            "axioms/metric_compat",
            "axioms/f_kills_xi",
            "axioms/eta_kills_f",
            "axioms/f_rank",
            "lemmas/nearly_c",
        ])
        .hypotheses_fail(&[Hyp::Axioms])
        .skip(&["spectral/*", "distributions/*", "fkcontact/*", "lefschetz/*"])
        .verdict("NO_SPLIT_DETECTED")
}

/// Named entries exercised by the acceptance harness.
pub const CATALOG: &[&str] = &[
    "flat:n=2,s=1,scales=1,1",
    "flat:n=2,s=1,scales=2,3",
    "flat:n=3,s=2,scales=1,4,9",
    "s6",
    "s5",
    "s5-scaled:lambda=2",
    "rotated:t=0.1",
    "rotated:t=pi/4",
    "product-s6:s=1",
    "product-s6:s=2",
    "product-flat:n=2,scales=1,1,s=1",
    "product-b5-nk:lambda=1",
    "product-b5-nk:lambda=2",
];

/// Negative controls, kept out of the axiom sweep.
pub const CONTROLS: &[&str] = &["s5-perturbed:eps=0.01"];

pub fn list() -> Vec<&'static str> {
    CATALOG.iter().chain(CONTROLS).copied().collect()
}
