use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::catalog::{Expectation, Manifest};
use crate::error::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

/// Outcome of one identity after comparing against its tolerance and manifest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Pass,
    Fail,
    ExpectedFail,
    UnexpectedPass,
    Skipped,
}

/// Why an entry was not evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SkipKind {
    /// A hypothesis of the identity failed on this structure.
    Hypothesis,
    /// Nothing to check (no Reeb fields, empty distribution, ...).
    Vacuous,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Entry {
    pub suite: String,
    pub id: String,
    /// The identity being checked, written out.
    pub formula: String,
    pub max_residual: Option<f64>,
    pub tolerance: f64,
    pub samples: usize,
    pub status: Status,
    pub expected: Expectation,
    pub matches_manifest: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skip: Option<SkipKind>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Entry {
    pub fn key(&self) -> String {
        format!("{}/{}", self.suite, self.id)
    }
}

/// Raw outcome before the manifest is applied.
#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    Residual(f64),
    /// Pass/fail decided directly (verdict or rank comparisons).
    Check {
        ok: bool,
        value: f64,
    },
    Skipped(SkipKind, String),
}

/// Builder for the entries of one suite.
#[derive(Debug, Clone, Default)]
pub struct EntryList {
    pub entries: Vec<Entry>,
}

impl EntryList {
    pub fn push(&mut self, suite: &str, id: &str, formula: &str, outcome: Outcome, tolerance: f64, samples: usize) {
        let (max_residual, raw_pass, skip, note) = match outcome {
            Outcome::Residual(r) => (Some(r), Some(r <= tolerance), None, None),
            Outcome::Check { ok, value } => (Some(value), Some(ok), None, None),
            Outcome::Skipped(kind, why) => (None, None, Some(kind), Some(why)),
        };
        let status = match raw_pass {
            Some(true) => Status::Pass,
            Some(false) => Status::Fail,
            None => Status::Skipped,
        };
        self.entries.push(Entry {
            suite: suite.into(),
            id: id.into(),
            formula: formula.into(),
            max_residual,
            tolerance,
            samples,
            status,
            expected: Expectation::Pass,
            matches_manifest: true,
            skip,
            note,
        });
    }
}

/// Apply a manifest to raw statuses.
///
/// A vacuous skip never counts against the manifest; a hypothesis skip must
/// be declared.
pub fn apply_manifest(entries: &mut [Entry], manifest: &Manifest) {
    for e in entries.iter_mut() {
        let exp = manifest.expectation(&e.suite, &e.id);
        e.expected = exp;
        let (status, ok) = match (e.status, exp) {
            (Status::Skipped, Expectation::Skip) => (Status::Skipped, true),
            (Status::Skipped, _) => (Status::Skipped, e.skip == Some(SkipKind::Vacuous)),
            (Status::Pass, Expectation::Pass) => (Status::Pass, true),
            (Status::Fail, Expectation::Pass) => (Status::Fail, false),
            (Status::Fail, Expectation::Fail) => (Status::ExpectedFail, true),
            (Status::Pass, Expectation::Fail) => (Status::UnexpectedPass, false),
            (s, Expectation::Skip) => (s, false),
            (s, _) => (s, false),
        };
        e.status = status;
        e.matches_manifest = ok;
    }
}

/// Every residual tolerance used by the suites.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Algebraic axioms of the structure.
    pub axioms: f64,
    /// First-order identities: metricity, Reeb conditions.
    pub connection: f64,
    /// Curvature symmetries and the structural hypotheses.
    pub curvature: f64,
    /// Lemma identities.
    pub lemma: f64,
    /// Eigenvalue clustering.
    pub cluster: f64,
    /// Cross-point drift of spectra and traces.
    pub drift: f64,
    /// Relative singular-value threshold for ranks and nullities.
    pub rank: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { axioms: 1e-10, connection: 1e-10, curvature: 1e-8, lemma: 1e-7, cluster: 1e-6, drift: 1e-6, rank: 1e-8 }
    }
}

impl Tolerances {
    pub const NAMES: [&'static str; 7] = ["axioms", "connection", "curvature", "lemma", "cluster", "drift", "rank"];

    pub fn set(&mut self, name: &str, value: f64) -> Result<()> {
        if !(value > 0.0 && value.is_finite()) {
            return Err(Error::Config(format!("tolerance {name} must be positive, got {value}")));
        }
        let slot = match name {
            "axioms" => &mut self.axioms,
            "connection" => &mut self.connection,
            "curvature" => &mut self.curvature,
            "lemma" => &mut self.lemma,
            "cluster" => &mut self.cluster,
            "drift" => &mut self.drift,
            "rank" => &mut self.rank,
            other => return Err(Error::Config(format!("unknown tolerance {other}; known: {}", Self::NAMES.join(", ")))),
        };
        *slot = value;
        Ok(())
    }
}

/// The JSON report of one run on one structure.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub schema_version: u32,
    pub structure: String,
    pub structure_hash: String,
    pub dim: usize,
    pub n: usize,
    pub s: usize,
    pub seed: String,
    pub points: usize,
    pub vectors: usize,
    pub tolerances: Tolerances,
    pub curvature_convention: String,
    pub q_tilde: String,
    pub suites: Vec<String>,
    pub entries: Vec<Entry>,
    /// Measured values that carry no pass/fail decision.
    pub measurements: BTreeMap<String, f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spectrum: Option<super::spectral::SpectrumReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<super::classify::SplitVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<super::oracle::OracleReport>,
    /// Wall-clock data; the only part of the report that varies between runs.
    pub timestamp: BTreeMap<String, String>,
}

impl SuiteReport {
    /// True iff every entry agrees with the manifest.
    pub fn consistent(&self) -> bool {
        self.entries.iter().all(|e| e.matches_manifest)
    }

    pub fn entry(&self, suite: &str, id: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.suite == suite && e.id == id)
    }

    pub fn residual(&self, suite: &str, id: &str) -> Option<f64> {
        self.entry(suite, id).and_then(|e| e.max_residual)
    }

    pub fn mismatches(&self) -> Vec<&Entry> {
        self.entries.iter().filter(|e| !e.matches_manifest).collect()
    }

    /// JSON with the timestamp object removed, for determinism comparisons.
    pub fn json_without_timestamp(&self) -> String {
        let mut copy = self.clone();
        copy.timestamp.clear();
        serde_json::to_string_pretty(&copy).expect("report serializes")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
