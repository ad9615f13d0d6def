use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    ProductWithRs,
    #[serde(rename = "B4S_TIMES_NK_CANDIDATE")]
    B4sTimesNkCandidate,
    NoSplitDetected,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::ProductWithRs => "PRODUCT_WITH_RS",
            Verdict::B4sTimesNkCandidate => "B4S_TIMES_NK_CANDIDATE",
            Verdict::NoSplitDetected => "NO_SPLIT_DETECTED",
        }
    }
}

pub const DISCLAIMER: &str = "local numerical evidence at sampled points; not a certificate of a global isometry";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SplitVerdict {
    pub verdict: Verdict,
    pub disclaimer: String,
    pub evidence: BTreeMap<String, f64>,
}

/// Inputs to the classifier, all maxima or minima over the sample.
#[derive(Debug, Clone, Default)]
pub struct Evidence {
    /// `max_i max_p max |h_i|` (componentwise).
    pub max_h: f64,
    pub uniform_coframe: f64,
    pub common_kernel: f64,
    pub min_deta_nullity: usize,
    pub max_deta_nullity: usize,
    /// Worst distribution residual over the nonempty candidates.
    pub diagnostics: f64,
    /// Axioms, nearly-𝒞 and the four structural conditions.
    pub hypotheses_pass: bool,
}

/// `h_tol` decides `h ≡ 0`; `lemma_tol` decides the coframe and diagnostics.
pub fn splitting_classifier(ev: &Evidence, s: usize, h_tol: f64, lemma_tol: f64) -> SplitVerdict {
    let verdict = if ev.max_h <= h_tol {
        Verdict::ProductWithRs
    } else if ev.uniform_coframe <= lemma_tol && ev.min_deta_nullity > s && ev.diagnostics <= lemma_tol && ev.hypotheses_pass {
        Verdict::B4sTimesNkCandidate
    } else {
        Verdict::NoSplitDetected
    };
    let mut evidence = BTreeMap::new();
    evidence.insert("max_h_norm".into(), ev.max_h);
    evidence.insert("uniform_coframe".into(), ev.uniform_coframe);
    evidence.insert("common_kernel".into(), ev.common_kernel);
    evidence.insert("deta_nullity_min".into(), ev.min_deta_nullity as f64);
    evidence.insert("deta_nullity_max".into(), ev.max_deta_nullity as f64);
    evidence.insert("diagnostics_max".into(), ev.diagnostics);
    evidence.insert("hypotheses_pass".into(), if ev.hypotheses_pass { 1.0 } else { 0.0 });
    SplitVerdict { verdict, disclaimer: DISCLAIMER.into(), evidence }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev() -> Evidence {
        Evidence { max_h: 1.0, min_deta_nullity: 5, max_deta_nullity: 5, hypotheses_pass: true, ..Default::default() }
    }

    #[test]
    fn zero_h_is_a_product() {
        let e = Evidence { max_h: 0.0, ..ev() };
        assert_eq!(splitting_classifier(&e, 1, 1e-10, 1e-7).verdict, Verdict::ProductWithRs);
    }

    #[test]
    fn candidate_needs_large_kernel() {
        assert_eq!(splitting_classifier(&ev(), 1, 1e-10, 1e-7).verdict, Verdict::B4sTimesNkCandidate);
        let e = Evidence { min_deta_nullity: 1, ..ev() };
        assert_eq!(splitting_classifier(&e, 1, 1e-10, 1e-7).verdict, Verdict::NoSplitDetected);
        let e = Evidence { hypotheses_pass: false, ..ev() };
        assert_eq!(splitting_classifier(&e, 1, 1e-10, 1e-7).verdict, Verdict::NoSplitDetected);
    }

    #[test]
    fn verdict_serializes_screaming() {
        assert_eq!(serde_json::to_string(&Verdict::B4sTimesNkCandidate).unwrap(), "\"B4S_TIMES_NK_CANDIDATE\"");
        assert_eq!(serde_json::to_string(&Verdict::ProductWithRs).unwrap(), "\"PRODUCT_WITH_RS\"");
    }
}
