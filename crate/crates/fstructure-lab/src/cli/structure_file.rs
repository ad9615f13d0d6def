//! User-defined structures in TOML, with s-expression field entries.
//!
//! ```toml
//! version = 1
//! name = "flat-5"
//! n = 2
//! s = 1
//!
//! [domain]
//! kind = "cube"        # or "ball"
//! size = 1.0           # half-width or radius
//!
//! [metric]             # upper triangle, row by row: g00 g01 .. g0d g11 ..
//! upper = [1, 0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 1, 0, 1]
//!
//! [fields]             # operators are lists of rows, T^a_b in row a
//! f = [[0, -1, 0, 0, 0], [1, 0, 0, 0, 0], [0, 0, 0, -1, 0], [0, 0, 1, 0, 0], [0, 0, 0, 0, 0]]
//! # q defaults to the identity
//! xi = [[0, 0, 0, 0, 1]]
//! eta = [[0, 0, 0, 0, 1]]
//!
//! [manifest]           # optional
//! expect_skip = ["fkcontact/*"]
//! verdict = "PRODUCT_WITH_RS"
//! ```
//!
//! Every entry is a number or a string in the s-expression grammar of
//! [`crate::jets::sexpr`], e.g. `"(mul 2 (sin (coord 0)))"`.

use std::path::Path;

use serde::Deserialize;

use crate::catalog::Manifest;
use crate::error::{Error, Result};
use crate::fstructure::WeakMetricFStructureField;
use crate::geometry::{ChartManifold, SamplingDomain, TensorField};
use crate::jets::{sexpr, ScalarField};

pub const STRUCTURE_FILE_VERSION: u32 = 1;

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum Expr {
    Num(f64),
    Text(String),
}

impl Expr {
    fn field(&self) -> Result<ScalarField> {
        match self {
            Expr::Num(v) => Ok(ScalarField::constant(*v)),
            Expr::Text(t) => sexpr::parse(t),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct DomainSpec {
    kind: String,
    size: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct MetricSpec {
    upper: Vec<Expr>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FieldSpec {
    f: Vec<Vec<Expr>>,
    q: Option<Vec<Vec<Expr>>>,
    #[serde(default)]
    xi: Vec<Vec<Expr>>,
    #[serde(default)]
    eta: Vec<Vec<Expr>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct StructureFile {
    version: u32,
    name: String,
    n: usize,
    s: usize,
    domain: DomainSpec,
    metric: MetricSpec,
    fields: FieldSpec,
    #[serde(default)]
    manifest: Manifest,
}

fn row(r: &[Expr]) -> Result<Vec<ScalarField>> {
    r.iter().map(Expr::field).collect()
}

fn rows(m: &[Vec<Expr>]) -> Result<Vec<Vec<ScalarField>>> {
    m.iter().map(|r| row(r)).collect()
}

/// Parse a structure file's text.
pub fn parse_structure(text: &str) -> Result<(WeakMetricFStructureField, Manifest)> {
    let sf: StructureFile = toml::from_str(text).map_err(|e| Error::Parse(format!("structure file: {e}")))?;
    if sf.version != STRUCTURE_FILE_VERSION {
        return Err(Error::Parse(format!("structure file version {} is not supported (expected {STRUCTURE_FILE_VERSION})", sf.version)));
    }
    let d = 2 * sf.n + sf.s;
    if !(sf.domain.size > 0.0) {
        return Err(Error::Parse("domain size must be positive".into()));
    }
    let domain = match sf.domain.kind.as_str() {
        "ball" => SamplingDomain::ball(d, sf.domain.size),
        "cube" => SamplingDomain::cube(d, sf.domain.size),
        other => return Err(Error::Parse(format!("unknown domain kind {other:?}; use ball or cube"))),
    };
    let host = ChartManifold::new(&sf.name, sf.n, sf.s, row(&sf.metric.upper)?, domain)?;
    let f = TensorField::operator(rows(&sf.fields.f)?)?;
    let q = match &sf.fields.q {
        Some(m) => TensorField::operator(rows(m)?)?,
        None => {
            TensorField::constant_operator(&(0..d).map(|a| (0..d).map(|b| if a == b { 1.0 } else { 0.0 }).collect()).collect::<Vec<_>>())?
        }
    };
    let xi = sf.fields.xi.iter().map(|v| row(v).map(TensorField::vector)).collect::<Result<Vec<_>>>()?;
    let eta = sf.fields.eta.iter().map(|v| row(v).map(TensorField::covector)).collect::<Result<Vec<_>>>()?;
    if xi.iter().chain(&eta).any(|t| t.dim != d) {
        return Err(Error::ShapeError(format!("Reeb fields and one-forms need {d} components")));
    }
    let s = WeakMetricFStructureField::new(&sf.name, host, f, q, xi, eta)?;
    Ok((s, sf.manifest))
}

pub fn load_structure(path: &Path) -> Result<(WeakMetricFStructureField, Manifest)> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
    parse_structure(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    const FLAT: &str = r#"
version = 1
name = "flat-5"
n = 2
s = 1
[domain]
kind = "cube"
size = 1.0
[metric]
upper = [1, 0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 1, 0, 1]
[fields]
f = [[0, -1, 0, 0, 0], [1, 0, 0, 0, 0], [0, 0, 0, -1, 0], [0, 0, 1, 0, 0], [0, 0, 0, 0, 0]]
xi = [[0, 0, 0, 0, 1]]
eta = [[0, 0, 0, 0, "(const 1)"]]
[manifest]
verdict = "PRODUCT_WITH_RS"
"#;

    #[test]
    fn flat_file_parses_and_satisfies_axioms() {
        let (s, m) = parse_structure(FLAT).unwrap();
        assert_eq!((s.dim(), s.n(), s.s()), (5, 2, 1));
        assert_eq!(m.verdict.as_deref(), Some("PRODUCT_WITH_RS"));
        let sp = s.at(&[0.1, 0.2, 0.3, 0.4, 0.5]).unwrap();
        assert_eq!(sp.axioms().max(), 0.0);
    }

    #[test]
    fn rejects_bad_files() {
        assert!(matches!(parse_structure(&FLAT.replace("version = 1", "version = 9")), Err(Error::Parse(_))));
        assert!(matches!(parse_structure(&FLAT.replace("\"cube\"", "\"torus\"")), Err(Error::Parse(_))));
        assert!(parse_structure(&FLAT.replace("\"(const 1)\"", "\"(bogus 1)\"")).is_err());
        assert!(matches!(parse_structure(&format!("{FLAT}\nextra = 3")), Err(Error::Parse(_))));
    }
}
