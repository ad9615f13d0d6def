//! Run configuration: a TOML file, overridden by command-line flags.
//!
//! ```toml
//! version = 1
//!
//! [structure]
//! catalog = "s5"              # or: file = "my-structure.toml"
//!
//! [run]
//! suites = ["all"]            # or a comma-separated string
//! points = 64
//! vectors = 8
//! seed = "0x5EED"
//! oracle = false
//!
//! [tolerances]
//! lemma = 1e-7
//!
//! [output]
//! path = "s5.json"
//! json_only = false
//! ```
//!
//! A relative structure `file` is resolved against the config file's directory.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::Parser;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::verify::{RunOptions, Suite, Tolerances, DEFAULT_SEED};

pub const CONFIG_VERSION: u32 = 1;

/// Command-line flags of `fslab`.
#[derive(Debug, Clone, Default, Parser)]
#[command(name = "fslab", version, about = "Verify weak metric f-structures on sampled points")]
pub struct Args {
    /// Catalog entry, e.g. `s5`, `s5-scaled:lambda=2`, `flat:n=2,s=1`.
    #[arg(long, value_name = "NAME")]
    pub catalog: Option<String>,
    /// Run configuration file (TOML).
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Comma-separated suites, or `all`.
    #[arg(long, value_name = "LIST")]
    pub suites: Option<String>,
    #[arg(long, value_name = "N")]
    pub points: Option<usize>,
    #[arg(long, value_name = "N")]
    pub vectors: Option<usize>,
    /// Tolerance override; repeatable.
    #[arg(long = "tol", value_name = "NAME=VALUE")]
    pub tol: Vec<String>,
    /// Seed in hexadecimal, with or without `0x`.
    #[arg(long, value_name = "HEX")]
    pub seed: Option<String>,
    /// Where to write the JSON report; the table goes next to it as `.txt`.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Cross-check Γ and R against central finite differences.
    #[arg(long)]
    pub oracle: bool,
    /// Emit only JSON.
    #[arg(long)]
    pub json_only: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub enum StructureSelector {
    Catalog(String),
    File(PathBuf),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub structure: StructureSelector,
    pub options: RunOptions,
    pub out: Option<PathBuf>,
    pub json_only: bool,
}

#[derive(Debug, Default, Deserialize)]
#[serde(untagged)]
enum SuiteList {
    #[default]
    None,
    One(String),
    Many(Vec<String>),
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct StructureSection {
    catalog: Option<String>,
    file: Option<PathBuf>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RunSection {
    #[serde(default)]
    suites: SuiteList,
    points: Option<usize>,
    vectors: Option<usize>,
    seed: Option<String>,
    oracle: Option<bool>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct OutputSection {
    path: Option<PathBuf>,
    json_only: Option<bool>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    version: u32,
    #[serde(default)]
    structure: StructureSection,
    #[serde(default)]
    run: RunSection,
    #[serde(default)]
    tolerances: BTreeMap<String, f64>,
    #[serde(default)]
    output: OutputSection,
}

pub fn parse_seed(text: &str) -> Result<u64> {
    let t = text.trim();
    let digits = t.strip_prefix("0x").or_else(|| t.strip_prefix("0X")).unwrap_or(t);
    u64::from_str_radix(digits, 16).map_err(|_| Error::Config(format!("seed {text:?} is not hexadecimal")))
}

/// `NAME=VALUE` with a positive value.
pub fn parse_tol(spec: &str) -> Result<(String, f64)> {
    let (name, value) = spec.split_once('=').ok_or_else(|| Error::Config(format!("tolerance {spec:?} is not NAME=VALUE")))?;
    let v: f64 = value.trim().parse().map_err(|_| Error::Config(format!("tolerance {spec:?} has a non-numeric value")))?;
    Ok((name.trim().to_string(), v))
}

fn suites_from(list: &SuiteList) -> Result<Option<Vec<Suite>>> {
    match list {
        SuiteList::None => Ok(None),
        SuiteList::One(s) => Suite::parse_list(s).map(Some),
        SuiteList::Many(v) => Suite::parse_list(&v.join(",")).map(Some),
    }
}

impl RunConfig {
    /// Parse a config file, resolving relative paths against `base`.
    pub fn from_toml(text: &str, base: &Path) -> Result<RunConfig> {
        let cf: ConfigFile = toml::from_str(text).map_err(|e| Error::Config(format!("config: {e}")))?;
        if cf.version != CONFIG_VERSION {
            return Err(Error::Config(format!("config version {} is not supported (expected {CONFIG_VERSION})", cf.version)));
        }
        let structure = match (cf.structure.catalog, cf.structure.file) {
            (Some(c), None) => StructureSelector::Catalog(c),
            (None, Some(f)) => StructureSelector::File(if f.is_relative() { base.join(f) } else { f }),
            (Some(_), Some(_)) => return Err(Error::Config("give either structure.catalog or structure.file, not both".into())),
            (None, None) => StructureSelector::Catalog(String::new()),
        };
        let mut options = RunOptions::default();
        if let Some(s) = suites_from(&cf.run.suites)? {
            options.suites = s;
        }
        if let Some(p) = cf.run.points {
            options.points = p;
        }
        if let Some(v) = cf.run.vectors {
            options.vectors = v;
        }
        if let Some(s) = &cf.run.seed {
            options.seed = parse_seed(s)?;
        }
        options.oracle = cf.run.oracle.unwrap_or(false);
        for (k, v) in &cf.tolerances {
            options.tol.set(k, *v)?;
        }
        Ok(RunConfig { structure, options, out: cf.output.path, json_only: cf.output.json_only.unwrap_or(false) })
    }

    /// Config file (if any) overridden by flags.
    pub fn from_args(args: &Args) -> Result<RunConfig> {
        let mut cfg = match &args.config {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
                RunConfig::from_toml(&text, path.parent().unwrap_or(Path::new(".")))?
            }
            None => RunConfig {
                structure: StructureSelector::Catalog(String::new()),
                options: RunOptions { tol: Tolerances::default(), seed: DEFAULT_SEED, ..RunOptions::default() },
                out: None,
                json_only: false,
            },
        };
        if let Some(c) = &args.catalog {
            cfg.structure = StructureSelector::Catalog(c.clone());
        }
        if cfg.structure == StructureSelector::Catalog(String::new()) {
            return Err(Error::Config("no structure selected: pass --catalog NAME or a config with [structure]".into()));
        }
        if let Some(s) = &args.suites {
            cfg.options.suites = Suite::parse_list(s)?;
        }
        if let Some(p) = args.points {
            cfg.options.points = p;
        }
        if let Some(v) = args.vectors {
            cfg.options.vectors = v;
        }
        if let Some(s) = &args.seed {
            cfg.options.seed = parse_seed(s)?;
        }
        for spec in &args.tol {
            let (k, v) = parse_tol(spec)?;
            cfg.options.tol.set(&k, v)?;
        }
        if cfg.options.points == 0 || cfg.options.vectors == 0 {
            return Err(Error::Config("points and vectors must be positive".into()));
        }
        cfg.options.oracle |= args.oracle;
        cfg.json_only |= args.json_only;
        if args.out.is_some() {
            cfg.out = args.out.clone();
        }
        Ok(cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(list: &[&str]) -> Args {
        Args::try_parse_from(std::iter::once("fslab").chain(list.iter().copied())).unwrap()
    }

    #[test]
    fn flags_build_a_config() {
        let cfg =
            RunConfig::from_args(&args(&["--catalog", "s5", "--suites", "axioms,lemmas", "--seed", "ff", "--tol", "lemma=1e-6"])).unwrap();
        assert_eq!(cfg.structure, StructureSelector::Catalog("s5".into()));
        assert_eq!(cfg.options.suites, vec![Suite::Axioms, Suite::Lemmas]);
        assert_eq!(cfg.options.seed, 0xff);
        assert_eq!(cfg.options.tol.lemma, 1e-6);
    }

    #[test]
    fn bad_values_are_config_errors() {
        for bad in [
            vec!["--catalog", "s5", "--suites", "axioms,bogus"],
            vec!["--catalog", "s5", "--tol", "lemma=-1"],
            vec!["--catalog", "s5", "--tol", "nonsense=1"],
            vec!["--catalog", "s5", "--seed", "xyz"],
            vec!["--suites", "all"],
        ] {
            assert!(matches!(RunConfig::from_args(&args(&bad)), Err(Error::Config(_))), "{bad:?}");
        }
    }

    #[test]
    fn toml_config_and_flag_override() {
        let text = "version = 1\n[structure]\nfile = \"x.toml\"\n[run]\nsuites = \"all\"\npoints = 4\nseed = \"0x10\"\n[tolerances]\ndrift = 1e-5\n";
        let cfg = RunConfig::from_toml(text, Path::new("/cfg")).unwrap();
        assert_eq!(cfg.structure, StructureSelector::File(PathBuf::from("/cfg/x.toml")));
        assert_eq!((cfg.options.points, cfg.options.seed, cfg.options.tol.drift), (4, 16, 1e-5));
        assert!(RunConfig::from_toml("version = 2\n", Path::new(".")).is_err());
        assert!(RunConfig::from_toml("version = 1\n[run]\nsuites = [\"nope\"]\n", Path::new(".")).is_err());
        assert!(RunConfig::from_toml("version = 1\n[tolerances]\nlemma = 0\n", Path::new(".")).is_err());
    }
}
