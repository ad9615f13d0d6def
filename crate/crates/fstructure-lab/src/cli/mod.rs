//! Batch driver behind the `fslab` binary.

pub mod config;
pub mod structure_file;
pub mod table;

use std::io::Write;
use std::path::Path;

use clap::Parser;

pub use config::{parse_seed, parse_tol, Args, RunConfig, StructureSelector};
pub use structure_file::{load_structure, parse_structure};
pub use table::render_table;

use crate::catalog;
use crate::error::{Error, Result};
use crate::verify::{self, SuiteReport};

/// Every entry agrees with the manifest.
pub const EXIT_OK: i32 = 0;
/// At least one entry disagrees with the manifest.
pub const EXIT_MISMATCH: i32 = 1;
/// Bad flags, config, structure file or output path.
pub const EXIT_CONFIG: i32 = 2;

/// Run one configuration and return its report.
pub fn execute(cfg: &RunConfig) -> Result<SuiteReport> {
    let (structure, manifest) = match &cfg.structure {
        StructureSelector::Catalog(name) => {
            let e = catalog::build(name)?;
            (e.structure, e.manifest)
        }
        StructureSelector::File(path) => load_structure(path)?,
    };
    verify::run(&structure, &manifest, &cfg.options)
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::Config(format!("cannot write {}: {e}", path.display())))
}

/// Write the report files and print to `stdout` as configured.
pub fn emit(cfg: &RunConfig, report: &SuiteReport, stdout: &mut dyn Write) -> Result<()> {
    let json = report.to_json();
    let io = |e: std::io::Error| Error::Config(format!("cannot write to stdout: {e}"));
    if cfg.json_only {
        match &cfg.out {
            Some(p) => write_file(p, &json)?,
            None => writeln!(stdout, "{json}").map_err(io)?,
        }
        return Ok(());
    }
    let table = render_table(report);
    if let Some(p) = &cfg.out {
        write_file(p, &json)?;
        write_file(&p.with_extension("txt"), &table)?;
    }
    write!(stdout, "{table}").map_err(io)
}

/// Exit code for a finished report.
pub fn exit_code(report: &SuiteReport) -> i32 {
    if report.consistent() {
        EXIT_OK
    } else {
        EXIT_MISMATCH
    }
}

/// Full CLI: parse `argv`, run, emit, and return the process exit code.
pub fn main_with_args<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(stderr, "{e}") } else { write!(stdout, "{e}") };
            return code;
        }
    };
    let result = RunConfig::from_args(&args).and_then(|cfg| {
        let report = execute(&cfg)?;
        emit(&cfg, &report, stdout)?;
        Ok(report)
    });
    match result {
        Ok(report) => {
            if let Some(w) = report.oracle.as_ref().and_then(|o| o.warning.as_ref()) {
                let _ = writeln!(stderr, "warning: {w}");
            }
            for e in report.mismatches() {
                let _ = writeln!(stderr, "mismatch: {}/{} is {:?}, manifest expects {:?}", e.suite, e.id, e.status, e.expected);
            }
            exit_code(&report)
        }
        Err(e) => {
            let _ = writeln!(stderr, "fslab: {e}");
            EXIT_CONFIG
        }
    }
}
