//! Command-line front end for `kstab-core`.
//!
//! Every subcommand prints a short summary, writes an optional JSON
//! document embedding its input, the tool version, the seed and the
//! agreement flags of its internal cross-checks, and exits with
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success |
//! | 2 | input error |
//! | 3 | resource cap exceeded |
//! | 4 | internal consistency failure |

pub mod args;
pub mod commands;
pub mod document;
pub mod svg;

use std::ffi::OsString;
use std::io::Write;
use std::path::Path;

use clap::Parser;
use kstab_core::githm::DEFAULT_CAP;
use kstab_core::{Error, ErrorKind};

use args::{Cli, Command};
use commands::Context;
use document::{Document, Outcome};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;
pub const EXIT_CONSISTENCY: i32 = 4;

pub const CAP_ENV: &str = "KSTAB_CAP";

pub fn exit_code(e: &Error) -> i32 {
    match e.kind() {
        ErrorKind::Input => EXIT_INPUT,
        ErrorKind::Resource => EXIT_RESOURCE,
        ErrorKind::Consistency => EXIT_CONSISTENCY,
    }
}

/// `--cap`, then `KSTAB_CAP`, then the library default.
fn resolve_cap(flag: Option<usize>, env: Option<String>) -> Result<usize, Error> {
    if let Some(c) = flag {
        return Ok(c);
    }
    match env {
        Some(s) => s.trim().parse().map_err(|_| {
            Error::InvalidInput(format!("{CAP_ENV}={s:?} is not a nonnegative integer"))
        }),
        None => Ok(DEFAULT_CAP),
    }
}

pub fn execute(command: &Command, ctx: Context) -> Result<Outcome, Error> {
    match command {
        Command::AVector(a) => commands::a_vector_cmd(&a.pair, ctx),
        Command::Beta(a) => commands::beta_cmd(a, ctx),
        Command::SInvariant(a) => commands::s_invariant_cmd(a, ctx),
        Command::KssPolytope(a) => commands::kss_polytope_cmd(&a.pair, ctx),
        Command::ConeChain(a) => commands::cone_chain_cmd(&a.pair, ctx),
        Command::CmWeight(a) => commands::cm_weight_cmd(a, ctx),
        Command::EffectiveLinearization(a) => commands::effective_cmd(a, ctx),
        Command::GitCheck(a) => commands::git_check_cmd(a, ctx),
        Command::VgitChambers(a) => commands::vgit_cmd(a, ctx),
        Command::ConeVerify(a) => commands::cone_verify_cmd(a, ctx),
        Command::Report(a) => commands::report_cmd(a, ctx),
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), Error> {
    std::fs::write(path, contents)
        .map_err(|e| Error::InvalidInput(format!("cannot write {}: {e}", path.display())))
}

/// Parses `args` (including the program name), runs the subcommand and
/// returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let target: &mut dyn Write = if code == 0 { out } else { err };
            let _ = write!(target, "{e}");
            return if code == 0 { EXIT_OK } else { EXIT_INPUT };
        }
    };
    match run_cli(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn run_cli(cli: &Cli, out: &mut dyn Write) -> Result<i32, Error> {
    let cap = resolve_cap(cli.output.cap, std::env::var(CAP_ENV).ok())?;
    let ctx = Context {
        cap,
        decimal: cli.output.decimal,
    };
    let outcome = execute(&cli.command, ctx)?;
    let doc = Document::new(&outcome, cap, ctx.decimal).render();

    if let Some(path) = &cli.output.svg {
        match &outcome.svg {
            Some(s) => write_file(path, s)?,
            None => {
                return Err(Error::InvalidInput(
                    "SVG output needs two boundary components (polytopes and chamber segments)"
                        .into(),
                ))
            }
        }
    }
    let to_stdout = cli.output.json.as_deref() == Some(Path::new("-"));
    match &cli.output.json {
        Some(_) if to_stdout => {
            let _ = out.write_all(doc.as_bytes());
        }
        Some(path) => write_file(path, &doc)?,
        None => {}
    }
    if !to_stdout {
        for line in &outcome.summary {
            let _ = writeln!(out, "{line}");
        }
        for (name, passed) in &outcome.checks {
            if !passed {
                let _ = writeln!(out, "check failed: {name}");
            }
        }
    }
    Ok(if outcome.all_checks_pass() {
        EXIT_OK
    } else {
        EXIT_CONSISTENCY
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cap_resolution() {
        assert_eq!(resolve_cap(Some(7), Some("9".into())).unwrap(), 7);
        assert_eq!(resolve_cap(None, Some("9".into())).unwrap(), 9);
        assert_eq!(resolve_cap(None, None).unwrap(), DEFAULT_CAP);
        assert!(resolve_cap(None, Some("many".into())).is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Error::Parse("x".into())), EXIT_INPUT);
        assert_eq!(
            exit_code(&Error::CapExceeded {
                what: "walls",
                count: 2,
                cap: 1
            }),
            EXIT_RESOURCE
        );
        assert_eq!(
            exit_code(&Error::Inconsistent("x".into())),
            EXIT_CONSISTENCY
        );
    }
}
