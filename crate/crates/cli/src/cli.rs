//! Command-line interface.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::document::{parse_input, InputDocument, Mode};
use crate::examples::generate_example;
use crate::num::{parse_int_list, parse_rational_list};
use crate::report::{check_document, render_text, run_report, ReportOptions};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILURE: u8 = 1;
pub const EXIT_PARSE: u8 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "quasitoric",
    version,
    about = "Exact genera of quasitoric manifolds"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute the full report, including the rigidity check.
    Compute {
        #[arg(long)]
        input: PathBuf,
        /// Generic circle as comma-separated integers, e.g. "1,2".
        #[arg(long, allow_hyphen_values = true)]
        nu: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Rational sample points for the rigidity check, e.g. "1/2,3".
        #[arg(long, allow_hyphen_values = true)]
        samples: Option<String>,
    },
    /// Validate the polytope and the characteristic matrix only.
    Check {
        #[arg(long)]
        input: PathBuf,
    },
    /// Print or write a built-in example document.
    Example {
        name: String,
        #[arg(long)]
        write: Option<PathBuf>,
    },
    /// Toric report for a document in toric mode.
    Toric {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

fn load(path: &PathBuf, err: &mut dyn Write) -> Result<InputDocument, u8> {
    let text = fs::read_to_string(path).map_err(|e| {
        let _ = writeln!(err, "error: cannot read {}: {e}", path.display());
        EXIT_PARSE
    })?;
    parse_input(&text).map_err(|e| {
        let _ = writeln!(err, "error: {}: {e}", path.display());
        EXIT_PARSE
    })
}

fn report(
    doc: &InputDocument,
    options: &ReportOptions,
    format: Format,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> u8 {
    match run_report(doc, options) {
        Ok(r) => {
            let text = match format {
                Format::Json => r.to_json() + "\n",
                Format::Text => render_text(&r),
            };
            let _ = out.write_all(text.as_bytes());
            if r.checks_passed() {
                EXIT_OK
            } else {
                let _ = writeln!(err, "error: a cross-check failed");
                EXIT_FAILURE
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_FAILURE
        }
    }
}

/// Runs a parsed command line and returns the process exit code.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    match cli.command {
        Command::Compute {
            input,
            nu,
            format,
            samples,
        } => {
            let doc = match load(&input, err) {
                Ok(d) => d,
                Err(code) => return code,
            };
            let mut options = ReportOptions::default();
            if let Some(nu) = nu {
                match parse_int_list(&nu) {
                    Some(v) => options.nu = Some(v),
                    None => {
                        let _ = writeln!(err, "error: --nu: expected comma-separated integers");
                        return EXIT_PARSE;
                    }
                }
            }
            if let Some(samples) = samples {
                match parse_rational_list(&samples) {
                    Some(v) => options.samples = v,
                    None => {
                        let _ =
                            writeln!(err, "error: --samples: expected comma-separated rationals");
                        return EXIT_PARSE;
                    }
                }
            }
            report(&doc, &options, format, out, err)
        }
        Command::Check { input } => {
            let doc = match load(&input, err) {
                Ok(d) => d,
                Err(code) => return code,
            };
            match check_document(&doc) {
                Ok(v) if v.unimodular => {
                    let dets: Vec<String> =
                        v.minor_determinants.iter().map(|d| d.to_string()).collect();
                    let _ = writeln!(out, "valid: vertex minors ({})", dets.join(", "));
                    EXIT_OK
                }
                Ok(v) => {
                    for &i in &v.offending_vertices {
                        let _ = writeln!(
                            err,
                            "vertex {i}: minor has determinant {}",
                            v.minor_determinants[i]
                        );
                    }
                    let _ = writeln!(
                        out,
                        "invalid: not unimodular at {} vertices",
                        v.offending_vertices.len()
                    );
                    EXIT_FAILURE
                }
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                    EXIT_FAILURE
                }
            }
        }
        Command::Example { name, write } => match generate_example(&name) {
            Ok(doc) => {
                let text = doc.to_json() + "\n";
                match write {
                    Some(path) => {
                        if let Err(e) = fs::write(&path, text) {
                            let _ = writeln!(err, "error: cannot write {}: {e}", path.display());
                            return EXIT_FAILURE;
                        }
                    }
                    None => {
                        let _ = out.write_all(text.as_bytes());
                    }
                }
                EXIT_OK
            }
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                EXIT_PARSE
            }
        },
        Command::Toric { input, format } => {
            let doc = match load(&input, err) {
                Ok(d) => d,
                Err(code) => return code,
            };
            if doc.mode != Mode::Toric {
                let _ = writeln!(
                    err,
                    "error: `toric` needs a document with \"mode\": \"toric\""
                );
                return EXIT_PARSE;
            }
            report(&doc, &ReportOptions::default(), format, out, err)
        }
    }
}
