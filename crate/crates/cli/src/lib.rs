//! Command-line front end: argument handling, polynomial text format,
//! JSON certificates and Newton polygon plots.

pub mod cert;
pub mod svg;
pub mod text;

use std::collections::BTreeSet;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use edcert_core::{
    certify_search, dumas_concat_holds, is_ed, is_ed_strict, newton_polygon, BigInt, EdReport,
    FactorEffort, FormalPoly, PAdic, SearchConfig, Verdict,
};
use thiserror::Error;

use crate::text::{format_poly, parse_int_list, parse_matrix, parse_poly, ParseError};

/// Environment variable capping Pollard-Brent iterations per cofactor.
pub const RHO_ITERATIONS_VAR: &str = "EDCERT_RHO_ITERATIONS";

pub const EXIT_TRUE: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "edcert",
    version,
    about = "Eisenstein-Dumas irreducibility certificates over Q"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the Eisenstein-Dumas conditions at one prime.
    EdCheck {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        prime: String,
        /// Use the strict interior inequality.
        #[arg(long)]
        strict: bool,
        /// Formal degree, if larger than the actual degree.
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Print the Newton polygon at a prime.
    Newton {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        prime: String,
        /// Write an SVG plot to this file.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Apply a 2x2 matrix "a,b;c,d" to a polynomial.
    Act {
        #[arg(long)]
        poly: String,
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Search for an irreducibility certificate.
    Certify {
        #[arg(long)]
        poly: String,
        /// Height bound for the one-parameter stage.
        #[arg(long, default_value_t = edcert_core::certify::DEFAULT_T_HEIGHT)]
        t_height: u64,
        /// Extra primes to try, comma separated.
        #[arg(long)]
        primes: Option<String>,
        /// Write the certificate as JSON to this file.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Check that the Newton polygon of A·B concatenates those of A and B.
    Dumas {
        #[arg(long = "polyA")]
        poly_a: String,
        #[arg(long = "polyB")]
        poly_b: String,
        #[arg(long)]
        prime: String,
    },
    /// Re-validate a JSON certificate.
    Verify {
        #[arg(long)]
        json: PathBuf,
    },
    /// Decide irreducibility by exhaustive factor search (degree at most 6).
    #[command(hide = true)]
    Oracle {
        #[arg(long)]
        poly: String,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Core(#[from] edcert_core::Error),
    #[error("{0}")]
    Io(String),
    #[error("invalid {name}: {value:?}")]
    Invalid { name: &'static str, value: String },
}

fn prime_arg(text: &str) -> Result<PAdic, CliError> {
    let p: BigInt = text.trim().parse().map_err(|_| CliError::Invalid {
        name: "prime",
        value: text.to_string(),
    })?;
    Ok(PAdic::new(p)?)
}

fn effort_from_env() -> Result<FactorEffort, CliError> {
    let mut effort = FactorEffort::default();
    if let Ok(value) = std::env::var(RHO_ITERATIONS_VAR) {
        effort.rho_iterations = value.trim().parse().map_err(|_| CliError::Invalid {
            name: RHO_ITERATIONS_VAR,
            value,
        })?;
    }
    Ok(effort)
}

fn write_report(out: &mut dyn Write, r: &EdReport) -> std::io::Result<()> {
    writeln!(out, "D0 (a_0 a_n != 0): {}", r.d0)?;
    match r.gcd_value {
        Some(g) => writeln!(out, "D1 (gcd = {g}): {}", r.d1)?,
        None => writeln!(out, "D1: {}", r.d1)?,
    }
    match r.failing_index {
        Some(i) => writeln!(out, "D2{}: false (fails at i = {i})", strict_tag(r))?,
        None => writeln!(out, "D2{}: {}", strict_tag(r), r.d2)?,
    }
    writeln!(
        out,
        "verdict: {}",
        if r.verdict {
            "Eisenstein-Dumas"
        } else {
            "not Eisenstein-Dumas"
        }
    )
}

fn strict_tag(r: &EdReport) -> &'static str {
    if r.strict {
        " (strict)"
    } else {
        ""
    }
}

fn io_err(e: std::io::Error) -> CliError {
    CliError::Io(e.to_string())
}

fn exit_for(b: bool) -> i32 {
    if b {
        EXIT_TRUE
    } else {
        EXIT_FALSE
    }
}

/// Runs one command, writing normal output to `out`. Returns the exit code.
pub fn execute(command: Command, out: &mut dyn Write) -> Result<i32, CliError> {
    match command {
        Command::EdCheck {
            poly,
            prime,
            strict,
            degree,
        } => {
            let a = parse_poly(&poly, degree)?;
            let v = prime_arg(&prime)?;
            let report = if strict {
                is_ed_strict(&a, &v)
            } else {
                is_ed(&a, &v)
            };
            write_report(out, &report).map_err(io_err)?;
            Ok(exit_for(report.verdict))
        }
        Command::Newton { poly, prime, svg } => {
            let a = parse_poly(&poly, None)?;
            let v = prime_arg(&prime)?;
            let polygon = newton_polygon(&a, &v)?;
            let pts = |ps: &[(usize, i64)]| {
                ps.iter()
                    .map(|(i, e)| format!("({i}, {e})"))
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            writeln!(out, "points: {}", pts(polygon.points())).map_err(io_err)?;
            writeln!(out, "vertices: {}", pts(polygon.vertices())).map_err(io_err)?;
            let slopes: Vec<String> = polygon
                .slope_multiset()
                .iter()
                .map(|(s, m)| format!("{s} (x{m})"))
                .collect();
            writeln!(out, "slopes: {}", slopes.join(", ")).map_err(io_err)?;
            if let Some(path) = svg {
                let title = format!("{} at {}", format_poly(&a), v);
                std::fs::write(&path, svg::render(&polygon, &title)).map_err(io_err)?;
            }
            Ok(EXIT_TRUE)
        }
        Command::Act {
            poly,
            matrix,
            degree,
        } => {
            let a = parse_poly(&poly, degree)?;
            let g = parse_matrix(&matrix)?;
            let image = a.act(&g);
            writeln!(
                out,
                "{} (formal degree {})",
                format_poly(&image),
                image.formal_degree()
            )
            .map_err(io_err)?;
            Ok(EXIT_TRUE)
        }
        Command::Certify {
            poly,
            t_height,
            primes,
            json,
        } => {
            let a = parse_poly(&poly, None)?;
            let mut config = SearchConfig::with_height(t_height);
            config.effort = effort_from_env()?;
            if let Some(list) = primes {
                config.extra_primes = parse_int_list(&list)?;
            }
            let cert = certify_search(&a, &config)?;
            match (&cert.verdict, &cert.witness) {
                (Verdict::Irreducible, Some(w)) => {
                    writeln!(
                        out,
                        "irreducible: Eisenstein-Dumas at p = {}, {}",
                        w.prime, w.stage
                    )
                    .map_err(io_err)?;
                    if let Some(t) = &w.t {
                        writeln!(out, "t: {t}").map_err(io_err)?;
                    }
                    writeln!(out, "transform: {}", w.transform).map_err(io_err)?;
                    writeln!(out, "witness: {}", format_poly(&w.polynomial)).map_err(io_err)?;
                }
                (
                    Verdict::Inconclusive {
                        candidates_complete,
                    },
                    _,
                ) => {
                    let tried: BTreeSet<&BigInt> = cert.audit.iter().map(|e| &e.prime).collect();
                    let tried: Vec<String> = tried.iter().map(|p| p.to_string()).collect();
                    writeln!(out, "inconclusive: no Eisenstein-Dumas witness found")
                        .map_err(io_err)?;
                    writeln!(out, "primes tried: {}", tried.join(", ")).map_err(io_err)?;
                    writeln!(out, "candidate primes complete: {candidates_complete}")
                        .map_err(io_err)?;
                }
                (Verdict::Irreducible, None) => {
                    unreachable!("irreducible verdict carries a witness")
                }
            }
            if let Some(path) = json {
                std::fs::write(&path, cert::to_json(&cert)).map_err(io_err)?;
            }
            Ok(exit_for(cert.verdict == Verdict::Irreducible))
        }
        Command::Dumas {
            poly_a,
            poly_b,
            prime,
        } => {
            let a = parse_poly(&poly_a, None)?;
            let b = parse_poly(&poly_b, None)?;
            let v = prime_arg(&prime)?;
            let holds = dumas_concat_holds(&a, &b, &v)?;
            writeln!(
                out,
                "concatenation {}",
                if holds { "holds" } else { "fails" }
            )
            .map_err(io_err)?;
            Ok(exit_for(holds))
        }
        Command::Verify { json } => {
            let text = std::fs::read_to_string(&json).map_err(io_err)?;
            match cert::verify_json(&text) {
                Ok(_) => {
                    writeln!(out, "valid certificate").map_err(io_err)?;
                    Ok(EXIT_TRUE)
                }
                Err(e @ cert::VerifyError::Malformed(_)) => Err(CliError::Io(e.to_string())),
                Err(e) => {
                    writeln!(out, "invalid certificate: {e}").map_err(io_err)?;
                    Ok(EXIT_FALSE)
                }
            }
        }
        Command::Oracle { poly } => {
            let a = parse_poly(&poly, None)?;
            let verdict = edcert_core::brute_irreducible(&a)?;
            match &verdict.factors {
                None => writeln!(out, "irreducible over Q").map_err(io_err)?,
                Some((f, g)) => {
                    let show = |c: &[BigInt]| {
                        format_poly(&FormalPoly::new(
                            c.iter().cloned().map(Into::into).collect(),
                        ))
                    };
                    writeln!(out, "reducible: ({}) * ({})", show(f), show(g)).map_err(io_err)?;
                }
            }
            Ok(exit_for(verdict.irreducible))
        }
    }
}

/// Parses arguments and runs. Usage, parse and precondition errors print a
/// one-line reason to `err` and return [`EXIT_ERROR`].
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_ERROR
            } else {
                EXIT_TRUE
            };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{rendered}")
            } else {
                write!(out, "{rendered}")
            };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
    }
}
