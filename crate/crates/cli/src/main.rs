//! `coxconj`: conjugacy computations on Coxeter systems from the command line.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use serde::Serialize;

use coxeter_conj::conjugacy::{self, CertStep, ConjCertificate, ConjGraph, TightKind};
use coxeter_conj::verify::{self, VerifyConfig};
use coxeter_conj::{CoxeterSystem, Element, Error};

#[derive(Parser)]
#[command(name = "coxconj", version, about = "Conjugacy in Coxeter groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Normal form and length of a word.
    Reduce { system: PathBuf, word: String },
    /// Minimal length in the conjugacy class.
    ConjMin {
        system: PathBuf,
        word: String,
        /// Also list every minimal-length conjugate.
        #[arg(long)]
        all: bool,
    },
    /// Decide conjugacy; prints a certificate when conjugate.
    ConjTest { system: PathBuf, w1: String, w2: String },
    /// Graph of shift and tight steps around a class.
    TightGraph {
        system: PathBuf,
        word: String,
        /// Write DOT to this file instead of stdout.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Check ℓ(wⁿ) = n·ℓ(w) for n up to nmax.
    Straight {
        system: PathBuf,
        word: String,
        #[arg(long, default_value_t = conjugacy::DEFAULT_NMAX)]
        nmax: usize,
    },
    /// Run a property suite and print its report.
    Verify {
        system: PathBuf,
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 8)]
        max_length: usize,
        #[arg(long)]
        radius: Option<usize>,
        #[arg(long, default_value_t = conjugacy::DEFAULT_NMAX)]
        nmax: usize,
        /// Run the convexity check on corrupted samples.
        #[arg(long)]
        corrupt: bool,
    },
}

/// Failure classes mapped to exit codes.
enum Failure {
    Usage(anyhow::Error),
    Cap(anyhow::Error),
    Other(anyhow::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } | Error::UnknownLabel(_) | Error::InvalidSystem(_) | Error::GeneratorOutOfRange { .. } => {
                Failure::Usage(e.into())
            }
            Error::Precondition(_) | Error::NotSpherical(_) => Failure::Usage(e.into()),
            Error::ResourceCap { .. } => Failure::Cap(e.into()),
            _ => Failure::Other(e.into()),
        }
    }
}

fn load(path: &Path) -> Result<CoxeterSystem, Failure> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))
        .map_err(Failure::Usage)?;
    CoxeterSystem::parse(&text)
        .with_context(|| format!("in {}", path.display()))
        .map_err(|e| match e.downcast_ref::<Error>() {
            Some(Error::ResourceCap { .. }) => Failure::Cap(e),
            _ => Failure::Usage(e),
        })
}

fn element(sys: &CoxeterSystem, text: &str) -> Result<Element, Failure> {
    Ok(sys.element(text)?)
}

fn print_json<T: Serialize>(value: &T) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Failure::Other(e.into()))?;
    println!("{text}");
    Ok(())
}

#[derive(Serialize)]
struct ReduceOut {
    nf: String,
    length: usize,
    reduced_input: bool,
}

#[derive(Serialize)]
struct ConjMinOut {
    min_length: usize,
    representative: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    o_min: Option<Vec<String>>,
}

#[derive(Serialize)]
struct StepOut {
    kind: &'static str,
    from: String,
    to: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    generator: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    subset: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    x: Option<String>,
}

#[derive(Serialize)]
struct CertificateOut {
    conjugate: bool,
    start: String,
    end: String,
    chain: Vec<StepOut>,
}

#[derive(Serialize)]
struct StraightOut {
    straight: bool,
    nmax: usize,
    straight_up_to: usize,
    fails_at: Option<usize>,
}

#[derive(Serialize)]
struct GraphOut {
    nodes: Vec<String>,
    edges: Vec<EdgeOut>,
}

#[derive(Serialize)]
struct EdgeOut {
    from: usize,
    to: usize,
    label: String,
}

fn step_out(sys: &CoxeterSystem, step: &CertStep) -> StepOut {
    let f = |e: &Element| sys.format_element(e);
    let mut out = StepOut {
        kind: "shift",
        from: f(step.source()),
        to: f(step.target()),
        generator: None,
        subset: None,
        x: None,
    };
    match step {
        CertStep::Shift(s) => out.generator = Some(sys.label(s.s).to_owned()),
        CertStep::Unshift(s) => {
            out.kind = "unshift";
            out.generator = Some(sys.label(s.s).to_owned());
        }
        CertStep::Tight(t) => match &t.kind {
            TightKind::Shift(s) => {
                out.kind = "tight1";
                out.generator = Some(sys.label(*s).to_owned());
            }
            TightKind::Parabolic { subset, x } => {
                out.kind = "tight2";
                out.subset = Some(sys.format_subset(*subset));
                out.x = Some(f(x));
            }
        },
    }
    out
}

fn certificate_out(sys: &CoxeterSystem, cert: &ConjCertificate) -> CertificateOut {
    CertificateOut {
        conjugate: true,
        start: sys.format_element(&cert.start),
        end: sys.format_element(&cert.end),
        chain: cert.chain.iter().map(|s| step_out(sys, s)).collect(),
    }
}

fn graph_out(sys: &CoxeterSystem, g: &ConjGraph) -> GraphOut {
    GraphOut {
        nodes: g.nodes.iter().map(|n| sys.format_element(n)).collect(),
        edges: g
            .edges
            .iter()
            .map(|e| EdgeOut {
                from: e.from,
                to: e.to,
                label: ConjGraph::edge_label(sys, &e.kind),
            })
            .collect(),
    }
}

/// Runs a command and returns its exit code on success.
fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Reduce { system, word } => {
            let sys = load(&system)?;
            let w = sys.parse_word(&word)?;
            let e = sys.reduce(&w)?;
            print_json(&ReduceOut {
                nf: sys.format_element(&e),
                length: e.length(),
                reduced_input: e.length() == w.len(),
            })?;
            Ok(0)
        }
        Command::ConjMin { system, word, all } => {
            let sys = load(&system)?;
            let w = element(&sys, &word)?;
            let c = conjugacy::conj_min(&sys, &w)?;
            print_json(&ConjMinOut {
                min_length: c.min_length,
                representative: sys.format_element(&c.representative),
                o_min: all.then(|| c.o_min.iter().map(|u| sys.format_element(u)).collect()),
            })?;
            Ok(0)
        }
        Command::ConjTest { system, w1, w2 } => {
            let sys = load(&system)?;
            let a = element(&sys, &w1)?;
            let b = element(&sys, &w2)?;
            match conjugacy::are_conjugate(&sys, &a, &b)? {
                Some(cert) => {
                    print_json(&certificate_out(&sys, &cert))?;
                    Ok(0)
                }
                None => {
                    print_json(&serde_json::json!({ "conjugate": false }))?;
                    Ok(1)
                }
            }
        }
        Command::TightGraph { system, word, dot } => {
            let sys = load(&system)?;
            let w = element(&sys, &word)?;
            let g = conjugacy::tight_graph(&sys, &w)?;
            match dot {
                Some(path) => {
                    fs::write(&path, g.to_dot(&sys))
                        .with_context(|| format!("cannot write {}", path.display()))
                        .map_err(Failure::Other)?;
                    print_json(&graph_out(&sys, &g))?;
                }
                None => print!("{}", g.to_dot(&sys)),
            }
            Ok(0)
        }
        Command::Straight { system, word, nmax } => {
            let sys = load(&system)?;
            let w = element(&sys, &word)?;
            let s = conjugacy::straightness(&sys, &w, nmax)?;
            print_json(&StraightOut {
                straight: s.is_straight(),
                nmax: s.nmax,
                straight_up_to: s.straight_up_to,
                fails_at: s.fails_at,
            })?;
            Ok(0)
        }
        Command::Verify {
            system,
            suite,
            max_length,
            radius,
            nmax,
            corrupt,
        } => {
            let sys = load(&system)?;
            if !verify::SUITES.contains(&suite.as_str()) && suite != "lusztig" {
                return Err(Failure::Usage(anyhow::anyhow!(
                    "unknown suite `{suite}` (expected one of {})",
                    verify::SUITES.join(", ")
                )));
            }
            let cfg = VerifyConfig {
                max_length,
                radius,
                nmax,
                corrupt,
                ..VerifyConfig::default()
            };
            let name = system.file_stem().and_then(|s| s.to_str()).unwrap_or("system");
            let report = verify::run_suite(&sys, name, &suite, &cfg)?;
            print_json(&report)?;
            Ok(if report.ok() { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Cap(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(3)
        }
        Err(Failure::Other(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
