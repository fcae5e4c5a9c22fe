use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use spinsurgery::dsl::{parse_word, ParseError};
use spinsurgery::json::{
    convention_report_json, element_to_json, link_from_json, link_to_json, membership_bits,
    parse_membership, structure_report_json, torelli_report_json, trace_to_json, ConventionsJson,
    LinkJson,
};
use spinsurgery::verify::{run_suite, Status, SUITES};
use spinsurgery_core::algebra::{abelianization_report, torelli_image_report, SquarefreeAlgebra};
use spinsurgery_core::homomorphisms::{
    bc_mu, bc_mu_via_link, beta_closed, beta_link_traced, calibrate_conventions,
};
use spinsurgery_core::invariants::{arf_sublink, rochlin, signature_exact, total_linking};
use spinsurgery_core::surgery::{build_mapping_torus_link, characteristic_sublink};
use spinsurgery_core::{
    CharacteristicSublink, CohomologyF2, Conventions, Error, HomologyF2, SpinStructure, TwistWord,
};

const BUILDER_MAX_GENUS: usize = 6;
const REPORT_MAX_GENUS: usize = 3;
const SEED_VAR: &str = "SPINSURGERY_SEED";

#[derive(Parser)]
#[command(
    name = "spinsurgery",
    version,
    about = "Spin-structure invariants of level-2 mapping tori"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Route {
    Link,
    Closed,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate β_{σ,x} on a level-2 word.
    EvalSato {
        #[arg(long)]
        genus: usize,
        #[arg(long, default_value = "")]
        word: String,
        /// Membership seeds of the basis curves, one bit per basis class.
        #[arg(long)]
        spin: String,
        #[arg(long)]
        x: String,
        #[arg(long, value_enum, default_value = "link")]
        route: Route,
        #[arg(long)]
        trace: bool,
    },
    /// Evaluate the Birman–Craggs homomorphism on a Torelli word.
    EvalBc {
        #[arg(long)]
        genus: usize,
        #[arg(long, default_value = "")]
        word: String,
        #[arg(long, value_enum, default_value = "closed")]
        route: Route,
        #[arg(long)]
        trace: bool,
    },
    /// Print the framed link of a word's mapping torus as JSON.
    BuildLink {
        #[arg(long)]
        genus: usize,
        #[arg(long, default_value = "")]
        word: String,
        /// Also record the characteristic sublink of this spin structure.
        #[arg(long)]
        spin: Option<String>,
    },
    /// Rochlin invariant of a link with a characteristic sublink, mod 16.
    Rochlin {
        #[arg(long, conflicts_with = "link")]
        genus: Option<usize>,
        #[arg(long, requires = "genus")]
        word: Option<String>,
        /// JSON link from `build-link`; `-` reads stdin.
        #[arg(long)]
        link: Option<PathBuf>,
        #[arg(long)]
        spin: Option<String>,
        /// Explicit membership bit-string in component order.
        #[arg(long, conflicts_with = "spin")]
        membership: Option<String>,
    },
    /// Structure of the abelianization computed in the squarefree algebra.
    Abelianize {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        spin: Option<String>,
        /// Also report the image of the Torelli group.
        #[arg(long)]
        torelli: bool,
    },
    /// Run seeded verification suites.
    Verify {
        /// One of routes, homomorphism, birman-craggs, kirby, phi, bridge, roundtrip, or all.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        genus: usize,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Overridden by SPINSURGERY_SEED when set.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Sweep the convention assignments and print the frozen one.
    Calibrate {
        /// Print every candidate instead of only the selected assignment.
        #[arg(long)]
        report: bool,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Core(#[from] Error),
    #[error("{0}")]
    Failed(String),
}

fn core_kind(e: &Error) -> &'static str {
    match e {
        Error::InvalidGenus(_) => "invalid_genus",
        Error::LengthMismatch { .. } => "length_mismatch",
        Error::GenusMismatch { .. } => "genus_mismatch",
        Error::InvalidBits(_) => "invalid_bits",
        Error::NonPrimitive(_) => "non_primitive",
        Error::ZeroClass => "zero_class",
        Error::NonSymplectic(_) => "non_symplectic",
        Error::DegenerateChain(_) => "degenerate_chain",
        Error::InvalidSeparating(_) => "invalid_separating",
        Error::InvalidExponent { .. } => "invalid_exponent",
        Error::NotLevel2 => "not_level2",
        Error::NotTorelli => "not_torelli",
        Error::UnsupportedLetter(_) => "unsupported_letter",
        Error::NonSymmetric(..) => "non_symmetric",
        Error::InconsistentSystem => "inconsistent_system",
        Error::UnderdeterminedSystem { .. } => "underdetermined_system",
        Error::NotCharacteristic(_) => "not_characteristic",
        Error::Unreducible(_) => "unreducible",
        Error::OddParity(_) => "odd_parity",
        Error::IndexOutOfRange { .. } => "index_out_of_range",
        Error::InvalidMove(_) => "invalid_move",
        Error::Overflow => "overflow",
        Error::CostGuard(_) => "cost_guard",
        Error::NotExpressible(_) => "not_expressible",
        Error::Calibration(_) => "calibration",
    }
}

/// Errors the input can cause are usage errors; the rest mean the
/// computation contradicted itself.
fn core_exit(e: &Error) -> u8 {
    match e {
        Error::InconsistentSystem
        | Error::UnderdeterminedSystem { .. }
        | Error::Unreducible(_)
        | Error::OddParity(_)
        | Error::Overflow
        | Error::Calibration(_) => 3,
        _ => 2,
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Parse(_) => 2,
            CliError::Core(e) => core_exit(e),
            CliError::Failed(_) => 1,
        }
    }

    fn to_json(&self) -> Value {
        let (kind, position) = match self {
            CliError::Usage(_) => ("usage", None),
            CliError::Parse(p) => ("parse", Some(p.position)),
            CliError::Core(e) => (core_kind(e), None),
            CliError::Failed(_) => ("verification_failed", None),
        };
        let mut body =
            json!({ "kind": kind, "message": self.to_string(), "exit_code": self.exit_code() });
        if let Some(p) = position {
            body["position"] = json!(p);
        }
        if let CliError::Parse(ParseError {
            source: Some(e), ..
        }) = self
        {
            body["cause"] = json!(core_kind(e));
        }
        json!({ "error": body })
    }
}

type Out = Result<(), CliError>;

fn check_genus(genus: usize, max: usize) -> Result<(), CliError> {
    if (1..=max).contains(&genus) {
        Ok(())
    } else {
        Err(CliError::Usage(format!(
            "genus must be in 1..={max}, got {genus}"
        )))
    }
}

fn word(genus: usize, text: &str) -> Result<TwistWord, CliError> {
    check_genus(genus, BUILDER_MAX_GENUS)?;
    Ok(parse_word(text, genus)?)
}

/// Write one line to stdout; a closed pipe ends the process quietly.
fn emit(line: impl std::fmt::Display) {
    let mut out = std::io::stdout().lock();
    if let Err(e) = writeln!(out, "{line}") {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        panic!("cannot write to stdout: {e}");
    }
}

fn print_json(v: &Value) {
    emit(serde_json::to_string_pretty(v).expect("values serialize"));
}

fn eval_sato(genus: usize, text: &str, spin: &str, x: &str, route: Route, trace: bool) -> Out {
    let w = word(genus, text)?;
    let sigma = SpinStructure::parse(genus, spin)?;
    let x = CohomologyF2::parse(genus, x)?;
    let traced = match route {
        Route::Closed => None,
        _ => Some(beta_link_traced(&w, &sigma, &x)?),
    };
    let closed = match route {
        Route::Link => None,
        _ => Some(beta_closed(&w, &sigma, &x)?),
    };
    if let (Some(t), Some(c)) = (&traced, closed) {
        if t.value != c {
            return Err(CliError::Failed(format!(
                "routes disagree: link {}, closed {c}",
                t.value
            )));
        }
    }
    let value = traced
        .as_ref()
        .map(|t| t.value)
        .or(closed)
        .expect("one route ran");
    emit(value.value());
    if trace {
        let mut v = match &traced {
            Some(t) => trace_to_json(t),
            None => json!({}),
        };
        if let Some(c) = closed {
            v["closed"] = json!(c.value());
        }
        print_json(&v);
    }
    Ok(())
}

fn eval_bc(genus: usize, text: &str, route: Route, trace: bool) -> Out {
    let w = word(genus, text)?;
    let closed = if route == Route::Link {
        None
    } else {
        Some(bc_mu(&w)?)
    };
    let linked = if route == Route::Closed {
        None
    } else {
        Some(bc_mu_via_link(&w)?)
    };
    if let (Some(a), Some(b)) = (closed, linked) {
        if a != b {
            return Err(CliError::Failed(format!(
                "routes disagree: closed {}, link {}",
                a as u8, b as u8
            )));
        }
    }
    emit(closed.or(linked).expect("one route ran") as u8);
    if trace {
        let link = build_mapping_torus_link(&w)?;
        let sub = characteristic_sublink(&link, &SpinStructure::eta(genus))?;
        print_json(&json!({
            "link": link_to_json(&link),
            "sublink": membership_bits(&sub),
            "signature": signature_exact(link.linking()),
            "total_linking": total_linking(&link, &sub)?,
            "arf": arf_sublink(&link, &sub)? as u8,
            "rochlin": rochlin(&link, &sub)?.value(),
        }));
    }
    Ok(())
}

fn build_link(genus: usize, text: &str, spin: Option<&str>) -> Out {
    let w = word(genus, text)?;
    let link = build_mapping_torus_link(&w)?;
    let mut v = serde_json::to_value(link_to_json(&link)).expect("links serialize");
    if let Some(spin) = spin {
        let sub = characteristic_sublink(&link, &SpinStructure::parse(genus, spin)?)?;
        v["sublink"] = json!(membership_bits(&sub));
    }
    print_json(&v);
    Ok(())
}

fn read_link(path: &PathBuf) -> Result<(LinkJson, Option<String>), CliError> {
    let text = if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin())
    } else {
        std::fs::read_to_string(path)
    }
    .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let v: Value =
        serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("bad link JSON: {e}")))?;
    let sublink = v.get("sublink").and_then(Value::as_str).map(str::to_string);
    let link =
        serde_json::from_value(v).map_err(|e| CliError::Usage(format!("bad link JSON: {e}")))?;
    Ok((link, sublink))
}

fn rochlin_cmd(
    genus: Option<usize>,
    text: Option<&str>,
    path: Option<&PathBuf>,
    spin: Option<&str>,
    membership: Option<&str>,
) -> Out {
    let (link, stored) = match (genus, path) {
        (Some(g), None) => (
            build_mapping_torus_link(&word(g, text.unwrap_or(""))?)?,
            None,
        ),
        (None, Some(p)) => {
            let (j, stored) = read_link(p)?;
            (link_from_json(j)?, stored)
        }
        _ => {
            return Err(CliError::Usage(
                "give either --genus/--word or --link".into(),
            ))
        }
    };
    let sub = match (membership, spin, stored) {
        (Some(m), _, _) => CharacteristicSublink::from_membership(&link, parse_membership(m)?)?,
        (None, Some(s), _) => {
            characteristic_sublink(&link, &SpinStructure::parse(link.genus(), s)?)?
        }
        (None, None, Some(m)) => {
            CharacteristicSublink::from_membership(&link, parse_membership(&m)?)?
        }
        (None, None, None) => return Err(CliError::Usage("give --spin or --membership".into())),
    };
    emit(rochlin(&link, &sub)?.value());
    Ok(())
}

fn abelianize(genus: usize, spin: Option<&str>, torelli: bool) -> Out {
    check_genus(genus, REPORT_MAX_GENUS)?;
    let sigma = match spin {
        Some(s) => SpinStructure::parse(genus, s)?,
        None => SpinStructure::eta(genus),
    };
    let report = abelianization_report(&sigma)?;
    let alg = SquarefreeAlgebra::new(sigma);
    let generators = HomologyF2::all(genus)
        .skip(1)
        .map(|c| Ok(json!({ "class": c.to_string(), "image": element_to_json(&alg.gen_bar(c)?) })))
        .collect::<Result<Vec<_>, Error>>()?;
    let mut v =
        json!({ "abelianization": structure_report_json(&report), "generators": generators });
    if torelli {
        if genus < 2 {
            return Err(CliError::Usage("--torelli needs genus 2 or 3".into()));
        }
        v["torelli"] = torelli_report_json(&torelli_image_report(&sigma)?);
    }
    print_json(&v);
    Ok(())
}

fn seed(flag: u64) -> Result<u64, CliError> {
    match std::env::var(SEED_VAR) {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{SEED_VAR}={s:?} is not an unsigned integer"))),
        Err(_) => Ok(flag),
    }
}

fn verify(suite: &str, genus: usize, samples: usize, flag_seed: u64) -> Out {
    check_genus(genus, BUILDER_MAX_GENUS)?;
    let seed = seed(flag_seed)?;
    let names: Vec<&str> = if suite == "all" {
        SUITES.to_vec()
    } else {
        vec![suite]
    };
    emit(format_args!("seed {seed}"));
    let mut failed = Vec::new();
    for name in names {
        let outcome = run_suite(name, genus, samples, seed).ok_or_else(|| {
            CliError::Usage(format!(
                "unknown suite {name:?}; expected one of {SUITES:?} or all"
            ))
        })??;
        emit(outcome.line());
        if let Status::Fail(_) = outcome.status {
            failed.push(name);
        }
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Failed(format!(
            "suites failed: {}",
            failed.join(", ")
        )))
    }
}

fn calibrate(full: bool) -> Out {
    let report = calibrate_conventions()?;
    let frozen = match report.unique() {
        Some(c) if c == Conventions::FROZEN => c,
        other => {
            return Err(Error::Calibration(format!(
                "{} admissible assignments, selected {other:?}",
                report.survivors.len()
            ))
            .into())
        }
    };
    if full {
        print_json(&convention_report_json(&report));
    } else {
        print_json(&serde_json::to_value(ConventionsJson::from(&frozen)).expect("serializes"));
    }
    Ok(())
}

fn run(cli: Cli) -> Out {
    match &cli.command {
        Command::EvalSato {
            genus,
            word,
            spin,
            x,
            route,
            trace,
        } => eval_sato(*genus, word, spin, x, *route, *trace),
        Command::EvalBc {
            genus,
            word,
            route,
            trace,
        } => eval_bc(*genus, word, *route, *trace),
        Command::BuildLink { genus, word, spin } => build_link(*genus, word, spin.as_deref()),
        Command::Rochlin {
            genus,
            word,
            link,
            spin,
            membership,
        } => rochlin_cmd(
            *genus,
            word.as_deref(),
            link.as_ref(),
            spin.as_deref(),
            membership.as_deref(),
        ),
        Command::Abelianize {
            genus,
            spin,
            torelli,
        } => abelianize(*genus, spin.as_deref(), *torelli),
        Command::Verify {
            suite,
            genus,
            samples,
            seed,
        } => verify(suite, *genus, *samples, *seed),
        Command::Calibrate { report } => calibrate(*report),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let err = CliError::Usage(e.to_string().trim().to_string());
            eprintln!("{}", err.to_json());
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(e.exit_code())
        }
    }
}
