use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qcoh_core::Error;

mod commands;

/// Exact computations in the cohomology and quantum cohomology of moduli
/// spaces of rank-two stable bundles over a curve.
#[derive(Parser, Debug)]
#[command(name = "qcoh", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Allow genus >= 4 quantum data, which is conjectural.
    #[arg(long)]
    pub conjectural: bool,
    /// Write the output here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Working degree bound for quotient rings; for gw-table, the largest
    /// allowed insertion degree 6g - 2 (default 46, i.e. g <= 8).
    #[arg(long)]
    pub max_degree: Option<u32>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlavorArg {
    Classical,
    Floer,
    Quantum,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Engine {
    Both,
    Direct,
    Qhn,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a triple of relations.
    Relations {
        #[arg(long)]
        genus: u32,
        #[arg(long, value_enum, default_value_t = FlavorArg::Classical)]
        flavor: FlavorArg,
        #[command(flatten)]
        common: Common,
    },
    /// Monomial basis and Poincaré polynomial of the invariant ring.
    Basis {
        #[arg(long)]
        genus: u32,
        #[arg(long, value_enum, default_value_t = FlavorArg::Classical)]
        flavor: FlavorArg,
        #[command(flatten)]
        common: Common,
    },
    /// Normal form of an expression in a, b, g.
    Nf {
        #[arg(long)]
        genus: u32,
        #[arg(long)]
        expr: String,
        #[arg(long, value_enum, default_value_t = FlavorArg::Classical)]
        flavor: FlavorArg,
        #[command(flatten)]
        common: Common,
    },
    /// Sp(2g) decomposition of the cohomology.
    Decompose {
        #[arg(long)]
        genus: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Chern character of the extension bundle, step by step.
    Grr {
        #[arg(long)]
        genus: u32,
        #[command(flatten)]
        common: Common,
    },
    /// One line Gromov-Witten invariant.
    Gw {
        #[arg(long)]
        genus: u32,
        #[arg(long, default_value_t = 0)]
        a: u32,
        #[arg(long, default_value_t = 0)]
        b: u32,
        /// Comma-separated indices in 1..=2g.
        #[arg(long, value_delimiter = ',')]
        psi: Vec<usize>,
        #[arg(long, value_enum, default_value_t = Engine::Both)]
        engine: Engine,
        #[command(flatten)]
        common: Common,
    },
    /// All line invariants up to symmetry, as CSV.
    GwTable {
        #[arg(long)]
        genus: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Product in the invariant quantum ring, e.g. "ah * gh^2".
    Qmul {
        #[arg(long)]
        genus: u32,
        #[arg(long)]
        expr: String,
        #[command(flatten)]
        common: Common,
    },
    /// Run a self-check suite.
    Verify {
        #[arg(long, value_parser = qcoh_core::verify::Suite::NAMES, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 3)]
        genus: u32,
        #[command(flatten)]
        common: Common,
    },
}

pub const SCHEMA_VERSION: u32 = 1;
const EXIT_PRECONDITION: u8 = 2;
const EXIT_INTERNAL: u8 = 1;
const EXIT_USAGE: u8 = 64;

/// What a command produced: the JSON payload, its text rendering, and
/// whether every check in it passed.
pub struct Output {
    pub payload: Value,
    pub text: String,
    pub conjectural: bool,
    pub ok: bool,
}

fn conventions(conjectural: bool) -> Value {
    json!({
        "volume_form": qcoh_core::jacobian::VOLUME_CONVENTION,
        "r_g": {"1": "-8", "2": "4", "g>=3": "0"},
        "generators": "a, b, g for alpha, beta, gamma; ah, bh, gh for the hatted classes",
        "conjectural": conjectural,
    })
}

fn envelope(name: &str, genus: u32, body: Value, conjectural: bool, status: &str) -> String {
    let doc = json!({
        "schema_version": SCHEMA_VERSION,
        "command": name,
        "genus": genus,
        "conventions": conventions(conjectural),
        "payload": body,
        "status": status,
    });
    let mut s = serde_json::to_string_pretty(&doc).expect("json values serialize");
    s.push('\n');
    s
}

fn emit(common: &Common, text: &str) -> Result<(), String> {
    match &common.out {
        Some(path) => fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).map_err(|e| e.to_string())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    let (name, genus, common, result) = dispatch(cli.command);
    match result {
        Ok(out) => {
            let status = if out.ok { "ok" } else { "failed" };
            let rendered = match common.format {
                Format::Json => envelope(name, genus, out.payload, out.conjectural, status),
                Format::Text => out.text,
            };
            if let Err(msg) = emit(&common, &rendered) {
                eprintln!("error: {msg}");
                return ExitCode::from(EXIT_INTERNAL);
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_INTERNAL)
            }
        }
        Err(err) => {
            let precondition = err.is_precondition();
            let kind = if precondition { "precondition" } else { "internal" };
            eprintln!("error ({kind}): {err}");
            if common.format == Format::Json {
                let body = json!({"error": {"kind": kind, "message": err.to_string()}});
                let _ = emit(&common, &envelope(name, genus, body, common.conjectural, "error"));
            }
            ExitCode::from(if precondition { EXIT_PRECONDITION } else { EXIT_INTERNAL })
        }
    }
}

fn dispatch(command: Command) -> (&'static str, u32, Common, Result<Output, Error>) {
    use commands as c;
    match command {
        Command::Relations { genus, flavor, common } => {
            let r = c::relations(genus, flavor, &common);
            ("relations", genus, common, r)
        }
        Command::Basis { genus, flavor, common } => {
            let r = c::basis(genus, flavor, &common);
            ("basis", genus, common, r)
        }
        Command::Nf { genus, expr, flavor, common } => {
            let r = c::nf(genus, &expr, flavor, &common);
            ("nf", genus, common, r)
        }
        Command::Decompose { genus, common } => ("decompose", genus, common, c::decompose(genus)),
        Command::Grr { genus, common } => ("grr", genus, common, c::grr(genus)),
        Command::Gw { genus, a, b, psi, engine, common } => {
            let r = c::gw(genus, a, b, psi, engine);
            ("gw", genus, common, r)
        }
        Command::GwTable { genus, common } => {
            let r = c::gw_table(genus, &common);
            ("gw-table", genus, common, r)
        }
        Command::Qmul { genus, expr, common } => {
            let r = c::qmul(genus, &expr, &common);
            ("qmul", genus, common, r)
        }
        Command::Verify { suite, genus, common } => {
            let r = c::verify(&suite, genus);
            ("verify", genus, common, r)
        }
    }
}
