mod commands;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use galchar::oracle::DEFAULT_SEED;
use galchar::Error;
use serde_json::json;

#[derive(Parser)]
#[command(name = "galchar", version, about = "Galois characters of GL_n(F_q)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format; csv is only available for `table`.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Seed for the randomized steps of the oracle.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Directory for cached oracle tables.
    #[arg(long, global = true, env = "GALCHAR_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Args, Clone, Copy)]
pub struct GroupArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub q: u64,
}

#[derive(Args, Clone, Copy)]
pub struct GaloisArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub q: u64,
    #[arg(long, default_value_t = 1)]
    pub d: u64,
}

#[derive(Args, Clone, Copy)]
pub struct GradedArgs {
    #[arg(long = "n-max")]
    pub n_max: u32,
    #[arg(long)]
    pub q: u64,
    #[arg(long, default_value_t = 1)]
    pub d: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Check {
    Positivity,
    Selfdual,
    Axioms,
    Oracle,
}

#[derive(Subcommand)]
enum Command {
    /// Class parameters with centralizer orders.
    Classes(GroupArgs),
    /// Irreducible character parameters.
    Chars(GroupArgs),
    /// Galois classes: orbits of class parameters.
    GaloisClasses(GaloisArgs),
    /// d-Galois irreducibles: orbits of character parameters.
    GaloisIrr(GaloisArgs),
    /// The d-Galois character table.
    Table(GaloisArgs),
    /// Product constants of the orbit basis up to a total degree.
    Product(GradedArgs),
    /// Coproduct constants of the orbit basis up to a degree.
    Coproduct(GradedArgs),
    /// Cuspidal orbit basis elements of one degree.
    Cuspidals(GaloisArgs),
    /// Decomposes the rows of a table document into d-Galois irreducibles.
    Decompose {
        /// Table document; standard input when omitted.
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Runs the verification suite.
    Verify {
        #[command(flatten)]
        graded: GradedArgs,
        #[arg(long, value_enum, value_delimiter = ',')]
        checks: Vec<Check>,
    },
    /// Brute-force character table with power-map orbits.
    Oracle(GaloisArgs),
    /// Admissible d for the tower up to n-max.
    AdmissibleD {
        #[arg(long)]
        q: u64,
        #[arg(long = "n-max")]
        n_max: u32,
    },
}

/// What a command produced: a JSON document, optionally tabular, and whether
/// its checks passed.
pub struct Outcome {
    pub doc: serde_json::Value,
    pub csv: Option<Vec<Vec<String>>>,
    pub passed: bool,
}

impl Outcome {
    pub fn json(doc: serde_json::Value) -> Self {
        Outcome {
            doc,
            csv: None,
            passed: true,
        }
    }
}

fn error_kind(e: &Error) -> (&'static str, u8) {
    match e {
        Error::Capacity(_) => ("capacity", 2),
        Error::Falsification(_) => ("falsification", 3),
        Error::InvalidInput(_) | Error::InvalidResidue { .. } => ("invalid_input", 1),
        Error::UnsupportedFormat(_) => ("unsupported_format", 1),
        Error::Parse(_) => ("parse", 1),
        Error::Io(_) => ("io", 1),
    }
}

fn report_error(kind: &str, message: &str, code: u8) -> ExitCode {
    let doc = json!({ "error": { "kind": kind, "message": message } });
    eprintln!("{doc}");
    ExitCode::from(code)
}

fn default_cache_dir() -> Option<PathBuf> {
    if let Some(x) = std::env::var_os("XDG_CACHE_HOME").filter(|x| !x.is_empty()) {
        return Some(PathBuf::from(x).join("galchar"));
    }
    std::env::var_os("HOME")
        .filter(|x| !x.is_empty())
        .map(|h| PathBuf::from(h).join(".cache").join("galchar"))
}

fn render(outcome: &Outcome, format: Format) -> Result<String, Error> {
    match (format, &outcome.csv) {
        (Format::Json, _) => {
            let mut s = serde_json::to_string_pretty(&outcome.doc)?;
            s.push('\n');
            Ok(s)
        }
        (Format::Csv, Some(rows)) => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for r in rows {
                w.write_record(r).map_err(|e| Error::Io(e.to_string()))?;
            }
            let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
            String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
        }
        (Format::Csv, None) => Err(Error::UnsupportedFormat(
            "csv output is only available for tables".into(),
        )),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            let text = e.to_string();
            let message: Vec<&str> = text
                .lines()
                .take_while(|l| !l.starts_with("Usage:"))
                .map(|l| l.trim().trim_start_matches("error: "))
                .filter(|l| !l.is_empty())
                .collect();
            return report_error("usage", &message.join(" "), 1);
        }
    };
    let cache_dir = cli.cache_dir.clone().or_else(default_cache_dir);
    let ctx = commands::Context {
        seed: cli.seed,
        cache_dir,
        format: cli.format,
    };
    let result = commands::run(&cli.command, &ctx)
        .and_then(|o| render(&o, cli.format).map(|s| (s, o.passed)));
    match result {
        Ok((text, passed)) => {
            let mut out = std::io::stdout().lock();
            if out
                .write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .is_err()
            {
                return ExitCode::from(1);
            }
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(3)
            }
        }
        Err(e) => {
            let (kind, code) = error_kind(&e);
            report_error(kind, &e.to_string(), code)
        }
    }
}
