//! `logbundle`: exact computations with hyperplane arrangements from the
//! command line. Every command prints one JSON document; rationals are
//! strings. Exit status is 0 on success, 1 when the input is well-formed but
//! the operation refuses it, and 2 when the input cannot be read.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::Value;

use logbundle::io::ErrorRecord;

#[derive(Parser, Debug)]
#[command(
    name = "logbundle",
    version,
    about = "Exact computations with hyperplane arrangements"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Seed of the xorshift64* generator used by sampling commands.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Number of samples for sampling commands.
    #[arg(long, global = true, default_value_t = 20)]
    pub trials: usize,
    /// Write the document here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Indent the JSON and add a plain-text summary.
    #[arg(long, global = true)]
    pub pretty: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check that points (or forms) are in linearly general position.
    GpCheck { points: PathBuf },
    /// Associated configuration in the dual space of relations.
    Associate { points: PathBuf },
    /// Test whether 2n + 2 points of P^n are self-associated.
    SelfAssociated { points: PathBuf },
    /// Fundamental tensor of an arrangement.
    Tensor { forms: PathBuf },
    /// Coefficients of the Chern polynomial of the logarithmic bundle.
    Chern {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
    },
    /// Cohomology dimensions of E(k) from a tensor or an arrangement.
    Cohomology {
        input: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
    },
    /// Splitting type on each line of a batch.
    SplittingType { input: PathBuf, lines: PathBuf },
    /// Jumping-line test on each line of a batch.
    JumpTest { input: PathBuf, lines: PathBuf },
    /// Super-jumping test on each line of a batch.
    SuperJumpTest { input: PathBuf, lines: PathBuf },
    /// Transport a line along a non-jumping line (arrangements with m = nd + 1).
    Connection { forms: PathBuf, query: PathBuf },
    /// Equation of the curve of jumping lines for 2d + 1 lines of the plane.
    JumpingCurve { points: PathBuf },
    /// Basis of the degree-d monoids with a given codimension-2 flat.
    MonoidBasis {
        flat: PathBuf,
        #[arg(long)]
        d: usize,
    },
    /// A degree-d monoid with the flat passing through the points.
    MonoidThrough {
        flat: PathBuf,
        points: PathBuf,
        #[arg(long)]
        d: usize,
    },
    /// Membership of a flat in the monoidal complex of nd + 1 points.
    Membership { points: PathBuf, flat: PathBuf },
    /// Rational normal curve through n + 3 points.
    RncThrough { points: PathBuf },
    /// Schwarzenberger tensor for m points on the rational normal curve of P^n.
    Schwarzenberger {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
    },
    /// Solve for an isomorphism between two tensors (or arrangements).
    Iso { first: PathBuf, second: PathBuf },
    /// Classify two arrangements with m >= 2n + 3 up to bundle isomorphism.
    Torelli { first: PathBuf, second: PathBuf },
    /// Sample flats through q and test for quadrics through them and the points.
    Adjoint {
        points: PathBuf,
        /// Comma-separated coordinates, e.g. `--q=1,-2,3/4`.
        #[arg(long, allow_hyphen_values = true)]
        q: String,
    },
    /// Conditions imposed on quadrics and the curve they force.
    Castelnuovo { points: PathBuf },
}

/// Failure of a command, split by exit status.
#[derive(Debug)]
pub enum CliError {
    Input(String),
    Domain(logbundle::Error),
}

impl From<logbundle::Error> for CliError {
    fn from(e: logbundle::Error) -> Self {
        if e.is_malformed() {
            CliError::Input(e.to_string())
        } else {
            CliError::Domain(e)
        }
    }
}

fn render(doc: &Value, pretty: bool) -> String {
    let mut text = if pretty {
        serde_json::to_string_pretty(doc)
    } else {
        serde_json::to_string(doc)
    }
    .expect("JSON values always serialize");
    text.push('\n');
    text
}

fn emit(doc: &Value, global: &Global) -> Result<(), String> {
    let text = render(doc, global.pretty);
    match &global.out {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display()))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (doc, status) = match commands::run(&cli.command, &cli.global) {
        Ok(doc) => (doc, 0),
        Err(CliError::Domain(e)) => {
            let record = ErrorRecord::from(&e);
            (serde_json::to_value(record).expect("plain record"), 1)
        }
        Err(CliError::Input(msg)) => {
            let record = ErrorRecord {
                error: "malformed_input".into(),
                message: msg,
                subset: None,
            };
            (serde_json::to_value(record).expect("plain record"), 2)
        }
    };
    if let Err(msg) = emit(&doc, &cli.global) {
        eprintln!("{msg}");
        return ExitCode::from(2);
    }
    ExitCode::from(status)
}
