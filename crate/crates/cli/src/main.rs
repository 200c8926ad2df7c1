use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;

/// Exit status 1: the input could not be used.
/// Exit status 2: an internal consistency check failed.
#[derive(Debug)]
pub enum CliError {
    Input(anyhow::Error),
    Internal(anyhow::Error),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 1,
            CliError::Internal(_) => 2,
        }
    }
}

pub fn input_err(e: impl Into<anyhow::Error>) -> CliError {
    CliError::Input(e.into())
}

#[derive(Parser, Debug)]
#[command(name = "knotqp", version, about = "Signature, braiding and quasipositivity verdicts for link diagrams")]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for randomized checks and generators.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct InputArg {
    /// PD text, PD JSON (leading `{`) or braid text (`strands: n`); `-` reads stdin.
    pub input: PathBuf,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Seifert data and diagram flags.
    Classify {
        #[command(flatten)]
        input: InputArg,
        /// Random spanning trees used to cross-check d, d+ and d-.
        #[arg(long, default_value_t = 16)]
        trees: usize,
    },
    /// Quasipositivity verdict with certificate.
    Certify {
        #[command(flatten)]
        input: InputArg,
        /// Braid index of the link; switches to the braid-data criterion.
        #[arg(long, requires = "wbeta")]
        b: Option<u32>,
        /// Writhe of a braid representative with `b` strands.
        #[arg(long, requires = "b", allow_hyphen_values = true)]
        wbeta: Option<i64>,
    },
    /// Signature, nullity and determinant.
    Invariants {
        #[command(flatten)]
        input: InputArg,
    },
    /// Braid word by Vogel moves.
    Braid {
        #[command(flatten)]
        input: InputArg,
    },
    /// Evaluate 2r- <= d- over a table and/or the two-bridge corpus.
    Scan {
        /// CSV or JSON knot table. Its rows are scanned and supply braid data
        /// for two-bridge entries; without it the bundled table is used for
        /// the latter.
        table: Option<PathBuf>,
        /// Include two-bridge diagrams with term sum up to this value.
        #[arg(long)]
        two_bridge: Option<usize>,
        /// Smallest term sum for two-bridge diagrams.
        #[arg(long, default_value_t = 2)]
        two_bridge_min: usize,
        /// Write the full report here.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Generate diagrams or braid words.
    #[command(subcommand)]
    Gen(GenCommand),
}

#[derive(Subcommand, Debug)]
pub enum GenCommand {
    /// Alternating diagram of the two-bridge link with the given continued fraction.
    TwoBridge {
        /// Terms, e.g. `3 2` or `3,2`.
        #[arg(required = true, value_delimiter = ',', allow_hyphen_values = true)]
        terms: Vec<i64>,
    },
    /// Random quasipositive braid word (uses --seed).
    Qp {
        #[arg(long, default_value_t = 4)]
        strands: usize,
        #[arg(long, default_value_t = 4)]
        factors: usize,
        #[arg(long, default_value_t = 3)]
        max_conj: usize,
    },
}

pub fn read_text(path: &Path) -> Result<String, CliError> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(input_err)?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| input_err(anyhow::anyhow!("{}: {e}", path.display())))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match commands::run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            match &e {
                CliError::Input(err) => eprintln!("error: {err:#}"),
                CliError::Internal(err) => eprintln!("internal error: {err:#}"),
            }
            ExitCode::from(e.code())
        }
    }
}
