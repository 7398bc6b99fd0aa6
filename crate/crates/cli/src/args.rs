use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use periodpoly::DEFAULT_MAX_Q;

#[derive(Debug, Parser)]
#[command(name = "periodpoly", version, about = "Factor and verify reduced period polynomials of degree 2^m")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the closed-form factorization of P*_{2^m} over F_{p^s}.
    Factor {
        #[command(flatten)]
        inst: Instance,
        #[command(flatten)]
        common: Common,
    },
    /// Compare the closed form with an independent oracle and record the result.
    Verify {
        #[command(flatten)]
        inst: Instance,
        #[arg(long, value_enum, default_value_t = OracleChoice::Auto)]
        oracle: OracleChoice,
        /// JSON Lines file receiving one record per run; PERIODPOLY_CACHE takes precedence.
        #[arg(long, value_name = "PATH")]
        cache: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Enumerate the reduced periods of degree e.
    Periods {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        s: u32,
        #[arg(long)]
        e: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Print the normalized quadratic partition of index r.
    Partition {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        s: u32,
        #[arg(long)]
        r: u32,
        #[arg(long = "type", value_enum, ignore_case = true)]
        kind: KindChoice,
        #[command(flatten)]
        common: Common,
    },
    /// Check the Gauss and Jacobi sum identities on characters of 2-power order.
    Lemmas {
        #[command(flatten)]
        inst: Instance,
        /// Comma-separated identity names to run.
        #[arg(long, value_delimiter = ',')]
        only: Option<Vec<String>>,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug, Args)]
pub struct Instance {
    #[arg(long)]
    pub p: u64,
    #[arg(long)]
    pub s: u32,
    #[arg(long)]
    pub m: u32,
}

#[derive(Debug, Args)]
pub struct Common {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Largest field size that may be enumerated.
    #[arg(long = "max-q", default_value_t = DEFAULT_MAX_Q)]
    pub max_q: u64,
    /// Worker threads for enumeration; defaults to the available parallelism.
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OracleChoice {
    Auto,
    Brute,
    Lift,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KindChoice {
    A,
    C,
}
