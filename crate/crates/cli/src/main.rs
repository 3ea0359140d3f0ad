mod commands;
mod io;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hm_core::Engine;

/// Hypermaps, partial duals and partial-dual genus polynomials.
#[derive(Parser, Debug)]
#[command(name = "hm", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Output {
    /// Output path; `-` or absent writes to stdout.
    #[arg(short = 'o', long = "output", value_name = "PATH")]
    pub path: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct Threads {
    /// Worker threads for subset enumeration.
    #[arg(long, env = "HM_THREADS", value_name = "N")]
    pub threads: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Counts, genus and orientability of a hypermap.
    Info {
        input: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// The full dual.
    Dual {
        input: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// The partial dual with respect to a hyperedge subset.
    Pdual {
        input: PathBuf,
        /// Hyperedge names separated by commas, or a `0b...` mask.
        #[arg(short = 'A', long = "subset", value_name = "SUBSET")]
        subset: String,
        #[command(flatten)]
        out: Output,
    },
    /// The partial-dual Euler-genus polynomial.
    Poly {
        input: PathBuf,
        #[arg(long, default_value_t = Engine::Formula)]
        engine: Engine,
        /// Report the orientable-genus polynomial instead.
        #[arg(long)]
        orientable: bool,
        #[command(flatten)]
        threads: Threads,
        #[arg(long)]
        json: bool,
    },
    /// Spectrum, gaps and interpolation of the polynomial.
    Spectrum {
        input: PathBuf,
        #[arg(long)]
        orientable: bool,
        #[command(flatten)]
        threads: Threads,
        #[arg(long)]
        json: bool,
    },
    /// Writes a bundled example or a family member as HMF.
    Gen {
        family: String,
        n: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Identifies a vertex corner of one map with a corner of another.
    Join {
        first: PathBuf,
        second: PathBuf,
        /// Corner of the first map, e.g. `v1@x17`.
        #[arg(long, value_name = "CORNER")]
        at: String,
        /// Corner of the second map.
        #[arg(long, value_name = "CORNER")]
        at2: String,
        #[command(flatten)]
        out: Output,
    },
    /// Connects two maps through a new hyperedge at the picked corners.
    Amalgamate {
        first: PathBuf,
        second: PathBuf,
        /// Corners of the first map, e.g. `v1@x17,v3@x21`.
        #[arg(long, value_name = "PICKS")]
        at: String,
        #[arg(long, value_name = "PICKS")]
        at2: String,
        /// Hyperedge of the first map that all of its picks must meet.
        #[arg(long, value_name = "NAME")]
        hyperedge: Option<String>,
        /// Hyperedge of the second map that all of its picks must meet.
        #[arg(long, value_name = "NAME")]
        hyperedge2: Option<String>,
        #[command(flatten)]
        out: Output,
    },
    /// Replaces a hyperedge with three incidences by a vertex and three hyperedges.
    Subdivide {
        input: PathBuf,
        #[arg(short = 'e', long = "hyperedge", value_name = "NAME")]
        hyperedge: String,
        #[command(flatten)]
        out: Output,
    },
    /// Adds a degree-one vertex to a hyperedge before the given label.
    Pendant {
        input: PathBuf,
        #[arg(short = 'e', long = "hyperedge", value_name = "NAME")]
        hyperedge: String,
        #[arg(long, value_name = "LABEL")]
        at: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Runs every identity check and prints a JSON report.
    Check {
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
        #[arg(long, default_value_t = hm_core::verify::DEFAULT_SUBSET_CAP)]
        subset_cap: usize,
        #[command(flatten)]
        threads: Threads,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("{}", err.to_json());
            ExitCode::from(1)
        }
    }
}
