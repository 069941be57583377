//! `polar-rscl`: construction, encoding, decoding, Monte-Carlo simulation,
//! latency reports and sorter inspection from the command line.
//!
//! Exit codes: 0 on success, 1 on usage errors, 2 on data errors.

mod commands;
mod io;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use polar_rscl::MetricDomain;

#[derive(Parser, Debug)]
#[command(name = "polar-rscl", version, about = "Polar code construction, list decoding and hardware latency models")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Command {
    /// Write the frozen set of an (n, k) code.
    Construct(ConstructArgs),
    /// Encode bits read from stdin (or --input) to a codeword.
    Encode(EncodeArgs),
    /// Decode a channel-value file.
    Decode(DecodeArgs),
    /// FER/BER sweep over Eb/N0 points.
    Simulate(SimulateArgs),
    /// Cycle counts, timetable, pipeline and memory figures.
    Latency(LatencyArgs),
    /// Bitonic selection network for 2^s inputs.
    Sorter(SorterArgs),
}

/// Selects the code: a frozen-set file or a Bhattacharyya construction.
#[derive(Args, Debug, Serialize)]
struct CodeArgs {
    /// Frozen-set file as written by `construct`.
    #[arg(long, conflicts_with_all = ["n", "k"])]
    frozen: Option<PathBuf>,
    /// Block length.
    #[arg(long)]
    n: Option<usize>,
    /// Number of information bits.
    #[arg(long)]
    k: Option<usize>,
    /// Erasure probability seeding the construction.
    #[arg(long, default_value_t = polar_rscl::code::DEFAULT_DESIGN_ERASURE)]
    design_erasure: f64,
}

#[derive(Args, Debug, Serialize)]
struct ConstructArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long, default_value_t = polar_rscl::code::DEFAULT_DESIGN_ERASURE)]
    design_erasure: f64,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
struct EncodeArgs {
    #[command(flatten)]
    code: CodeArgs,
    /// Input holds the k information bits instead of the full message u.
    #[arg(long)]
    info: bool,
    #[arg(short, long)]
    input: Option<PathBuf>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum TableFormat {
    #[default]
    Csv,
    Json,
}

#[derive(Args, Debug, Serialize)]
struct DecodeArgs {
    #[command(flatten)]
    code: CodeArgs,
    /// Channel-value file: header `n=<n>`, then one received value per line.
    #[arg(short, long)]
    input: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    list: usize,
    #[arg(long, default_value_t = 0)]
    kbits: u32,
    /// likelihood, log_exact, log_approx or fixed<q>.
    #[arg(long, default_value = "log_exact")]
    domain: MetricDomain,
    /// Eb/N0 in dB used to scale received values into likelihoods.
    #[arg(long, default_value_t = 0.0)]
    ebn0: f64,
    #[arg(long, default_value_t = polar_rscl::channel::DEFAULT_LLR_CLIP)]
    llr_clip: f64,
    /// Write the cycle trace and per-round candidate records as JSON.
    #[arg(long)]
    trace: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
struct SimulateArgs {
    /// JSON file holding every simulation parameter; replaces the flags below.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    design_erasure: Option<f64>,
    /// Comma-separated list sizes.
    #[arg(long, value_delimiter = ',')]
    list: Vec<usize>,
    /// Comma-separated decision exponents.
    #[arg(long, value_delimiter = ',')]
    kbits: Vec<u32>,
    #[arg(long)]
    domain: Option<MetricDomain>,
    /// Comma-separated Eb/N0 points in dB.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    ebn0: Vec<f64>,
    #[arg(long)]
    frames: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    llr_clip: Option<f64>,
    #[arg(long, value_enum, default_value_t)]
    format: TableFormat,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
struct LatencyArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    kbits: u32,
    /// List size for the pipeline and memory figures.
    #[arg(long, default_value_t = 32)]
    list: usize,
    /// Channel quantization bits for the memory figures.
    #[arg(long, default_value_t = 6)]
    q_ch: u32,
    #[arg(long, default_value_t = polar_rscl::hw::DEFAULT_PE_DELAY)]
    pe_delay: u32,
    #[arg(long, default_value_t = polar_rscl::hw::DEFAULT_MCU_DELAY)]
    mcu_delay: u32,
    /// Also emit the per-cycle timetable.
    #[arg(long)]
    timetable: bool,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Args, Debug, Serialize)]
struct SorterArgs {
    #[arg(long)]
    s: u32,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

/// Bad flags or flag combinations; exit code 1.
#[derive(Debug)]
struct UsageError(String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(&cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if e.downcast_ref::<UsageError>().is_some() => {
            eprintln!("usage error: {e}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
