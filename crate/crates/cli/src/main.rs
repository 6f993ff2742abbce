use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use viswork_core::run::Algo;
use viswork_core::testgen::Family;

mod bench;
mod common;
mod compute;
mod gen;
mod svg;
mod verify;

#[derive(Parser)]
#[command(name = "viswork", version, about = "Visibility polygons of a point in a simple polygon")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute the visibility polygon of one input file.
    Compute(ComputeArgs),
    /// Compare algorithms against the brute-force reference.
    Verify(VerifyArgs),
    /// Emit one CSV row of measurements per run.
    Bench(BenchArgs),
    /// Write a generated polygon file.
    Gen(GenArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Svg,
}

#[derive(Args, Clone, Copy, Debug)]
pub struct StrictArgs {
    /// Validate simplicity, interiority and general position (default up to 10^4 vertices).
    #[arg(long, overrides_with = "no_strict")]
    strict: bool,
    /// Skip the quadratic validation.
    #[arg(long, overrides_with = "strict")]
    no_strict: bool,
}

impl StrictArgs {
    pub fn resolve(self, n: usize) -> bool {
        if self.strict {
            true
        } else if self.no_strict {
            false
        } else {
            n <= viswork_core::polygon_store::STRICT_DEFAULT_MAX_N
        }
    }
}

#[derive(Args)]
pub struct ComputeArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value = "const")]
    algo: Algo,
    /// Workspace parameter of the divide-and-conquer variants.
    #[arg(long, default_value_t = 4)]
    s: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[command(flatten)]
    strict: StrictArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Where instances come from: files, a generated family, or both.
#[derive(Args, Clone)]
pub struct InstanceArgs {
    /// Polygon file; repeatable.
    #[arg(long)]
    input: Vec<PathBuf>,
    #[arg(long)]
    family: Option<Family>,
    /// Sizes for the family (vertices, or teeth for comb).
    #[arg(long, value_delimiter = ',')]
    sizes: Vec<usize>,
    /// Generator seeds for the family.
    #[arg(long, value_delimiter = ',', default_value = "0")]
    gen_seeds: Vec<u64>,
    /// Star viewpoint offset `x,y` in radius units.
    #[arg(long, value_delimiter = ',', num_args = 2, default_values_t = [0, 0], allow_negative_numbers = true)]
    offset: Vec<i64>,
    /// Star radii `R,r`.
    #[arg(long, value_delimiter = ',', num_args = 2, default_values_t = [8, 3])]
    radii: Vec<u32>,
}

#[derive(Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    instances: InstanceArgs,
    #[arg(long, value_delimiter = ',', default_value = "const")]
    algo: Vec<Algo>,
    #[arg(long, value_delimiter = ',', default_value = "4")]
    s: Vec<u32>,
    #[arg(long, value_delimiter = ',', default_value = "0")]
    seed: Vec<u64>,
    #[command(flatten)]
    strict: StrictArgs,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Swap the two events after p0 in every algorithm output before
    /// comparing; checks that the harness notices.
    #[arg(long, hide = true)]
    inject_fault: bool,
}

#[derive(Args)]
pub struct BenchArgs {
    #[command(flatten)]
    instances: InstanceArgs,
    #[arg(long, value_delimiter = ',', default_value = "const")]
    algo: Vec<Algo>,
    #[arg(long, value_delimiter = ',', default_value = "4")]
    s: Vec<u32>,
    #[arg(long, value_delimiter = ',', default_value = "0")]
    seed: Vec<u64>,
    #[arg(long, default_value_t = 1)]
    reps: usize,
    #[command(flatten)]
    strict: StrictArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
pub struct GenArgs {
    family: Family,
    /// Size (vertices, or teeth for comb) or, for `degenerate`, the kind:
    /// collinear-pair, vertex-on-p0-ray, q-on-boundary.
    param: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_delimiter = ',', num_args = 2, default_values_t = [0, 0], allow_negative_numbers = true)]
    offset: Vec<i64>,
    #[arg(long, value_delimiter = ',', num_args = 2, default_values_t = [8, 3])]
    radii: Vec<u32>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.cmd {
        Cmd::Compute(a) => compute::run(a),
        Cmd::Verify(a) => verify::run(a),
        Cmd::Bench(a) => bench::run(a),
        Cmd::Gen(a) => gen::run(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("viswork: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
