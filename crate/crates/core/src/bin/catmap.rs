use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use catmap::cli::{self, Command, Format, Level, RunConfig};
use catmap::{Construction, ShearPhase};

type Grid = Vec<u64>;

/// Quantized cat maps on the torus.
#[derive(Parser, Debug)]
#[command(name = "catmap", version)]
struct Args {
    #[arg(value_enum)]
    command: Command,

    /// Matrix as "a,b,c,d" (row-major).
    #[arg(long, value_parser = cli::parse_matrix)]
    g: Option<[i64; 4]>,

    /// Moduli: "lo..hi", "n1,n2,..." or a single value.
    #[arg(long = "N", value_parser = cli::parse_moduli)]
    moduli: Option<Grid>,

    /// Fourier mode "m,n" of the observable.
    #[arg(long, value_parser = cli::parse_observable, default_value = "1,0")]
    observable: [i64; 2],

    #[arg(long, value_enum, default_value = "json")]
    format: Format,

    #[arg(long, default_value = ".")]
    output: PathBuf,

    /// Fail with status 3 when g is outside the theta group for some N.
    #[arg(long)]
    strict_theta: bool,

    #[arg(long, conflicts_with = "full")]
    quick: bool,

    #[arg(long)]
    full: bool,

    /// Override a tolerance, e.g. --tol egorov=1e-9.
    #[arg(long = "tol", value_parser = cli::parse_tolerance)]
    tolerances: Vec<(String, f64)>,

    #[arg(long, value_enum)]
    construction: Option<Construction>,

    /// Largest power in the equidistribution statistics.
    #[arg(long, default_value_t = 4)]
    k_max: usize,

    #[arg(long, default_value_t = 20240601)]
    seed: u64,

    /// Phase used for the shear generator.
    #[arg(long, value_enum, default_value = "half")]
    shear_phase: ShearPhase,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let mut config = RunConfig::new(args.command);
    config.g = args.g;
    config.moduli = args.moduli.unwrap_or_default();
    config.observable = args.observable;
    config.format = args.format;
    config.output = args.output;
    config.strict_theta = args.strict_theta;
    config.level = if args.full { Level::Full } else { Level::Quick };
    config.tolerances.extend(args.tolerances);
    config.construction = args.construction;
    config.k_max = args.k_max;
    config.seed = args.seed;
    config.conventions = config.conventions.with_shear_phase(args.shear_phase);

    let outcome = cli::run(&config);
    for m in &outcome.messages {
        eprintln!("{m}");
    }
    for f in &outcome.files {
        println!("{}", f.display());
    }
    ExitCode::from(outcome.exit_code as u8)
}
