use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use lehmer_verify::data::DataFiles;
use lehmer_verify::lattice::parse_rational;
use lehmer_verify::suites::{run_suite, Config};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Md,
}

/// Run a verification suite and print its report.
#[derive(Parser, Debug)]
#[command(name = "verify", version)]
struct Cli {
    /// One of: all, lattice, salem, lagrangians, cubic, surface.
    suite: String,
    /// Directory with surface.poly, automorphism.poly, points.dat and
    /// e10_basis.dat (defaults to the bundled copies).
    #[arg(long)]
    data: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "md")]
    format: Format,
    /// Width bound for real-root intervals, e.g. 1e-9 or 1/1000.
    #[arg(long, default_value = "1e-9")]
    precision: String,
    /// Largest extension degree searched for singular points.
    #[arg(long, default_value_t = 10)]
    ext_bound: u32,
    /// Record elapsed milliseconds per check (makes output nondeterministic).
    #[arg(long)]
    timings: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let data = match &cli.data {
        Some(dir) => match DataFiles::from_dir(dir) {
            Ok(d) => d,
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
        },
        None => DataFiles::bundled(),
    };
    let Some(precision) =
        parse_rational(&cli.precision).filter(|p| *p > num_rational::BigRational::from_integer(0.into()))
    else {
        eprintln!("error: invalid precision `{}`", cli.precision);
        return ExitCode::from(2);
    };
    if cli.ext_bound == 0 || cli.ext_bound > 63 {
        eprintln!("error: --ext-bound must lie in 1..=63");
        return ExitCode::from(2);
    }
    let cfg = Config { data, precision, ext_bound: cli.ext_bound, timings: cli.timings };
    let report = match run_suite(&cli.suite, &cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match cli.format {
        Format::Json => print!("{}", report.to_json()),
        Format::Md => print!("{}", report.to_markdown()),
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
