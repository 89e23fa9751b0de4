use std::f64::consts::FRAC_PI_4;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use dirac_discord::rindler::{acceleration_to_r, RindlerPair, UnruhParameter};
use dirac_discord::sweep::{self, PairSelection, SweepConfig};
use dirac_discord::{verify, Error, OptimizerConfig};

#[derive(Parser, Debug)]
#[command(
    name = "dirac-discord",
    version,
    about = "Classical correlation, discord and negativity of Unruh-degraded Dirac modes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sweep r over a linear grid and write CSV records.
    Sweep(SweepArgs),
    /// Evaluate a single state, given r or (omega, a).
    Point(PointArgs),
    /// Run the limit, closed-form and ordering checks.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct OptimizerArgs {
    /// Coarse grid points in theta on [0, pi].
    #[arg(long, default_value_t = 64)]
    theta_grid: usize,
    /// Coarse grid points in phi on [0, 2pi).
    #[arg(long, default_value_t = 32)]
    phi_grid: usize,
    /// Golden-section bracket tolerance in radians.
    #[arg(long, default_value_t = 1e-8)]
    refine_tol: f64,
}

impl OptimizerArgs {
    fn config(&self) -> OptimizerConfig {
        OptimizerConfig {
            theta_grid: self.theta_grid,
            phi_grid: self.phi_grid,
            refine_tolerance: self.refine_tol,
            ..OptimizerConfig::default()
        }
    }
}

#[derive(Args, Debug)]
struct SweepArgs {
    /// AI, AII, III or ALL.
    #[arg(long, default_value = "ALL")]
    pair: String,
    #[arg(long, default_value_t = 0.0)]
    r_min: f64,
    #[arg(long, default_value_t = FRAC_PI_4)]
    r_max: f64,
    #[arg(long, default_value_t = sweep::DEFAULT_STEPS)]
    steps: usize,
    /// Output file, or `-` for standard output.
    #[arg(long, default_value = "-")]
    out: String,
    #[command(flatten)]
    optimizer: OptimizerArgs,
}

#[derive(Args, Debug)]
struct PointArgs {
    /// AI, AII or III.
    #[arg(long)]
    pair: String,
    #[arg(long)]
    r: Option<f64>,
    /// Mode frequency (natural units), used together with --a.
    #[arg(long)]
    omega: Option<f64>,
    /// Proper acceleration (natural units), used together with --omega.
    #[arg(long)]
    a: Option<f64>,
    #[command(flatten)]
    optimizer: OptimizerArgs,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Interior grid points on (0, pi/4) for the ordering checks.
    #[arg(long, default_value_t = 50)]
    grid_steps: usize,
    #[command(flatten)]
    optimizer: OptimizerArgs,
}

enum Failure {
    Usage(String),
    Numeric(String),
    Verification,
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidConfig(_) | Error::NonPositiveInput(_) => Failure::Usage(e.to_string()),
            other => Failure::Numeric(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Sweep(args) => run_sweep(args),
        Command::Point(args) => run_point(args),
        Command::Verify(args) => run_verify(args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Numeric(msg)) => {
            eprintln!("numeric failure: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::Io(e)) => {
            eprintln!("i/o error: {e}");
            ExitCode::from(3)
        }
    }
}

fn run_sweep(args: SweepArgs) -> Result<(), Failure> {
    let cfg = SweepConfig {
        pairs: args.pair.parse::<PairSelection>()?,
        r_min: args.r_min,
        r_max: args.r_max,
        steps: args.steps,
        optimizer: args.optimizer.config(),
    };
    cfg.validate()?;
    let records = sweep::run_sweep(&cfg)?;
    if args.out == "-" {
        sweep::write_csv(BufWriter::new(io::stdout().lock()), &records)?;
    } else {
        let path = PathBuf::from(&args.out);
        let file = File::create(&path)
            .map_err(|e| Failure::Usage(format!("cannot create {}: {e}", path.display())))?;
        sweep::write_csv(BufWriter::new(file), &records)?;
    }
    Ok(())
}

fn run_point(args: PointArgs) -> Result<(), Failure> {
    let pair: RindlerPair = args.pair.parse()?;
    let (r, source) = match (args.r, args.omega, args.a) {
        (Some(r), None, None) => (UnruhParameter::new(r)?, None),
        (None, Some(omega), Some(a)) => (acceleration_to_r(omega, a)?, Some((omega, a))),
        _ => {
            return Err(Failure::Usage(
                "give exactly one of --r or the pair --omega/--a".into(),
            ))
        }
    };
    let opt = args.optimizer.config();
    opt.validate()?;
    let rec = sweep::evaluate(pair, r, &opt)?;

    let mut out = io::stdout().lock();
    if let Some((omega, a)) = source {
        writeln!(
            out,
            "omega = {omega}, a = {a}  ->  r = {}",
            sweep::format_value(r.value())
        )?;
    }
    writeln!(out, "{rec}")?;
    writeln!(out)?;
    sweep::write_csv(&mut out, std::slice::from_ref(&rec))?;
    Ok(())
}

fn run_verify(args: VerifyArgs) -> Result<(), Failure> {
    let report = verify::run(args.grid_steps, &args.optimizer.config())?;
    println!("{report}");
    if report.all_hard_pass() {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}
