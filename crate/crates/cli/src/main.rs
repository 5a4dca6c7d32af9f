use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use pinched_sphere_cli::commands::{self, ReportKind, RescaleMode, SweepConfig};
use pinched_sphere_cli::verify::{self, Depth};
use pinched_sphere_cli::CliResult;

#[derive(Parser)]
#[command(
    name = "pinched",
    version,
    about = "Pinched-sphere profiles, curvature, Dirac spectra and bounds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Warping-profile operations.
    Profile {
        #[command(subcommand)]
        action: ProfileAction,
    },
    /// Curvature or bounds report of a profile file as CSV.
    Report(ReportArgs),
    /// Smallest eigenvalue of D^2 as JSON.
    Spectrum(SpectrumArgs),
    /// Eigenvalue-bracket sweep over several eta.
    Sweep(SweepArgs),
    /// Run the invariant suite.
    Verify(VerifyArgs),
}

#[derive(Subcommand)]
enum ProfileAction {
    /// Build a profile and write it as JSON.
    Build(BuildArgs),
}

#[derive(Args)]
struct BuildArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0.1)]
    eta: f64,
    #[arg(long = "S", default_value_t = 4.0)]
    s: f64,
    #[arg(long, default_value_t = 512)]
    grid: usize,
    /// Round unit sphere instead of a pinched profile (ignores --eta, --S).
    #[arg(long)]
    round: bool,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Curvature,
    Bounds,
}

#[derive(Clone, Copy, ValueEnum)]
enum RescaleArg {
    Auto,
    None,
}

impl From<RescaleArg> for RescaleMode {
    fn from(r: RescaleArg) -> Self {
        match r {
            RescaleArg::Auto => RescaleMode::Auto,
            RescaleArg::None => RescaleMode::None,
        }
    }
}

#[derive(Args)]
struct ReportArgs {
    #[arg(long)]
    profile: PathBuf,
    #[arg(long, value_enum)]
    kind: KindArg,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, value_enum, default_value = "none")]
    rescale: RescaleArg,
}

#[derive(Args)]
struct SpectrumArgs {
    #[arg(long)]
    profile: PathBuf,
    #[arg(long, default_value_t = 8)]
    modes: usize,
    #[arg(long, default_value_t = 1024)]
    grid: usize,
    #[arg(long, value_enum, default_value = "auto")]
    rescale: RescaleArg,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    n: usize,
    #[arg(long = "S")]
    s: f64,
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    etas: Vec<f64>,
    #[arg(long, default_value_t = 1024)]
    grid: usize,
    #[arg(long, default_value_t = 8)]
    modes: usize,
    #[arg(long, default_value_t = 512)]
    profile_grid: usize,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct VerifyArgs {
    #[arg(long)]
    quick: bool,
    #[arg(long)]
    full: bool,
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Profile {
            action: ProfileAction::Build(a),
        } => {
            let p = commands::profile_build(a.n, a.eta, a.s, a.grid, a.round, &a.out)?;
            println!(
                "wrote {} ({} samples, blend {})",
                a.out.display(),
                p.grid().len(),
                p.blend_id()
            );
        }
        Command::Report(a) => {
            let kind = match a.kind {
                KindArg::Curvature => ReportKind::Curvature,
                KindArg::Bounds => ReportKind::Bounds,
            };
            let summary = commands::report(&a.profile, kind, a.rescale.into(), &a.out)?;
            print!("{summary}");
        }
        Command::Spectrum(a) => {
            let (res, json) = commands::spectrum(
                &a.profile,
                a.modes,
                a.grid,
                a.rescale.into(),
                a.out.as_deref(),
            )?;
            if a.out.is_none() {
                print!("{json}");
            } else {
                println!("lambda1_sq = {:.12} at scale {}", res.lambda1_sq, res.scale);
            }
        }
        Command::Sweep(a) => {
            let cfg = SweepConfig {
                n: a.n,
                s: a.s,
                grid: a.grid,
                modes: a.modes,
                profile_grid: a.profile_grid,
            };
            let rows = commands::sweep(cfg, &a.etas, &a.out)?;
            println!("wrote {} rows to {}", rows.len(), a.out.display());
        }
        Command::Verify(a) => {
            let depth = if a.full { Depth::Full } else { Depth::Quick };
            let (outcomes, secs) = verify::run(depth);
            for o in &outcomes {
                println!("{}", o.line());
            }
            println!("{} invariants in {secs:.1} s", outcomes.len());
            if let Some(bad) = outcomes.iter().find(|o| !o.pass) {
                return Err(pinched_sphere_cli::CliError::Invariant(bad.id.to_string()));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
