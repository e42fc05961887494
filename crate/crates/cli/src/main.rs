//! Command-line workbench for extremal configurations on spheres: bounds,
//! max–min optimization, contact graphs, and isoperimetric reports.
//!
//! Exit codes: 0 on success, 2 on usage errors, 3 on numeric or I/O failure.

mod angle;
mod cmd_bounds;
mod cmd_geometry;
mod cmd_optimize;
mod records;

use angle::parse_angle;
use clap::{Args, Parser, Subcommand};
use records::Format;
use std::path::PathBuf;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Failure(String),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failure(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Failure(m) => write!(f, "{m}"),
        }
    }
}

impl From<sphaerica::bounds::BoundsError> for CliError {
    fn from(e: sphaerica::bounds::BoundsError) -> Self {
        CliError::Failure(e.to_string())
    }
}

impl From<sphaerica::geom::GeomError> for CliError {
    fn from(e: sphaerica::geom::GeomError) -> Self {
        CliError::Failure(e.to_string())
    }
}

impl From<sphaerica::isoperimetric::IsoError> for CliError {
    fn from(e: sphaerica::isoperimetric::IsoError) -> Self {
        CliError::Failure(e.to_string())
    }
}

impl From<sphaerica::optimize::OptimizeError> for CliError {
    fn from(e: sphaerica::optimize::OptimizeError) -> Self {
        CliError::Failure(e.to_string())
    }
}

impl From<sphaerica::contacts::ContactsError> for CliError {
    fn from(e: sphaerica::contacts::ContactsError) -> Self {
        CliError::Failure(e.to_string())
    }
}

impl From<sphaerica::io::IoError> for CliError {
    fn from(e: sphaerica::io::IoError) -> Self {
        CliError::Failure(e.to_string())
    }
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    /// Output format.
    #[arg(long, global = true, value_parser = ["table", "records"], default_value = "table")]
    format: String,
    /// Master seed for randomized commands (required with --strict).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads (default: all cores). Output is independent of this.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Contact / feasibility tolerance override, radians.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Refuse randomized commands without an explicit --seed.
    #[arg(long, global = true, default_value_t = false)]
    strict: bool,
}

impl GlobalOpts {
    pub fn format(&self) -> Format {
        if self.format == "records" {
            Format::Records
        } else {
            Format::Table
        }
    }

    /// Seed for a randomized command, honoring --strict.
    pub fn require_seed(&self) -> Result<u64, CliError> {
        match self.seed {
            Some(s) => Ok(s),
            None if self.strict => Err(CliError::Usage(
                "--strict requires an explicit --seed for randomized commands".into(),
            )),
            None => Ok(0),
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "sphaerica",
    version,
    about = "Extremal configurations on spheres: packing bounds, Tammes-type optimization, contact graphs, isoperimetric quotients."
)]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a named bound.
    Bounds {
        #[command(subcommand)]
        which: cmd_bounds::BoundsCmd,
    },
    /// Run a seeded max–min or contact-count search and write its outputs.
    Optimize {
        #[command(subcommand)]
        which: cmd_optimize::OptimizeCmd,
    },
    /// Analyze the contact graph of a point-set file.
    Contacts(cmd_geometry::ContactsArgs),
    /// Circumscribe a polyhedron about the unit sphere and report its
    /// isoperimetric quotient.
    Iq(cmd_geometry::IqArgs),
    /// Area of the tangent-plane lift of a regular spherical triangle or
    /// simplex.
    Rho(cmd_geometry::RhoArgs),
    /// Verify the central-projection identities of a circumscribed
    /// polyhedron.
    Project(cmd_geometry::ProjectArgs),
    /// Evaluate the open isoperimetric conjectures on a polyhedron
    /// (reported, never asserted).
    Conjectures(cmd_geometry::ConjecturesArgs),
    /// Show or extend the kissing-number table.
    Table(cmd_bounds::TableArgs),
    /// Re-run a recorded optimize command from its manifest.
    Replay(cmd_optimize::ReplayArgs),
}

fn main() {
    let cli = Cli::parse();
    if let Some(t) = cli.global.threads {
        // Ignore failure: the global pool may already exist in tests.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    let result = match cli.command {
        Command::Bounds { which } => cmd_bounds::run(&cli.global, which),
        Command::Optimize { which } => cmd_optimize::run(&cli.global, which),
        Command::Contacts(args) => cmd_geometry::run_contacts(&cli.global, args),
        Command::Iq(args) => cmd_geometry::run_iq(&cli.global, args),
        Command::Rho(args) => cmd_geometry::run_rho(&cli.global, args),
        Command::Project(args) => cmd_geometry::run_project(&cli.global, args),
        Command::Conjectures(args) => cmd_geometry::run_conjectures(&cli.global, args),
        Command::Table(args) => cmd_bounds::run_table(&cli.global, args),
        Command::Replay(args) => cmd_optimize::run_replay(&cli.global, args),
    };
    if let Err(e) = result {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}

/// Shared angle argument parser for clap.
pub fn angle_arg(s: &str) -> Result<f64, String> {
    parse_angle(s)
}

/// Parse a point-set path argument.
pub fn load_points(path: &PathBuf) -> Result<sphaerica::geom::SphericalCode, CliError> {
    Ok(sphaerica::io::load_point_set(path)?)
}
