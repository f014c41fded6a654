//! Command-line front end for exact tilt-stability wall computations on
//! P1 x P1: wall loci, destabilizer candidate enumeration, Ext dimension
//! chases, scenario reports, brute-force oracle sweeps and SVG wall
//! diagrams.
//!
//! Exit codes: 0 when every requested check passes, 1 on a verification
//! mismatch, 2 on usage or parse errors.

mod commands;
mod document;
mod plot;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "tiltwall",
    version,
    about = "Exact wall-and-chamber computations for tilt stability on P1 x P1"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SideArg {
    /// Hom(probe, target) and its higher Ext groups.
    FromProbe,
    /// Hom(target, probe) and its higher Ext groups.
    ToProbe,
}

#[derive(Subcommand)]
enum Command {
    /// Numerical wall between two classes: center, radius, endpoints.
    Walls {
        /// First class, as `r,(a,b),c`.
        #[arg(long, allow_hyphen_values = true)]
        u: String,
        /// Second class, as `r,(a,b),c`.
        #[arg(long, allow_hyphen_values = true)]
        v: String,
        /// Polarization, as `(a,b)`.
        #[arg(long = "H")]
        h: String,
        /// Emit the full JSON report document.
        #[arg(long)]
        json: bool,
    },
    /// Destabilizer candidates for a torsion class above a threshold radius.
    Candidates {
        /// Torsion class, as `0,(a,b),c`.
        #[arg(long, allow_hyphen_values = true)]
        v: String,
        #[arg(long = "H")]
        h: String,
        /// Threshold squared radius, as `p/q`.
        #[arg(long = "min-r2", conflicts_with = "collapse", allow_hyphen_values = true)]
        min_r2: Option<String>,
        /// Class whose wall against `v` sets the threshold instead.
        #[arg(long, allow_hyphen_values = true)]
        collapse: Option<String>,
        /// Also list candidates sitting exactly on the threshold circle.
        #[arg(long = "include-equal")]
        include_equal: bool,
        #[arg(long)]
        json: bool,
    },
    /// Hyper-Ext dimensions between a line-bundle probe and an object.
    Ext {
        /// Probe: a sum of line bundles, e.g. `O(0,1)` or `O(0,0)+O(0,0)`.
        #[arg(long)]
        probe: String,
        /// Target object: `O(a,b)`, `O(a,b)[1]`, or `[A1+A2 -> B]`.
        #[arg(long)]
        target: String,
        /// Which Hom functor to chase.
        #[arg(long, value_enum, default_value = "from-probe")]
        side: SideArg,
        /// JSON file with externally justified vanishing assumptions.
        #[arg(long)]
        assume: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Cohomology of a line bundle `O(a,b)`.
    Cohom {
        #[arg(long = "L")]
        l: String,
        #[arg(long)]
        json: bool,
    },
    /// Full verified wall report for a shipped scenario (M, N or S).
    Report {
        scenario: String,
        #[arg(long)]
        json: bool,
        /// Also write the JSON document to a file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// SVG wall diagram for a scenario or an explicit wall list.
    Plot {
        /// Shipped scenario name (M, N or S).
        #[arg(long, conflicts_with = "walls")]
        scenario: Option<String>,
        /// Wall as `center,radius_sq[,label]`, repeatable.
        #[arg(long = "wall", allow_hyphen_values = true)]
        walls: Vec<String>,
        /// Dashed vertical line at this beta (defaults to the scenario's
        /// wall center).
        #[arg(long, allow_hyphen_values = true)]
        nu0: Option<String>,
        /// Output SVG path.
        #[arg(long)]
        out: PathBuf,
    },
    /// Brute-force candidate sweep over a finite box, optionally checked
    /// against the closed-form enumeration.
    Oracle {
        #[arg(long, allow_hyphen_values = true)]
        v: String,
        #[arg(long = "H")]
        h: String,
        #[arg(long = "min-r2", allow_hyphen_values = true)]
        min_r2: String,
        #[arg(long = "include-equal")]
        include_equal: bool,
        #[arg(long, default_value_t = 10)]
        r_max: i64,
        #[arg(long, default_value_t = 30)]
        d_max: i64,
        #[arg(long, default_value_t = 30)]
        c_max: i64,
        /// Exit 1 unless the sweep equals the enumeration.
        #[arg(long)]
        check: bool,
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
