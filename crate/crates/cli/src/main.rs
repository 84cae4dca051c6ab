//! `coarse`: build Rips and Cech towers from finite metric data and write
//! JSON reports on their coarse invariants.

mod commands;
mod config;

use anyhow::Result;
use clap::{Parser, Subcommand};
use coarse_core::ExtDist;

use commands::{CayleyParams, Output, PropaParams};
use config::{CommonArgs, RunConfig};

#[derive(Parser)]
#[command(name = "coarse", version, about = "Coarse-geometric invariants of finite metric spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Rips graphs and complexes at each scale of a ladder.
    Rips {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        scales: String,
    },
    /// The nerve tower of a ladder of star-refining covers.
    Cech {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        covers: std::path::PathBuf,
    },
    /// Reduced homology ranks along a Rips tower, as JSON and an SVG heatmap.
    Profile {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        scales: String,
        #[arg(long, default_value_t = 2)]
        prime: u32,
        #[arg(long, default_value_t = 1)]
        pmax: usize,
    },
    /// Contiguous factorizations through low-dimensional complexes.
    Asdim {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        scales: String,
        #[arg(long, default_value_t = 2)]
        n_max: usize,
    },
    /// Asdim at most one and homological 1-connectedness, together.
    TreeProbe {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        scales: String,
    },
    /// Property A certificates.
    Propa {
        #[command(subcommand)]
        action: PropaAction,
    },
    /// A tower of Cayley graphs of growing generating balls.
    Cayley {
        #[command(flatten)]
        common: CommonArgs,
        /// `lattice` (Z^rank) or `free` (free group of the given rank).
        #[arg(long, default_value = "lattice")]
        group: String,
        #[arg(long, default_value_t = 1)]
        rank: usize,
        #[arg(long, default_value_t = 4)]
        radius: u32,
        /// Word lengths of the generating balls, ascending.
        #[arg(long, value_delimiter = ',', default_value = "1,2")]
        levels: Vec<u32>,
    },
}

#[derive(Subcommand)]
enum PropaAction {
    /// Checks a certificate at `(R, eps, S)`.
    Verify {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        params: PropaArgs,
    },
    /// Writes uniform ball weights, optionally truncated.
    BuildUniform {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long = "s")]
        s: ExtDist,
        /// Drops light weights with total below half this value.
        #[arg(long)]
        truncate: Option<String>,
    },
    /// Converts a certificate into a map into the Rips complex and back.
    Bridge {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        params: PropaArgs,
    },
}

#[derive(clap::Args)]
struct PropaArgs {
    #[arg(long)]
    xi: std::path::PathBuf,
    #[arg(long = "r")]
    r: ExtDist,
    /// Exact rational, as `a/b` or a decimal.
    #[arg(long)]
    eps: String,
    #[arg(long = "s")]
    s: ExtDist,
}

impl PropaArgs {
    fn params(&self) -> PropaParams {
        PropaParams { xi: Some(self.xi.clone()), r: self.r, eps: self.eps.clone(), s: self.s }
    }
}

fn run(cli: Cli) -> Result<()> {
    let (name, common) = match &cli.command {
        Command::Rips { common, .. } => ("rips", common),
        Command::Cech { common, .. } => ("cech", common),
        Command::Profile { common, .. } => ("profile", common),
        Command::Asdim { common, .. } => ("asdim", common),
        Command::TreeProbe { common, .. } => ("tree-probe", common),
        Command::Cayley { common, .. } => ("cayley", common),
        Command::Propa { action } => match action {
            PropaAction::Verify { common, .. } => ("propa verify", common),
            PropaAction::BuildUniform { common, .. } => ("propa build-uniform", common),
            PropaAction::Bridge { common, .. } => ("propa bridge", common),
        },
    };
    let cfg = RunConfig::new(common)?;
    let mut out = Output::new(cfg.out.clone())?;
    match &cli.command {
        Command::Rips { scales, .. } => commands::cmd_rips(&cfg.with_scales(scales)?, &mut out)?,
        Command::Cech { covers, .. } => {
            let cfg = RunConfig { covers: Some(covers.clone()), ..cfg };
            commands::cmd_cech(&cfg, &mut out)?
        }
        Command::Profile { scales, prime, pmax, .. } => {
            commands::cmd_profile(&cfg.with_scales(scales)?.with_homology(*prime, *pmax)?, &mut out)?
        }
        Command::Asdim { scales, n_max, .. } => commands::cmd_asdim(&cfg.with_scales(scales)?, *n_max, &mut out)?,
        Command::TreeProbe { scales, .. } => commands::cmd_tree_probe(&cfg.with_scales(scales)?, &mut out)?,
        Command::Cayley { group, rank, radius, levels, .. } => {
            let p = CayleyParams { group: group.clone(), rank: *rank, radius: *radius, levels: levels.clone() };
            commands::cmd_cayley(&p, &mut out)?
        }
        Command::Propa { action } => match action {
            PropaAction::Verify { params, .. } => commands::cmd_propa_verify(&cfg, &params.params(), &mut out)?,
            PropaAction::BuildUniform { s, truncate, .. } => {
                commands::cmd_propa_build_uniform(&cfg, *s, truncate.as_deref(), &mut out)?
            }
            PropaAction::Bridge { params, .. } => commands::cmd_propa_bridge(&cfg, &params.params(), &mut out)?,
        },
    }
    out.finish(name)?;
    Ok(())
}

fn main() -> Result<()> {
    run(Cli::parse())
}
