//! Command-line surface and dispatch.

mod cluster;
mod plot;
mod select_r;
mod simulate;

use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use sup_core::datagen::{
    gen_grid_clusters, gen_nine_triplets, gen_three_clusters_noise, gen_unbalanced,
};
use sup_core::PointSet;

use crate::config::{GeneratorName, InputSource};
use crate::csv_io;
use crate::error::usage;

pub use cluster::ClusterArgs;
pub use plot::PlotArgs;
pub use select_r::SelectRArgs;
pub use simulate::SimulateArgs;

/// Environment variable consulted when `--out` is omitted.
pub const OUT_DIR_VAR: &str = "SUP_OUT_DIR";

#[derive(Debug, Parser)]
#[command(
    name = "sup",
    version,
    about = "Self-updating process clustering: runs, range selection, simulations, plots"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
#[allow(clippy::large_enum_variant)]
pub enum Command {
    /// Cluster a CSV file or a generated dataset and persist the run.
    Cluster(ClusterArgs),
    /// Inspect the pairwise-distance frequency polygon of a dataset.
    #[command(name = "select-r")]
    SelectR(SelectRArgs),
    /// Run repeated simulated experiments and aggregate the results.
    Simulate(SimulateArgs),
    /// Render SVG plots from a persisted run directory.
    Plot(PlotArgs),
}

pub fn dispatch(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Cluster(args) => cluster::run(&args),
        Command::SelectR(args) => select_r::run(&args),
        Command::Simulate(args) => simulate::run(&args),
        Command::Plot(args) => plot::run(&args),
    }
}

/// Resolves the output directory: the flag, else `SUP_OUT_DIR`.
pub(crate) fn resolve_out_dir(flag: &Option<PathBuf>) -> Result<PathBuf> {
    if let Some(dir) = flag {
        return Ok(dir.clone());
    }
    if let Ok(dir) = std::env::var(OUT_DIR_VAR) {
        if !dir.is_empty() {
            return Ok(dir.into());
        }
    }
    Err(usage(format!("no output directory: pass --out or set {OUT_DIR_VAR}")))
}

/// A loaded input, whatever its source.
pub(crate) struct InputData {
    pub points: PointSet,
    pub feature_names: Vec<String>,
    pub truth: Option<Vec<usize>>,
    pub noise: Option<Vec<bool>>,
}

pub(crate) fn load_input(source: &InputSource, seed: u64) -> Result<InputData> {
    match source {
        InputSource::Csv {
            path,
            has_header,
            truth_column,
            noise_column,
        } => {
            let ds = csv_io::read_csv(
                std::path::Path::new(path),
                *has_header,
                truth_column.as_deref(),
                noise_column.as_deref(),
            )?;
            Ok(InputData {
                points: ds.points,
                feature_names: ds.feature_names,
                truth: ds.truth,
                noise: ds.noise,
            })
        }
        InputSource::Generator {
            name,
            n_noise,
            rotation_deg,
        } => {
            let ds = match name {
                GeneratorName::Triplets => gen_nine_triplets(seed),
                GeneratorName::Noise => gen_three_clusters_noise(*n_noise, seed),
                GeneratorName::Grid => gen_grid_clusters(seed),
                GeneratorName::Unbalanced => gen_unbalanced(seed, *rotation_deg),
            };
            Ok(InputData {
                points: ds.points,
                feature_names: vec!["x".into(), "y".into()],
                truth: Some(ds.truth),
                noise: Some(ds.noise_mask),
            })
        }
    }
}

/// Decides whether the first CSV line is a header by testing whether
/// every comma-separated field parses as a number.
pub(crate) fn sniff_header(path: &std::path::Path) -> Result<bool> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))?;
    let first = text.lines().next().unwrap_or_default();
    Ok(!first
        .split(',')
        .all(|field| field.trim().parse::<f64>().is_ok()))
}
