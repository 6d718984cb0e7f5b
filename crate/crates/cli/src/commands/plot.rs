//! The `plot` command: render SVG figures from a persisted run
//! directory, using only the artifacts the `cluster` command wrote.

use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::Args;
use sup_core::eval::pca_project;
use sup_core::params::{default_bin_count, find_valleys, frequency_polygon, pairwise_distances};
use sup_core::PointSet;

use crate::error::usage;
use crate::{csv_io, svg};

#[derive(Debug, Args)]
pub struct PlotArgs {
    /// A run directory containing points.csv and labels.csv.
    #[arg(long)]
    pub input: PathBuf,
    /// scatter|polygon|trajectory|heatmap.
    #[arg(long)]
    pub kind: String,
    /// Snapshot index for trajectory plots (default: the last one).
    #[arg(long)]
    pub frame: Option<usize>,
    /// Project onto this many principal components before a scatter.
    #[arg(long)]
    pub pc: Option<usize>,
}

/// Loads points.csv, treating `truth`/`noise` header columns as labels
/// rather than features.
fn load_points(dir: &Path) -> Result<PointSet> {
    let path = dir.join("points.csv");
    let header = std::fs::read_to_string(&path)
        .with_context(|| format!("cannot read {}", path.display()))?
        .lines()
        .next()
        .unwrap_or_default()
        .to_string();
    let columns: Vec<&str> = header.split(',').collect();
    let truth = columns.contains(&"truth").then_some("truth");
    let noise = columns.contains(&"noise").then_some("noise");
    Ok(csv_io::read_csv(&path, true, truth, noise)?.points)
}

fn load_trajectory(dir: &Path) -> Result<Vec<PointSet>> {
    let mut names: Vec<PathBuf> = std::fs::read_dir(dir)
        .with_context(|| format!("cannot read {}", dir.display()))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|path| {
            path.file_name()
                .and_then(|n| n.to_str())
                .is_some_and(|n| n.starts_with("traj_") && n.ends_with(".csv"))
        })
        .collect();
    if names.is_empty() {
        return Err(usage(format!(
            "{} has no traj_*.csv snapshots; rerun cluster with --trajectory",
            dir.display()
        )));
    }
    names.sort();
    names
        .iter()
        .map(|path| Ok(csv_io::read_csv(path, true, None, None)?.points))
        .collect()
}

pub fn run(args: &PlotArgs) -> Result<()> {
    let dir = &args.input;
    let points = load_points(dir)?;
    let labels = csv_io::read_labels_csv(&dir.join("labels.csv"))?;
    if labels.len() != points.n_points() {
        anyhow::bail!(
            "labels.csv has {} rows but points.csv has {}",
            labels.len(),
            points.n_points()
        );
    }

    let out = match args.kind.as_str() {
        "scatter" => {
            let shown = match args.pc {
                Some(dims) => pca_project(&points, dims)?.0,
                None => points,
            };
            if shown.dim() < 2 {
                return Err(usage("scatter needs at least two columns (or --pc 2)"));
            }
            let path = dir.join("scatter.svg");
            std::fs::write(&path, svg::scatter_svg(&shown, &labels, 2))?;
            path
        }
        "polygon" => {
            let distances = pairwise_distances(&points)?;
            let polygon = frequency_polygon(&distances, default_bin_count(distances.len()))?;
            let report = find_valleys(&polygon, 0.05);
            let path = dir.join("polygon.svg");
            std::fs::write(&path, svg::polygon_svg(&polygon, &report.valleys, &report.peaks))?;
            path
        }
        "trajectory" => {
            let snapshots = load_trajectory(dir)?;
            let frame = args.frame.unwrap_or(snapshots.len() - 1);
            if frame >= snapshots.len() {
                return Err(usage(format!(
                    "--frame {frame} out of range: {} snapshots",
                    snapshots.len()
                )));
            }
            let path = dir.join("trajectory.svg");
            std::fs::write(&path, svg::trajectory_svg(&snapshots, frame, &labels))?;
            path
        }
        "heatmap" => {
            let path = dir.join("heatmap.svg");
            std::fs::write(&path, svg::heatmap_svg(&points, &labels))?;
            path
        }
        other => {
            return Err(usage(format!(
                "unknown plot kind '{other}' (expected scatter|polygon|trajectory|heatmap)"
            )))
        }
    };
    println!("wrote {}", out.display());
    Ok(())
}
