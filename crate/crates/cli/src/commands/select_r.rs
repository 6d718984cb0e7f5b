//! The `select-r` command: show the frequency polygon's valleys and
//! peaks so a range can be picked (or checked) by eye.

use std::path::PathBuf;

use anyhow::Result;
use clap::Args;
use sup_core::params::{default_bin_count, find_valleys, frequency_polygon, pairwise_distances};

use crate::{commands, csv_io, svg};

#[derive(Debug, Args)]
pub struct SelectRArgs {
    /// CSV input file.
    #[arg(long)]
    pub input: PathBuf,
    /// Force headerless parsing (default: sniff the first line).
    #[arg(long)]
    pub no_header: bool,
    /// Header column holding ground-truth ids (excluded from features).
    #[arg(long)]
    pub truth_col: Option<String>,
    /// Header column holding 0/1 noise flags (excluded from features).
    #[arg(long)]
    pub noise_col: Option<String>,
    /// Bin count (default: the 2·∛n rule).
    #[arg(long)]
    pub bins: Option<usize>,
    /// Minimum valley prominence as a fraction of the tallest bin.
    #[arg(long, default_value_t = 0.05)]
    pub min_prominence: f64,
    /// Where to write polygon.svg and polygon.csv (default: $SUP_OUT_DIR, else the current directory).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn run(args: &SelectRArgs) -> Result<()> {
    let has_header = if args.no_header {
        false
    } else {
        commands::sniff_header(&args.input)?
    };
    let ds = csv_io::read_csv(
        &args.input,
        has_header,
        args.truth_col.as_deref(),
        args.noise_col.as_deref(),
    )?;
    let distances = pairwise_distances(&ds.points)?;
    let bins = args.bins.unwrap_or_else(|| default_bin_count(distances.len()));
    let polygon = frequency_polygon(&distances, bins)?;
    let report = find_valleys(&polygon, args.min_prominence);

    println!("distances={} bins={bins} bin_width={}", distances.len(), polygon.bin_width);
    for valley in &report.valleys {
        println!(
            "valley distance={} bin={} sharpness={}",
            valley.distance, valley.bin, valley.sharpness
        );
    }
    if report.valleys.is_empty() {
        println!("no qualifying valleys (try more bins or a lower --min-prominence)");
    }
    for &peak in &report.peaks {
        println!("peak distance={peak}");
    }

    let out_dir = commands::resolve_out_dir(&args.out).unwrap_or_else(|_| PathBuf::from("."));
    std::fs::create_dir_all(&out_dir)?;
    std::fs::write(
        out_dir.join("polygon.svg"),
        svg::polygon_svg(&polygon, &report.valleys, &report.peaks),
    )?;
    let mut table = String::from("bin_midpoint,count\n");
    for (midpoint, count) in polygon.bin_midpoints.iter().zip(&polygon.counts) {
        table.push_str(&format!("{midpoint},{count}\n"));
    }
    std::fs::write(out_dir.join("polygon.csv"), table)?;
    Ok(())
}
