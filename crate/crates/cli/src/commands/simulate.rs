//! The `simulate` command: repeat a generated design over sequential
//! seeds, run one or more algorithms on each replicate, and aggregate.
//! Replicates run in parallel but are collected back in run order, so
//! the report does not depend on scheduling.

use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::Args;
use rayon::prelude::*;
use sup_core::eval::{correct_run, match_mistakes, within_cluster_variation};

use crate::config::{Algorithm, GeneratorName, InputSource, LinkageName, RangePolicy, RunConfig};
use crate::error::usage;
use crate::runner::execute;
use crate::commands;

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Generated design: triplets|noise|grid|unbalanced.
    #[arg(long)]
    pub design: String,
    /// Number of replicates.
    #[arg(long, default_value_t = 10)]
    pub runs: usize,
    /// Comma-separated algorithms to compare.
    #[arg(long, default_value = "sup_static")]
    pub algos: String,
    /// Base seed; replicate i uses seed base+i.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Scattered points for the noise design.
    #[arg(long)]
    pub n_noise: Option<usize>,
    /// Rotation in degrees for the unbalanced design.
    #[arg(long)]
    pub rotation: Option<f64>,
    /// Cluster count for the partitional baselines (default: the
    /// design's group count).
    #[arg(long)]
    pub k: Option<usize>,
    /// Random restarts for kmeans.
    #[arg(long)]
    pub n_init: Option<usize>,
    /// Explicit influential range for the range-driven algorithms
    /// (default: leftmost-valley selection per replicate).
    #[arg(long)]
    pub r: Option<f64>,
    /// Output directory for runs.csv and report.txt (default: $SUP_OUT_DIR).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// One replicate × algorithm result row, exactly as persisted.
struct Record {
    run: usize,
    seed: u64,
    algo: &'static str,
    n_clusters: usize,
    r: Option<f64>,
    iterations: Option<usize>,
    wss: f64,
    mistakes: usize,
    correct: bool,
}

fn parse_algos(list: &str, design: GeneratorName, args: &SimulateArgs) -> Result<Vec<Algorithm>> {
    let k = args.k.unwrap_or_else(|| design.designed_k());
    let n_init = args.n_init.unwrap_or(10);
    let mut algos = Vec::new();
    for name in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        algos.push(match name {
            "sup_static" => Algorithm::SupStatic,
            "sup_dynamic" => Algorithm::SupDynamic,
            "meanshift_nonblurring" => Algorithm::MeanshiftNonblurring,
            "kmeans" => Algorithm::Kmeans { k, n_init },
            "hierarchical" => Algorithm::Hierarchical {
                k,
                linkage: LinkageName::Centroid,
            },
            "centroid_sup" => Algorithm::CentroidSup { k },
            other => {
                return Err(usage(format!(
                    "unknown algorithm '{other}' (expected sup_static|sup_dynamic|meanshift_nonblurring|kmeans|hierarchical|centroid_sup)"
                )))
            }
        });
    }
    if algos.is_empty() {
        return Err(usage("--algos is empty"));
    }
    Ok(algos)
}

fn replicate(
    input: &InputSource,
    algos: &[Algorithm],
    explicit_r: Option<f64>,
    run: usize,
    seed: u64,
) -> Result<Vec<Record>> {
    let data = commands::load_input(input, seed)?;
    let truth = data.truth.as_ref().expect("generators carry truth");
    let noise = data.noise.as_ref().expect("generators carry noise flags");
    let scored: Vec<bool> = noise.iter().map(|&n| !n).collect();
    let mut records = Vec::with_capacity(algos.len());
    for algo in algos {
        let mut config = RunConfig::baseline(input.clone());
        config.algo = algo.clone();
        config.seed = seed;
        if let (Some(r), true) = (explicit_r, algo.needs_range()) {
            config.r_policy = RangePolicy::Explicit { r };
        }
        let outcome = execute(&config, &data.points)
            .with_context(|| format!("run {run} ({}) failed", algo.name()))?;
        records.push(Record {
            run,
            seed,
            algo: algo.name(),
            n_clusters: outcome.n_clusters,
            r: outcome.r,
            iterations: outcome.iterations,
            wss: within_cluster_variation(&data.points, &outcome.labels)?,
            mistakes: match_mistakes(&outcome.labels, truth, &scored)?,
            correct: correct_run(&outcome.labels, truth, noise)?,
        });
    }
    Ok(records)
}

fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

fn sample_sd(values: &[f64]) -> f64 {
    if values.len() < 2 {
        return 0.0;
    }
    let m = mean(values);
    (values.iter().map(|v| (v - m) * (v - m)).sum::<f64>() / (values.len() - 1) as f64).sqrt()
}

/// Builds the per-algorithm report from the same rows written to
/// runs.csv, so recomputing from the file reproduces it exactly.
fn aggregate(records: &[Record], algos: &[Algorithm]) -> String {
    let mut report = String::new();
    for algo in algos {
        let rows: Vec<&Record> = records.iter().filter(|r| r.algo == algo.name()).collect();
        let wss: Vec<f64> = rows.iter().map(|r| r.wss).collect();
        let clusters: Vec<f64> = rows.iter().map(|r| r.n_clusters as f64).collect();
        let mistakes: Vec<f64> = rows.iter().map(|r| r.mistakes as f64).collect();
        let incorrect = rows.iter().filter(|r| !r.correct).count();
        report.push_str(&format!("[{}]\n", algo.name()));
        report.push_str(&format!("runs={}\n", rows.len()));
        report.push_str(&format!("incorrect={incorrect}\n"));
        report.push_str(&format!(
            "incorrect_rate={}\n",
            incorrect as f64 / rows.len() as f64
        ));
        report.push_str(&format!("mean_clusters={}\n", mean(&clusters)));
        report.push_str(&format!("mean_wss={}\n", mean(&wss)));
        report.push_str(&format!("sd_wss={}\n", sample_sd(&wss)));
        report.push_str(&format!("mean_mistakes={}\n", mean(&mistakes)));
    }
    report
}

fn runs_csv(records: &[Record]) -> String {
    let mut text = String::from("run,seed,algo,n_clusters,r,iterations,wss,mistakes,correct\n");
    for rec in records {
        let r = rec.r.map(|v| format!("{v}")).unwrap_or_default();
        let iterations = rec.iterations.map(|v| v.to_string()).unwrap_or_default();
        text.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            rec.run, rec.seed, rec.algo, rec.n_clusters, r, iterations, rec.wss, rec.mistakes,
            rec.correct
        ));
    }
    text
}

pub fn run(args: &SimulateArgs) -> Result<()> {
    if args.runs == 0 {
        return Err(usage("--runs must be at least 1"));
    }
    let design = GeneratorName::parse(&args.design)?;
    let input = InputSource::Generator {
        name: design,
        n_noise: args.n_noise.unwrap_or(50),
        rotation_deg: args.rotation.unwrap_or(45.0),
    };
    let algos = parse_algos(&args.algos, design, args)?;
    let out_dir = commands::resolve_out_dir(&args.out)?;
    std::fs::create_dir_all(&out_dir)
        .with_context(|| format!("cannot create {}", out_dir.display()))?;

    let per_run: Vec<Vec<Record>> = (0..args.runs)
        .into_par_iter()
        .map(|i| replicate(&input, &algos, args.r, i, args.seed + i as u64))
        .collect::<Result<_>>()?;
    let records: Vec<Record> = per_run.into_iter().flatten().collect();

    std::fs::write(out_dir.join("runs.csv"), runs_csv(&records))?;
    let report = aggregate(&records, &algos);
    std::fs::write(out_dir.join("report.txt"), &report)?;
    print!("{report}");
    Ok(())
}
