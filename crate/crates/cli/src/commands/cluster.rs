//! The `cluster` command: resolve a configuration, run it, persist
//! every artifact needed to replay or plot the run.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::Args;
use sup_core::eval::{correct_run, match_mistakes, within_cluster_variation};

use crate::config::{
    Algorithm, GeneratorName, InputSource, LinkageName, Normalization, RangePolicy, RunConfig,
    TemperatureChoice,
};
use crate::csv_io;
use crate::error::usage;
use crate::normalize::zscore_normalize;
use crate::runner::{execute, heating_rate_excessive};
use crate::{commands, svg};

#[derive(Debug, Args)]
pub struct ClusterArgs {
    /// CSV input file (features, optional label columns).
    #[arg(long, conflicts_with = "gen")]
    pub input: Option<PathBuf>,
    /// Generated dataset: triplets|noise|grid|unbalanced.
    #[arg(long)]
    pub gen: Option<String>,
    /// Scattered points for the noise design.
    #[arg(long)]
    pub n_noise: Option<usize>,
    /// Rotation in degrees for the unbalanced design.
    #[arg(long)]
    pub rotation: Option<f64>,
    /// Header column holding ground-truth ids.
    #[arg(long)]
    pub truth_col: Option<String>,
    /// Header column holding 0/1 noise flags.
    #[arg(long)]
    pub noise_col: Option<String>,
    /// Force headerless parsing (default: sniff the first line).
    #[arg(long)]
    pub no_header: bool,
    /// Replay/extend a persisted config.json.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// sup_static|sup_dynamic|meanshift_nonblurring|kmeans|hierarchical|centroid_sup.
    #[arg(long)]
    pub algo: Option<String>,
    /// Cluster count for kmeans/hierarchical/centroid_sup.
    #[arg(long)]
    pub k: Option<usize>,
    /// Random restarts for kmeans.
    #[arg(long)]
    pub n_init: Option<usize>,
    /// single|complete|centroid.
    #[arg(long)]
    pub linkage: Option<String>,
    /// Explicit influential range.
    #[arg(long, conflicts_with = "r_policy")]
    pub r: Option<f64>,
    /// valley[:leftmost|:sharpest] or pct:<q>.
    #[arg(long)]
    pub r_policy: Option<String>,
    /// static:<T> or dynamic:<s>.
    #[arg(long)]
    pub temp: Option<String>,
    /// Convergence threshold on the largest displacement.
    #[arg(long)]
    pub eps: Option<f64>,
    /// Iteration cap.
    #[arg(long)]
    pub max_iter: Option<usize>,
    /// Cluster-extraction chaining distance.
    #[arg(long)]
    pub merge_tol: Option<f64>,
    /// zscore for per-feature standardization.
    #[arg(long)]
    pub normalize: Option<String>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Record position snapshots for trajectory plots.
    #[arg(long)]
    pub trajectory: bool,
    /// Keep every n-th snapshot.
    #[arg(long)]
    pub snapshot_stride: Option<usize>,
    /// Output directory (default: $SUP_OUT_DIR).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn input_from_args(args: &ClusterArgs) -> Result<Option<InputSource>> {
    if let Some(path) = &args.input {
        let has_header = if args.no_header {
            false
        } else {
            commands::sniff_header(path)?
        };
        return Ok(Some(InputSource::Csv {
            path: path.display().to_string(),
            has_header,
            truth_column: args.truth_col.clone(),
            noise_column: args.noise_col.clone(),
        }));
    }
    if let Some(name) = &args.gen {
        return Ok(Some(InputSource::Generator {
            name: GeneratorName::parse(name)?,
            n_noise: args.n_noise.unwrap_or(50),
            rotation_deg: args.rotation.unwrap_or(45.0),
        }));
    }
    Ok(None)
}

fn algorithm_from_name(name: &str, args: &ClusterArgs, input: &InputSource) -> Result<Algorithm> {
    let designed_k = match input {
        InputSource::Generator { name, .. } => name.designed_k(),
        InputSource::Csv { .. } => 3,
    };
    let k = args.k.unwrap_or(designed_k);
    match name {
        "sup_static" => Ok(Algorithm::SupStatic),
        "sup_dynamic" => Ok(Algorithm::SupDynamic),
        "meanshift_nonblurring" => Ok(Algorithm::MeanshiftNonblurring),
        "kmeans" => Ok(Algorithm::Kmeans {
            k,
            n_init: args.n_init.unwrap_or(10),
        }),
        "hierarchical" => Ok(Algorithm::Hierarchical {
            k,
            linkage: match &args.linkage {
                Some(text) => LinkageName::parse(text)?,
                None => LinkageName::Centroid,
            },
        }),
        "centroid_sup" => Ok(Algorithm::CentroidSup { k }),
        other => Err(usage(format!(
            "unknown algorithm '{other}' (expected sup_static|sup_dynamic|meanshift_nonblurring|kmeans|hierarchical|centroid_sup)"
        ))),
    }
}

/// Builds the effective config: defaults, then the config file, then
/// explicit flags.
pub(crate) fn resolve_config(args: &ClusterArgs) -> Result<RunConfig> {
    let cli_input = input_from_args(args)?;
    let mut config = match &args.config {
        Some(path) => RunConfig::load(path)?,
        None => {
            let input = cli_input.clone().ok_or_else(|| {
                usage("no input: pass --input <csv>, --gen <name>, or --config <json>")
            })?;
            RunConfig::baseline(input)
        }
    };
    if let Some(input) = cli_input {
        config.input = input;
    }
    if let Some(name) = &args.algo {
        config.algo = algorithm_from_name(name, args, &config.input)?;
    } else if args.k.is_some() || args.n_init.is_some() || args.linkage.is_some() {
        // flags that modify an algorithm picked earlier (config file)
        match &mut config.algo {
            Algorithm::Kmeans { k, n_init } => {
                *k = args.k.unwrap_or(*k);
                *n_init = args.n_init.unwrap_or(*n_init);
            }
            Algorithm::Hierarchical { k, linkage } => {
                *k = args.k.unwrap_or(*k);
                if let Some(text) = &args.linkage {
                    *linkage = LinkageName::parse(text)?;
                }
            }
            Algorithm::CentroidSup { k } => *k = args.k.unwrap_or(*k),
            _ => return Err(usage("--k/--n-init/--linkage apply only to kmeans, hierarchical, or centroid_sup")),
        }
    }
    if let Some(r) = args.r {
        config.r_policy = RangePolicy::Explicit { r };
    }
    if let Some(text) = &args.r_policy {
        config.r_policy = RangePolicy::parse(text)?;
    }
    if let Some(text) = &args.temp {
        config.temperature = TemperatureChoice::parse(text)?;
    }
    if let Some(eps) = args.eps {
        config.eps = eps;
    }
    if let Some(max_iter) = args.max_iter {
        config.max_iter = max_iter;
    }
    if let Some(merge_tol) = args.merge_tol {
        config.merge_tol = merge_tol;
    }
    if let Some(text) = &args.normalize {
        config.normalize = match text.as_str() {
            "zscore" => Normalization::Zscore,
            other => return Err(usage(format!("unknown normalization '{other}' (expected zscore)"))),
        };
    }
    if let Some(seed) = args.seed {
        config.seed = seed;
    }
    if args.trajectory {
        config.trajectory = true;
    }
    if let Some(stride) = args.snapshot_stride {
        config.snapshot_stride = stride;
    }
    config.validate()?;
    Ok(config)
}

/// Runs one resolved config and writes all artifacts into `out_dir`.
/// Returns the summary record.
pub(crate) fn run_to_dir(config: &RunConfig, out_dir: &Path) -> Result<BTreeMap<String, String>> {
    std::fs::create_dir_all(out_dir)
        .with_context(|| format!("cannot create {}", out_dir.display()))?;
    if heating_rate_excessive(config) {
        eprintln!("warning: heating rate exceeds the recommended maximum 0.02; fragments may overheat");
    }
    let input = commands::load_input(&config.input, config.seed)?;
    let (points, constant_features) = match config.normalize {
        Normalization::None => (input.points.clone(), Vec::new()),
        Normalization::Zscore => zscore_normalize(&input.points),
    };
    for &j in &constant_features {
        eprintln!(
            "warning: feature '{}' is constant; centered to zero without scaling",
            input.feature_names[j]
        );
    }
    let outcome = execute(config, &points)?;

    let mut summary: BTreeMap<String, String> = BTreeMap::new();
    summary.insert("algo".into(), config.algo.name().to_string());
    summary.insert("n_points".into(), points.n_points().to_string());
    summary.insert("dim".into(), points.dim().to_string());
    summary.insert("n_clusters".into(), outcome.n_clusters.to_string());
    summary.insert("seed".into(), config.seed.to_string());
    summary.insert(
        "normalize".into(),
        match config.normalize {
            Normalization::None => "none".into(),
            Normalization::Zscore => "zscore".to_string(),
        },
    );
    if let Some(r) = outcome.r {
        summary.insert("r".into(), format!("{r}"));
        summary.insert("r_source".into(), outcome.r_source.unwrap_or("").into());
        summary.insert("eps".into(), format!("{}", config.eps));
        summary.insert("max_iter".into(), config.max_iter.to_string());
        summary.insert("merge_tol".into(), format!("{}", config.merge_tol));
        let temperature = match (&config.algo, &config.temperature) {
            (_, TemperatureChoice::Static { temperature }) => format!("static:{temperature}"),
            (_, TemperatureChoice::Dynamic { heating_rate }) => format!("dynamic:{heating_rate}"),
            (Algorithm::SupDynamic, TemperatureChoice::Default) => "dynamic:0.02".into(),
            (_, TemperatureChoice::Default) => format!("static:{}", r / 5.0),
        };
        summary.insert("temperature".into(), temperature);
    }
    if let Some(iterations) = outcome.iterations {
        summary.insert("iterations".into(), iterations.to_string());
    }
    if let Some(converged) = outcome.converged {
        summary.insert("converged".into(), converged.to_string());
    }
    let wss = within_cluster_variation(&points, &outcome.labels)?;
    summary.insert("wss".into(), format!("{wss}"));
    if let Some(truth) = &input.truth {
        let scored: Vec<bool> = match &input.noise {
            Some(noise) => noise.iter().map(|&n| !n).collect(),
            None => vec![true; truth.len()],
        };
        let mistakes = match_mistakes(&outcome.labels, truth, &scored)?;
        summary.insert("mistakes".into(), mistakes.to_string());
        if let Some(noise) = &input.noise {
            let correct = correct_run(&outcome.labels, truth, noise)?;
            summary.insert("correct".into(), correct.to_string());
        }
    }
    if let Some(snapshots) = &outcome.trajectory {
        summary.insert("trajectory_frames".into(), snapshots.len().to_string());
    }

    // artifacts
    let mut extras: Vec<(&str, Vec<String>)> = Vec::new();
    if let Some(truth) = &input.truth {
        extras.push(("truth", truth.iter().map(|t| t.to_string()).collect()));
    }
    if let Some(noise) = &input.noise {
        extras.push((
            "noise",
            noise.iter().map(|&n| usize::from(n).to_string()).collect(),
        ));
    }
    csv_io::write_points_csv(
        &out_dir.join("points.csv"),
        &points,
        &input.feature_names,
        &extras,
    )?;
    csv_io::write_labels_csv(&out_dir.join("labels.csv"), &outcome.labels)?;
    csv_io::write_points_csv(
        &out_dir.join("representatives.csv"),
        &outcome.representatives,
        &input.feature_names,
        &[],
    )?;
    let mut text = String::new();
    for (key, value) in &summary {
        text.push_str(key);
        text.push('=');
        text.push_str(value);
        text.push('\n');
    }
    std::fs::write(out_dir.join("summary.txt"), &text)?;
    config.save(&out_dir.join("config.json"))?;
    if let Some(snapshots) = &outcome.trajectory {
        for (index, snapshot) in snapshots.iter().enumerate() {
            csv_io::write_points_csv(
                &out_dir.join(format!("traj_{index:04}.csv")),
                snapshot,
                &input.feature_names,
                &[],
            )?;
        }
    }
    if points.dim() >= 2 {
        std::fs::write(
            out_dir.join("scatter.svg"),
            svg::scatter_svg(&points, &outcome.labels, 2),
        )?;
    }
    Ok(summary)
}

pub fn run(args: &ClusterArgs) -> Result<()> {
    let config = resolve_config(args)?;
    let out_dir = commands::resolve_out_dir(&args.out)?;
    let summary = run_to_dir(&config, &out_dir)?;
    for (key, value) in &summary {
        println!("{key}={value}");
    }
    Ok(())
}
