//! Executes a resolved `RunConfig` against a point set. Shared by the
//! `cluster` command and the `simulate` sweeps so both report identical
//! numbers for identical configurations.

use anyhow::{Context, Result};
use sup_core::baselines::{centroid_linkage_sup, dendrogram, kmeans, KMeansConfig};
use sup_core::params::select_r;
use sup_core::process::run_sup;
use sup_core::{InfluenceSpec, PointSet, RSource, Reference, TemperatureSchedule};

use crate::config::{Algorithm, RangePolicy, RunConfig, TemperatureChoice};

/// What one clustering run produced, normalized across algorithms.
#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub labels: Vec<usize>,
    /// One row per cluster: converged centroid for the process family,
    /// center for k-means, member centroid for the agglomerators.
    pub representatives: PointSet,
    pub n_clusters: usize,
    /// Iterations actually executed (process-family runs only).
    pub iterations: Option<usize>,
    pub converged: Option<bool>,
    /// The influential range in force (range-driven algorithms only).
    pub r: Option<f64>,
    /// Where the range came from: `explicit`, `valley`, `percentile`,
    /// or `percentile_fallback`.
    pub r_source: Option<&'static str>,
    /// Position snapshots when the config asked for them.
    pub trajectory: Option<Vec<PointSet>>,
}

/// Resolves the influential range for a range-driven algorithm.
pub fn resolve_range(config: &RunConfig, points: &PointSet) -> Result<(f64, &'static str)> {
    match &config.r_policy {
        RangePolicy::Explicit { r } => Ok((*r, "explicit")),
        policy => {
            let core = policy.to_core().expect("non-explicit policy maps to core");
            let selection = select_r(points, &core).context("range selection failed")?;
            let source = match selection.source {
                RSource::Valley { .. } => "valley",
                RSource::Percentile { fallback: false, .. } => "percentile",
                RSource::Percentile { fallback: true, .. } => "percentile_fallback",
            };
            Ok((selection.r, source))
        }
    }
}

fn influence_for(config: &RunConfig, r: f64) -> Result<InfluenceSpec> {
    config.validate()?;
    let spec = match (&config.algo, &config.temperature) {
        (Algorithm::SupStatic | Algorithm::MeanshiftNonblurring, TemperatureChoice::Default) => {
            InfluenceSpec::sup_static(r)
        }
        (
            Algorithm::SupStatic | Algorithm::MeanshiftNonblurring,
            TemperatureChoice::Static { temperature },
        ) => InfluenceSpec::truncated_static(r, *temperature),
        (Algorithm::SupDynamic, TemperatureChoice::Default) => InfluenceSpec::sup_dynamic(r),
        (Algorithm::SupDynamic, TemperatureChoice::Dynamic { heating_rate }) => {
            InfluenceSpec::truncated_dynamic(r, *heating_rate)
        }
        _ => unreachable!("validate() rejects mismatched schedules"),
    };
    Ok(if matches!(config.algo, Algorithm::MeanshiftNonblurring) {
        spec.with_reference(Reference::Initial)
    } else {
        spec
    })
}

/// True when the configured heating rate exceeds the recommended
/// maximum and deserves a warning.
pub fn heating_rate_excessive(config: &RunConfig) -> bool {
    matches!(
        config.temperature,
        TemperatureChoice::Dynamic { heating_rate }
            if heating_rate > TemperatureSchedule::MAX_HEATING_RATE
    )
}

fn centroid_representatives(points: &PointSet, labels: &[usize], k: usize) -> PointSet {
    let mut rows = Vec::with_capacity(k);
    for cluster in 0..k {
        let members: Vec<usize> = (0..points.n_points())
            .filter(|&i| labels[i] == cluster)
            .collect();
        rows.push(points.centroid_of(&members));
    }
    PointSet::from_rows(&rows).expect("k nonempty clusters")
}

/// Runs the configured algorithm on `points`.
pub fn execute(config: &RunConfig, points: &PointSet) -> Result<RunOutcome> {
    config.validate()?;
    match &config.algo {
        Algorithm::SupStatic | Algorithm::SupDynamic | Algorithm::MeanshiftNonblurring => {
            let (r, r_source) = resolve_range(config, points)?;
            let spec = influence_for(config, r)?;
            let result = run_sup(points, &spec, &config.sup_options())?;
            Ok(RunOutcome {
                n_clusters: result.n_clusters(),
                labels: result.labels,
                representatives: result.representatives,
                iterations: Some(result.iterations_run),
                converged: Some(result.converged),
                r: Some(r),
                r_source: Some(r_source),
                trajectory: result.trajectory,
            })
        }
        Algorithm::Kmeans { k, n_init } => {
            let result = kmeans(points, &KMeansConfig::random(*k, *n_init, config.seed))?;
            let n_clusters = result.labels.iter().max().map_or(0, |&m| m + 1);
            Ok(RunOutcome {
                labels: result.labels,
                representatives: result.centers,
                n_clusters,
                iterations: None,
                converged: None,
                r: None,
                r_source: None,
                trajectory: None,
            })
        }
        Algorithm::Hierarchical { k, linkage } => {
            let tree = dendrogram(points, linkage.to_core())?;
            let labels = tree.cut(*k)?;
            Ok(RunOutcome {
                representatives: centroid_representatives(points, &labels, *k),
                n_clusters: *k,
                labels,
                iterations: None,
                converged: None,
                r: None,
                r_source: None,
                trajectory: None,
            })
        }
        Algorithm::CentroidSup { k } => {
            let tree = centroid_linkage_sup(points)?;
            let labels = tree.cut(*k)?;
            Ok(RunOutcome {
                representatives: centroid_representatives(points, &labels, *k),
                n_clusters: *k,
                labels,
                iterations: None,
                converged: None,
                r: None,
                r_source: None,
                trajectory: None,
            })
        }
    }
}
