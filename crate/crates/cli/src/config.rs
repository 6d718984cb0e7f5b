//! The persisted run configuration. Every `cluster` invocation writes
//! the fully resolved `RunConfig` next to its artifacts, so a run can
//! be replayed exactly from `--config config.json`. Precedence when
//! resolving: command-line flags over config-file values over defaults.

use std::path::Path;

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};
use sup_core::baselines::Linkage;
use sup_core::params::{DEFAULT_FALLBACK_Q, DEFAULT_MIN_CONTRAST, DEFAULT_MIN_PROMINENCE};
use sup_core::{RPolicy, SupOptions, ValleyChoice};

use crate::error::usage;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InputSource {
    Csv {
        path: String,
        has_header: bool,
        truth_column: Option<String>,
        noise_column: Option<String>,
    },
    Generator {
        name: GeneratorName,
        /// Scattered points added by the `noise` design.
        n_noise: usize,
        /// Degrees of counterclockwise rotation for `unbalanced`.
        rotation_deg: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorName {
    Triplets,
    Noise,
    Grid,
    Unbalanced,
}

impl GeneratorName {
    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "triplets" => Ok(GeneratorName::Triplets),
            "noise" => Ok(GeneratorName::Noise),
            "grid" => Ok(GeneratorName::Grid),
            "unbalanced" => Ok(GeneratorName::Unbalanced),
            other => Err(usage(format!(
                "unknown generator '{other}' (expected triplets|noise|grid|unbalanced)"
            ))),
        }
    }

    /// The designed number of groups, used as the default k for the
    /// partitional baselines.
    pub fn designed_k(self) -> usize {
        match self {
            GeneratorName::Triplets => 9,
            GeneratorName::Noise => 3,
            GeneratorName::Grid => 100,
            GeneratorName::Unbalanced => 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum Algorithm {
    SupStatic,
    SupDynamic,
    MeanshiftNonblurring,
    Kmeans { k: usize, n_init: usize },
    Hierarchical { k: usize, linkage: LinkageName },
    CentroidSup { k: usize },
}

impl Algorithm {
    /// True for the algorithms driven by an influence range.
    pub fn needs_range(&self) -> bool {
        matches!(
            self,
            Algorithm::SupStatic | Algorithm::SupDynamic | Algorithm::MeanshiftNonblurring
        )
    }

    pub fn name(&self) -> &'static str {
        match self {
            Algorithm::SupStatic => "sup_static",
            Algorithm::SupDynamic => "sup_dynamic",
            Algorithm::MeanshiftNonblurring => "meanshift_nonblurring",
            Algorithm::Kmeans { .. } => "kmeans",
            Algorithm::Hierarchical { .. } => "hierarchical",
            Algorithm::CentroidSup { .. } => "centroid_sup",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LinkageName {
    Single,
    Complete,
    Centroid,
}

impl LinkageName {
    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "single" => Ok(LinkageName::Single),
            "complete" => Ok(LinkageName::Complete),
            "centroid" => Ok(LinkageName::Centroid),
            other => Err(usage(format!(
                "unknown linkage '{other}' (expected single|complete|centroid)"
            ))),
        }
    }

    pub fn to_core(self) -> Linkage {
        match self {
            LinkageName::Single => Linkage::Single,
            LinkageName::Complete => Linkage::Complete,
            LinkageName::Centroid => Linkage::Centroid,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RangePolicy {
    Explicit { r: f64 },
    Valley { choice: ValleyChoiceName },
    Percentile { q: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ValleyChoiceName {
    Leftmost,
    Sharpest,
}

impl RangePolicy {
    /// Parses the `--r-policy` syntax:
    /// `valley`, `valley:leftmost`, `valley:sharpest`, or `pct:<q>`.
    pub fn parse(text: &str) -> Result<Self> {
        if let Some(q) = text.strip_prefix("pct:") {
            let q: f64 = q
                .parse()
                .map_err(|_| usage(format!("'{q}' is not a valid percentile")))?;
            return Ok(RangePolicy::Percentile { q });
        }
        match text {
            "valley" | "valley:leftmost" => Ok(RangePolicy::Valley {
                choice: ValleyChoiceName::Leftmost,
            }),
            "valley:sharpest" => Ok(RangePolicy::Valley {
                choice: ValleyChoiceName::Sharpest,
            }),
            other => Err(usage(format!(
                "unknown r policy '{other}' (expected valley[:leftmost|:sharpest] or pct:<q>)"
            ))),
        }
    }

    pub fn to_core(&self) -> Option<RPolicy> {
        match *self {
            RangePolicy::Explicit { .. } => None,
            RangePolicy::Valley { choice } => Some(RPolicy::Valley {
                n_bins: None,
                min_prominence: DEFAULT_MIN_PROMINENCE,
                min_contrast: DEFAULT_MIN_CONTRAST,
                fallback_q: DEFAULT_FALLBACK_Q,
                choice: match choice {
                    ValleyChoiceName::Leftmost => ValleyChoice::Leftmost,
                    ValleyChoiceName::Sharpest => ValleyChoice::Sharpest,
                },
            }),
            RangePolicy::Percentile { q } => Some(RPolicy::Percentile { q }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TemperatureChoice {
    /// `range/5` for the static schedule, heating rate 1/50 for the
    /// dynamic one.
    Default,
    Static { temperature: f64 },
    Dynamic { heating_rate: f64 },
}

impl TemperatureChoice {
    /// Parses the `--temp` syntax: `static:<T>` or `dynamic:<s>`.
    pub fn parse(text: &str) -> Result<Self> {
        if let Some(t) = text.strip_prefix("static:") {
            let temperature: f64 = t
                .parse()
                .map_err(|_| usage(format!("'{t}' is not a valid temperature")))?;
            return Ok(TemperatureChoice::Static { temperature });
        }
        if let Some(s) = text.strip_prefix("dynamic:") {
            let heating_rate: f64 = s
                .parse()
                .map_err(|_| usage(format!("'{s}' is not a valid heating rate")))?;
            return Ok(TemperatureChoice::Dynamic { heating_rate });
        }
        Err(usage(format!(
            "unknown temperature '{text}' (expected static:<T> or dynamic:<s>)"
        )))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Normalization {
    None,
    Zscore,
}

/// Everything needed to replay one run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub input: InputSource,
    pub algo: Algorithm,
    pub r_policy: RangePolicy,
    pub temperature: TemperatureChoice,
    pub eps: f64,
    pub max_iter: usize,
    pub merge_tol: f64,
    pub trajectory: bool,
    pub snapshot_stride: usize,
    pub normalize: Normalization,
    pub seed: u64,
}

impl RunConfig {
    /// The defaults that config files and flags override.
    pub fn baseline(input: InputSource) -> Self {
        let opts = SupOptions::default();
        RunConfig {
            input,
            algo: Algorithm::SupStatic,
            r_policy: RangePolicy::Valley {
                choice: ValleyChoiceName::Leftmost,
            },
            temperature: TemperatureChoice::Default,
            eps: opts.convergence_eps,
            max_iter: opts.max_iterations,
            merge_tol: opts.merge_tol,
            trajectory: false,
            snapshot_stride: opts.snapshot_stride,
            normalize: Normalization::None,
            seed: 0,
        }
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read config {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("malformed config {}", path.display()))
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let mut text = serde_json::to_string_pretty(self)?;
        text.push('\n');
        std::fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))?;
        Ok(())
    }

    pub fn sup_options(&self) -> SupOptions {
        SupOptions {
            convergence_eps: self.eps,
            max_iterations: self.max_iter,
            merge_tol: self.merge_tol,
            record_trajectory: self.trajectory,
            snapshot_stride: self.snapshot_stride,
            parallel: false,
        }
    }

    /// Cross-field checks that individual parsers cannot see.
    pub fn validate(&self) -> Result<()> {
        match (&self.algo, &self.temperature) {
            (Algorithm::SupStatic | Algorithm::MeanshiftNonblurring, TemperatureChoice::Dynamic { .. }) => {
                Err(usage("a dynamic temperature requires --algo sup_dynamic"))
            }
            (Algorithm::SupDynamic, TemperatureChoice::Static { .. }) => {
                Err(usage("a static temperature conflicts with --algo sup_dynamic"))
            }
            _ => Ok(()),
        }
    }
}
