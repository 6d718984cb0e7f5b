//! Clustering by the self-updating process (SUP).
//!
//! Every data point keeps a moving copy. At each iteration a copy
//! relocates to the influence-weighted average of the positions it can
//! see: nearby copies pull strongly, distant ones weakly or not at all.
//! Copies that end up at the same frozen location form a cluster, so the
//! number of clusters comes out of the dynamics instead of being chosen
//! up front.
//!
//! The crate is organized around that engine:
//!
//! - [`process`]: the update step, the iteration loop, and cluster
//!   extraction from converged positions.
//! - [`influence`]: influence functions (truncated exponential with
//!   static or heating temperature schedules, flat indicator) and the
//!   convergence-readiness probe.
//! - [`params`]: data-driven selection of the influential range from
//!   the pairwise-distance frequency polygon, plus temperature schedule
//!   construction.
//! - [`baselines`]: Lloyd k-means with restarts and Tseng-style
//!   initialization, agglomerative hierarchical clustering, and the
//!   centroid-linkage process expressed as a SUP.
//! - [`datagen`]: seeded synthetic benchmark generators.
//! - [`eval`]: within-cluster variation, optimal-matching mistakes,
//!   correct-run checks, noise-isolation summaries, and PCA projection.

pub mod baselines;
pub mod datagen;
pub mod error;
pub mod eval;
pub mod influence;
pub mod params;
pub mod point;
pub mod process;

pub use error::SupError;
pub use influence::{InfluenceFamily, InfluenceSpec, PddReport, Reference, TemperatureSchedule};
pub use params::{FrequencyPolygon, RPolicy, RSelection, RSource, Valley, ValleyChoice, ValleyReport};
pub use point::{euclidean, squared_euclidean, PointSet};
pub use process::{SupOptions, SupResult};
