//! Shared fixtures for the benchmark suite.

use sup_core::datagen::{gen_nine_triplets, gen_three_clusters_noise};
use sup_core::PointSet;

/// The 27-point triplet design used by the small-input benchmarks.
pub fn triplets() -> PointSet {
    gen_nine_triplets(0).points
}

/// Three Gaussian clusters plus scattered noise, 160 points.
pub fn noisy() -> PointSet {
    gen_three_clusters_noise(10, 0).points
}
