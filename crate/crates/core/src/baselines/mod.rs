//! Comparison algorithms: Lloyd k-means with restarts and Tseng-style
//! initialization, agglomerative hierarchical clustering, and the
//! centroid-linkage merge process expressed as a self-updating process.

mod centroid_sup;
mod hierarchy;
mod kmeans;

pub use centroid_sup::{centroid_linkage_sup, MergeEvent, MergeTree};
pub use hierarchy::{dendrogram, hierarchical, tseng_init, Dendrogram, Linkage, MergeStep};
pub use kmeans::{kmeans, lloyd, InitMethod, KMeansConfig, KMeansResult, LloydRun};
