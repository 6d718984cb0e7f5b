//! Agglomerative hierarchical clustering (single / complete / centroid
//! linkage) with deterministic tie-breaking, dendrogram cuts, and the
//! Tseng-style k-means initializer built on top of it.
//!
//! The implementation is the textbook O(N³) agglomeration over a full
//! distance matrix (quadratic memory), which is all the comparison
//! experiments need.

use crate::error::SupError;
use crate::point::{euclidean, PointSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Linkage {
    Single,
    Complete,
    Centroid,
}

/// One agglomeration event. Clusters are identified by their slot — the
/// smallest member index — and `a < b` always holds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MergeStep {
    pub a: usize,
    pub b: usize,
    pub distance: f64,
    /// Size of the cluster the merge produces.
    pub size: usize,
}

/// The full merge history of one agglomeration run (N−1 steps).
#[derive(Debug, Clone, PartialEq)]
pub struct Dendrogram {
    pub n_points: usize,
    pub linkage: Linkage,
    pub steps: Vec<MergeStep>,
}

impl Dendrogram {
    /// Clusters after undoing all but the first N−k merges, as sorted
    /// member lists ordered by slot, plus the step at which each
    /// cluster reached its final membership (−1 for untouched
    /// singletons).
    fn partition(&self, k: usize) -> Result<(Vec<Vec<usize>>, Vec<i64>), SupError> {
        let n = self.n_points;
        if k == 0 || k > n {
            return Err(SupError::usage("cut level must satisfy 1 <= k <= N"));
        }
        let mut parent: Vec<usize> = (0..n).collect();
        let mut formed = vec![-1i64; n];
        for (s, step) in self.steps[..n - k].iter().enumerate() {
            parent[step.b] = step.a;
            formed[step.a] = s as i64;
        }
        let root = |mut x: usize| {
            let parent = &parent;
            while parent[x] != x {
                x = parent[x];
            }
            x
        };
        let mut slot_of: Vec<Vec<usize>> = vec![Vec::new(); n];
        for i in 0..n {
            slot_of[root(i)].push(i);
        }
        let mut clusters = Vec::with_capacity(k);
        let mut formed_steps = Vec::with_capacity(k);
        for slot in 0..n {
            if !slot_of[slot].is_empty() {
                clusters.push(std::mem::take(&mut slot_of[slot]));
                formed_steps.push(formed[slot]);
            }
        }
        Ok((clusters, formed_steps))
    }

    /// Member lists of the k clusters, ordered by smallest member.
    pub fn clusters_at(&self, k: usize) -> Result<Vec<Vec<usize>>, SupError> {
        Ok(self.partition(k)?.0)
    }

    /// Labels (0-based, contiguous, ordered by first occurrence) after
    /// cutting the tree at k clusters.
    pub fn cut(&self, k: usize) -> Result<Vec<usize>, SupError> {
        let clusters = self.clusters_at(k)?;
        let mut labels = vec![0usize; self.n_points];
        for (id, members) in clusters.iter().enumerate() {
            for &m in members {
                labels[m] = id;
            }
        }
        Ok(labels)
    }
}

/// Builds the full agglomeration history. Merge ties go to the
/// lexicographically smallest slot pair.
pub fn dendrogram(points: &PointSet, linkage: Linkage) -> Result<Dendrogram, SupError> {
    let n = points.n_points();
    let mut d = vec![0.0f64; n * n];
    for i in 0..n {
        for j in (i + 1)..n {
            let dist = euclidean(points.row(i), points.row(j));
            d[i * n + j] = dist;
            d[j * n + i] = dist;
        }
    }
    // cluster id = slot; merging reuses the smaller slot
    let mut active: Vec<usize> = (0..n).collect();
    let mut size = vec![1usize; n];
    let mut centroid: Vec<Vec<f64>> = points.iter_rows().map(|r| r.to_vec()).collect();
    let mut steps = Vec::with_capacity(n.saturating_sub(1));

    while active.len() > 1 {
        let mut best = (0usize, 1usize, f64::INFINITY);
        for ii in 0..active.len() {
            for jj in (ii + 1)..active.len() {
                let dist = d[active[ii] * n + active[jj]];
                // strict < keeps the earliest (lexicographically
                // smallest) pair on ties; active stays slot-sorted
                if dist < best.2 {
                    best = (ii, jj, dist);
                }
            }
        }
        let (bi, bj, dist) = best;
        let (a, b) = (active[bi], active[bj]);
        let new_size = size[a] + size[b];
        centroid[a] = centroid[a]
            .iter()
            .zip(&centroid[b])
            .map(|(&ca, &cb)| (size[a] as f64 * ca + size[b] as f64 * cb) / new_size as f64)
            .collect();
        for &x in active.iter() {
            if x == a || x == b {
                continue;
            }
            let dax = d[a * n + x];
            let dbx = d[b * n + x];
            let nd = match linkage {
                Linkage::Single => dax.min(dbx),
                Linkage::Complete => dax.max(dbx),
                Linkage::Centroid => euclidean(&centroid[a], &centroid[x]),
            };
            d[a * n + x] = nd;
            d[x * n + a] = nd;
        }
        size[a] = new_size;
        steps.push(MergeStep {
            a,
            b,
            distance: dist,
            size: new_size,
        });
        active.remove(bj);
    }

    Ok(Dendrogram {
        n_points: n,
        linkage,
        steps,
    })
}

/// Agglomerative clustering cut at k clusters.
pub fn hierarchical(points: &PointSet, linkage: Linkage, k: usize) -> Result<Vec<usize>, SupError> {
    dendrogram(points, linkage)?.cut(k)
}

/// Cuts the dendrogram at k·p clusters and returns the centroids of the
/// k largest as initial k-means centers. Size ties go to the cluster
/// formed earlier (untouched singletons earliest), then to the smaller
/// member index.
pub fn tseng_init(
    points: &PointSet,
    k: usize,
    p: usize,
    linkage: Linkage,
) -> Result<PointSet, SupError> {
    if k == 0 || p == 0 {
        return Err(SupError::usage("k and p must be positive"));
    }
    if k * p > points.n_points() {
        return Err(SupError::usage("k * p must not exceed the point count"));
    }
    let tree = dendrogram(points, linkage)?;
    let (clusters, formed) = tree.partition(k * p)?;
    let mut order: Vec<usize> = (0..clusters.len()).collect();
    order.sort_by(|&x, &y| {
        clusters[y]
            .len()
            .cmp(&clusters[x].len())
            .then(formed[x].cmp(&formed[y]))
            .then(clusters[x][0].cmp(&clusters[y][0]))
    });
    let mut data = Vec::with_capacity(k * points.dim());
    for &idx in order.iter().take(k) {
        data.extend(points.centroid_of(&clusters[idx]));
    }
    PointSet::from_flat(data, points.dim())
}
