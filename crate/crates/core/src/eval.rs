//! Clustering quality metrics: within-cluster variation, optimal-match
//! mistake counts, correct-run determination under noise, noise
//! isolation summaries, tiny-cluster post-processing, and PCA
//! projection for 2-D reporting.

use std::collections::HashMap;

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::SupError;
use crate::point::{euclidean, squared_euclidean, PointSet};

/// Clusters of at most this many points count as "tiny" by default.
pub const DEFAULT_TINY_THRESHOLD: usize = 2;

/// Sum over clusters of squared Euclidean distances from members to the
/// cluster centroid.
pub fn within_cluster_variation(points: &PointSet, labels: &[usize]) -> Result<f64, SupError> {
    if labels.len() != points.n_points() {
        return Err(SupError::usage("labels must align with points"));
    }
    let dim = points.dim();
    let n_ids = labels.iter().max().map_or(0, |&m| m + 1);
    let mut sums = vec![0.0f64; n_ids * dim];
    let mut sizes = vec![0usize; n_ids];
    for (row, &label) in points.iter_rows().zip(labels) {
        sizes[label] += 1;
        for (acc, v) in sums[label * dim..(label + 1) * dim].iter_mut().zip(row) {
            *acc += v;
        }
    }
    for (label, &size) in sizes.iter().enumerate() {
        if size > 0 {
            for slot in sums[label * dim..(label + 1) * dim].iter_mut() {
                *slot /= size as f64;
            }
        }
    }
    let mut total = 0.0;
    for (row, &label) in points.iter_rows().zip(labels) {
        total += squared_euclidean(row, &sums[label * dim..(label + 1) * dim]);
    }
    Ok(total)
}

/// Compacts the masked entries of `ids` to 0-based first-occurrence
/// order; returns the compact id per masked position.
fn compact_ids(ids: &[usize], mask: &[bool]) -> (Vec<usize>, usize) {
    let mut map: HashMap<usize, usize> = HashMap::new();
    let mut out = Vec::new();
    for (&id, &keep) in ids.iter().zip(mask) {
        if keep {
            let next = map.len();
            out.push(*map.entry(id).or_insert(next));
        }
    }
    (out, map.len())
}

/// Best achievable agreement by exhaustive search over injective
/// row → column assignments (rows ≤ columns).
fn exhaustive_agreement(table: &[Vec<i64>], rows: usize, cols: usize) -> i64 {
    fn dfs(table: &[Vec<i64>], row: usize, rows: usize, used: &mut [bool]) -> i64 {
        if row == rows {
            return 0;
        }
        let mut best = i64::MIN;
        for col in 0..used.len() {
            if !used[col] {
                used[col] = true;
                let value = table[row][col] + dfs(table, row + 1, rows, used);
                used[col] = false;
                if value > best {
                    best = value;
                }
            }
        }
        best
    }
    let mut used = vec![false; cols];
    dfs(table, 0, rows, &mut used)
}

/// Maximum-sum assignment on a square matrix via the Hungarian
/// algorithm with potentials (O(n³)).
fn hungarian_agreement(square: &[Vec<i64>]) -> i64 {
    let n = square.len();
    if n == 0 {
        return 0;
    }
    let inf = i64::MAX / 4;
    let cost = |i: usize, j: usize| -square[i - 1][j - 1]; // minimize negated agreement
    let mut u = vec![0i64; n + 1];
    let mut v = vec![0i64; n + 1];
    let mut p = vec![0usize; n + 1]; // p[j] = row matched to column j
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0usize;
        let mut minv = vec![inf; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = inf;
            let mut j1 = 0usize;
            for j in 1..=n {
                if !used[j] {
                    let cur = cost(i0, j) - u[i0] - v[j];
                    if cur < minv[j] {
                        minv[j] = cur;
                        way[j] = j0;
                    }
                    if minv[j] < delta {
                        delta = minv[j];
                        j1 = j;
                    }
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    (1..=n).map(|j| square[p[j] - 1][j - 1]).sum()
}

/// Minimal number of mask-selected points left unexplained by the best
/// injective mapping of predicted cluster ids onto truth ids. Predicted
/// clusters that get no truth id count all their masked points as
/// mistakes.
pub fn match_mistakes(labels: &[usize], truth: &[usize], mask: &[bool]) -> Result<usize, SupError> {
    if labels.len() != truth.len() || labels.len() != mask.len() {
        return Err(SupError::usage("labels, truth, and mask must align"));
    }
    let (pred, n_pred) = compact_ids(labels, mask);
    let (gold, n_gold) = compact_ids(truth, mask);
    let total = pred.len();
    if total == 0 {
        return Ok(0);
    }
    let mut table = vec![vec![0i64; n_gold]; n_pred];
    for (&p, &g) in pred.iter().zip(&gold) {
        table[p][g] += 1;
    }
    let agreement = if n_pred.max(n_gold) <= 8 {
        if n_pred <= n_gold {
            exhaustive_agreement(&table, n_pred, n_gold)
        } else {
            let transposed: Vec<Vec<i64>> = (0..n_gold)
                .map(|g| (0..n_pred).map(|p| table[p][g]).collect())
                .collect();
            exhaustive_agreement(&transposed, n_gold, n_pred)
        }
    } else {
        let side = n_pred.max(n_gold);
        let mut square = vec![vec![0i64; side]; side];
        for (p, row) in table.iter().enumerate() {
            square[p][..n_gold].copy_from_slice(row);
        }
        hungarian_agreement(&square)
    };
    Ok(total - agreement as usize)
}

/// True exactly when the non-noise points are partitioned identically
/// to the truth: zero optimal-match mistakes and the same number of
/// occupied clusters on both sides. Noise assignments are ignored.
pub fn correct_run(
    labels: &[usize],
    truth: &[usize],
    noise_mask: &[bool],
) -> Result<bool, SupError> {
    if labels.len() != truth.len() || labels.len() != noise_mask.len() {
        return Err(SupError::usage("labels, truth, and mask must align"));
    }
    let keep: Vec<bool> = noise_mask.iter().map(|&m| !m).collect();
    let mistakes = match_mistakes(labels, truth, &keep)?;
    let (_, n_pred) = compact_ids(labels, &keep);
    let (_, n_gold) = compact_ids(truth, &keep);
    Ok(mistakes == 0 && n_pred == n_gold)
}

/// How much of the data ended up in tiny clusters.
#[derive(Debug, Clone, PartialEq)]
pub struct NoiseIsolationSummary {
    pub n_tiny_clusters: usize,
    /// Sizes of the tiny clusters, in cluster-id order.
    pub tiny_cluster_sizes: Vec<usize>,
    /// Noise points inside tiny clusters / all noise points (0 when
    /// there is no noise).
    pub noise_in_tiny_fraction: f64,
    /// Non-noise points inside tiny clusters / all non-noise points
    /// (0 when everything is noise).
    pub nonnoise_in_tiny_fraction: f64,
}

/// Counts clusters of size ≤ `tiny_threshold` and where the noise
/// landed relative to them.
pub fn noise_isolation_summary(
    labels: &[usize],
    noise_mask: &[bool],
    tiny_threshold: usize,
) -> Result<NoiseIsolationSummary, SupError> {
    if labels.len() != noise_mask.len() {
        return Err(SupError::usage("labels and mask must align"));
    }
    if tiny_threshold == 0 {
        return Err(SupError::config("tiny_threshold must be at least 1"));
    }
    let n_ids = labels.iter().max().map_or(0, |&m| m + 1);
    let mut sizes = vec![0usize; n_ids];
    for &label in labels {
        sizes[label] += 1;
    }
    let tiny: Vec<bool> = sizes.iter().map(|&s| s > 0 && s <= tiny_threshold).collect();
    let tiny_cluster_sizes: Vec<usize> = sizes
        .iter()
        .copied()
        .filter(|&s| s > 0 && s <= tiny_threshold)
        .collect();
    let mut noise_total = 0usize;
    let mut noise_tiny = 0usize;
    let mut clean_total = 0usize;
    let mut clean_tiny = 0usize;
    for (&label, &is_noise) in labels.iter().zip(noise_mask) {
        if is_noise {
            noise_total += 1;
            if tiny[label] {
                noise_tiny += 1;
            }
        } else {
            clean_total += 1;
            if tiny[label] {
                clean_tiny += 1;
            }
        }
    }
    let fraction = |part: usize, whole: usize| {
        if whole == 0 {
            0.0
        } else {
            part as f64 / whole as f64
        }
    };
    Ok(NoiseIsolationSummary {
        n_tiny_clusters: tiny_cluster_sizes.len(),
        tiny_cluster_sizes,
        noise_in_tiny_fraction: fraction(noise_tiny, noise_total),
        nonnoise_in_tiny_fraction: fraction(clean_tiny, clean_total),
    })
}

/// Reassigns every member of a tiny cluster (size ≤ `tiny_threshold`)
/// to the larger cluster with the nearest centroid, then renumbers
/// labels by first occurrence. Labels are returned unchanged when no
/// larger cluster exists.
pub fn merge_tiny_into_nearest(
    points: &PointSet,
    labels: &[usize],
    tiny_threshold: usize,
) -> Result<Vec<usize>, SupError> {
    if labels.len() != points.n_points() {
        return Err(SupError::usage("labels must align with points"));
    }
    let n_ids = labels.iter().max().map_or(0, |&m| m + 1);
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); n_ids];
    for (i, &label) in labels.iter().enumerate() {
        members[label].push(i);
    }
    let centroids: Vec<Option<Vec<f64>>> = members
        .iter()
        .map(|m| (!m.is_empty()).then(|| points.centroid_of(m)))
        .collect();
    let big: Vec<usize> = (0..n_ids)
        .filter(|&id| members[id].len() > tiny_threshold)
        .collect();
    if big.is_empty() {
        return Ok(labels.to_vec());
    }
    let mut target = vec![usize::MAX; n_ids];
    for id in 0..n_ids {
        if members[id].is_empty() {
            continue;
        }
        if members[id].len() > tiny_threshold {
            target[id] = id;
        } else {
            let from = centroids[id].as_ref().expect("nonempty cluster");
            let nearest = big
                .iter()
                .copied()
                .min_by(|&a, &b| {
                    let da = euclidean(from, centroids[a].as_ref().expect("big cluster"));
                    let db = euclidean(from, centroids[b].as_ref().expect("big cluster"));
                    da.total_cmp(&db).then(a.cmp(&b))
                })
                .expect("big is nonempty");
            target[id] = nearest;
        }
    }
    let mut renumber: HashMap<usize, usize> = HashMap::new();
    let mut out = Vec::with_capacity(labels.len());
    for &label in labels {
        let t = target[label];
        let next = renumber.len();
        out.push(*renumber.entry(t).or_insert(next));
    }
    Ok(out)
}

/// A fitted principal-component basis.
#[derive(Debug, Clone, PartialEq)]
pub struct PcaModel {
    /// Feature means of the fitting data.
    pub mean: Vec<f64>,
    /// One unit-length component per row, descending variance; the
    /// entry of largest magnitude in each component is positive, which
    /// pins the otherwise arbitrary sign.
    pub components: Vec<Vec<f64>>,
    /// Fraction of total variance captured by each component.
    pub explained: Vec<f64>,
}

impl PcaModel {
    /// Fits the top `dims` components of the mean-centered covariance
    /// (denominator N−1).
    pub fn fit(points: &PointSet, dims: usize) -> Result<PcaModel, SupError> {
        let n = points.n_points();
        let p = points.dim();
        if dims == 0 || dims > p {
            return Err(SupError::usage("dims must satisfy 1 <= dims <= p"));
        }
        let mut mean = vec![0.0f64; p];
        for row in points.iter_rows() {
            for (m, v) in mean.iter_mut().zip(row) {
                *m += v;
            }
        }
        for m in mean.iter_mut() {
            *m /= n as f64;
        }
        let denom = (n.max(2) - 1) as f64;
        let mut cov = DMatrix::<f64>::zeros(p, p);
        for row in points.iter_rows() {
            for a in 0..p {
                let da = row[a] - mean[a];
                for b in a..p {
                    cov[(a, b)] += da * (row[b] - mean[b]);
                }
            }
        }
        for a in 0..p {
            for b in a..p {
                let value = cov[(a, b)] / denom;
                cov[(a, b)] = value;
                cov[(b, a)] = value;
            }
        }
        let eigen = SymmetricEigen::new(cov);
        let mut order: Vec<usize> = (0..p).collect();
        order.sort_by(|&a, &b| eigen.eigenvalues[b].total_cmp(&eigen.eigenvalues[a]));
        let clamped: Vec<f64> = order
            .iter()
            .map(|&i| eigen.eigenvalues[i].max(0.0))
            .collect();
        let total: f64 = clamped.iter().sum();
        let explained: Vec<f64> = clamped
            .iter()
            .take(dims)
            .map(|&l| if total > 0.0 { l / total } else { 0.0 })
            .collect();
        let mut components = Vec::with_capacity(dims);
        for &i in order.iter().take(dims) {
            let col = eigen.eigenvectors.column(i);
            let mut component: Vec<f64> = col.iter().copied().collect();
            let lead = component
                .iter()
                .enumerate()
                .max_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))
                .map(|(i, _)| i)
                .expect("p >= 1");
            if component[lead] < 0.0 {
                for value in component.iter_mut() {
                    *value = -*value;
                }
            }
            components.push(component);
        }
        Ok(PcaModel {
            mean,
            components,
            explained,
        })
    }

    /// Projects points onto the fitted components.
    pub fn project(&self, points: &PointSet) -> Result<PointSet, SupError> {
        if points.dim() != self.mean.len() {
            return Err(SupError::usage("dimension mismatch with fitted model"));
        }
        let dims = self.components.len();
        let mut data = Vec::with_capacity(points.n_points() * dims);
        for row in points.iter_rows() {
            for component in &self.components {
                let mut dot = 0.0;
                for ((v, m), c) in row.iter().zip(&self.mean).zip(component) {
                    dot += (v - m) * c;
                }
                data.push(dot);
            }
        }
        PointSet::from_flat(data, dims)
    }
}

/// Fits and projects in one call, returning the projected points and
/// the per-component explained-variance fractions.
pub fn pca_project(points: &PointSet, dims: usize) -> Result<(PointSet, Vec<f64>), SupError> {
    let model = PcaModel::fit(points, dims)?;
    let projected = model.project(points)?;
    Ok((projected, model.explained))
}

/// The full per-run evaluation record.
#[derive(Debug, Clone, PartialEq)]
pub struct ClusteringEvaluation {
    pub total_withinss: f64,
    pub n_clusters: usize,
    pub n_points: usize,
    /// Optimal-match mistakes over all points; absent without truth.
    pub n_mistakes: Option<usize>,
    /// 1 − mistakes/N; absent without truth.
    pub accuracy: Option<f64>,
    /// Exact non-noise partition recovery; absent without truth.
    pub correct_run: Option<bool>,
    pub tiny_cluster_sizes: Vec<usize>,
}

/// Evaluates a labeling, with truth-dependent metrics when ground truth
/// is supplied. `noise_mask` (all-false when absent) feeds the
/// correct-run check and the noise isolation fractions.
pub fn evaluate(
    points: &PointSet,
    labels: &[usize],
    truth: Option<&[usize]>,
    noise_mask: Option<&[bool]>,
    tiny_threshold: usize,
) -> Result<ClusteringEvaluation, SupError> {
    let n = points.n_points();
    let total_withinss = within_cluster_variation(points, labels)?;
    let mut distinct = labels.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    let all_false;
    let mask = match noise_mask {
        Some(m) => m,
        None => {
            all_false = vec![false; n];
            &all_false
        }
    };
    let summary = noise_isolation_summary(labels, mask, tiny_threshold)?;
    let (n_mistakes, accuracy, correct) = match truth {
        Some(truth) => {
            let mistakes = match_mistakes(labels, truth, &vec![true; n])?;
            (
                Some(mistakes),
                Some(1.0 - mistakes as f64 / n as f64),
                Some(correct_run(labels, truth, mask)?),
            )
        }
        None => (None, None, None),
    };
    Ok(ClusteringEvaluation {
        total_withinss,
        n_clusters: distinct.len(),
        n_points: n,
        n_mistakes,
        accuracy,
        correct_run: correct,
        tiny_cluster_sizes: summary.tiny_cluster_sizes,
    })
}
