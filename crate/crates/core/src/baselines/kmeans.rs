//! Lloyd k-means with multi-start and deterministic seeding.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::baselines::hierarchy::{tseng_init, Linkage};
use crate::error::SupError;
use crate::point::{squared_euclidean, PointSet};

/// How initial centers are chosen.
#[derive(Debug, Clone, PartialEq)]
pub enum InitMethod {
    /// k distinct data points drawn uniformly per restart.
    Random,
    /// Centroids of the k largest clusters after cutting a hierarchical
    /// dendrogram at k·p clusters. Deterministic, so restarts are moot.
    Tseng { p: usize, linkage: Linkage },
}

#[derive(Debug, Clone, PartialEq)]
pub struct KMeansConfig {
    pub k: usize,
    /// Random restarts; the best run (smallest within-cluster sum of
    /// squares) wins.
    pub n_init: usize,
    pub max_iter: usize,
    pub seed: u64,
    pub init: InitMethod,
}

impl KMeansConfig {
    pub fn random(k: usize, n_init: usize, seed: u64) -> Self {
        KMeansConfig {
            k,
            n_init,
            max_iter: 100,
            seed,
            init: InitMethod::Random,
        }
    }
}

/// One Lloyd run from fixed initial centers.
#[derive(Debug, Clone)]
pub struct LloydRun {
    pub labels: Vec<usize>,
    pub centers: PointSet,
    pub total_withinss: f64,
    /// Within-cluster sum of squares recorded after every assignment
    /// pass; non-increasing.
    pub ss_history: Vec<f64>,
    pub iterations: usize,
}

#[derive(Debug, Clone)]
pub struct KMeansResult {
    pub labels: Vec<usize>,
    pub centers: PointSet,
    pub total_withinss: f64,
    /// Which restart produced the winning run.
    pub best_restart: usize,
}

/// Assigns every point to its nearest center (ties to the lowest center
/// index). Returns the within-cluster sum of squares of the assignment.
fn assign(points: &PointSet, centers: &PointSet, labels: &mut [usize]) -> f64 {
    let mut total = 0.0;
    for (i, row) in points.iter_rows().enumerate() {
        let mut best = 0usize;
        let mut best_d = f64::INFINITY;
        for (c, center) in centers.iter_rows().enumerate() {
            let d = squared_euclidean(row, center);
            if d < best_d {
                best_d = d;
                best = c;
            }
        }
        labels[i] = best;
        total += best_d;
    }
    total
}

/// Lloyd iterations from the given initial centers until the assignment
/// stops changing or `max_iter` passes run out.
pub fn lloyd(points: &PointSet, initial_centers: &PointSet, max_iter: usize) -> Result<LloydRun, SupError> {
    let k = initial_centers.n_points();
    let n = points.n_points();
    if k == 0 || k > n {
        return Err(SupError::usage("k must satisfy 1 <= k <= N"));
    }
    if initial_centers.dim() != points.dim() {
        return Err(SupError::usage("centers and points must share dimension"));
    }
    if max_iter == 0 {
        return Err(SupError::config("max_iter must be positive"));
    }
    let dim = points.dim();
    let mut centers = initial_centers.clone();
    let mut labels = vec![0usize; n];
    let mut ss_history = Vec::new();
    let mut iterations = 0;

    loop {
        let prev = labels.clone();
        let ss = assign(points, &centers, &mut labels);
        ss_history.push(ss);
        iterations += 1;
        if labels == prev && iterations > 1 {
            break;
        }

        // recompute centers as member centroids
        let mut sums = vec![0.0f64; k * dim];
        let mut sizes = vec![0usize; k];
        for (i, row) in points.iter_rows().enumerate() {
            let c = labels[i];
            sizes[c] += 1;
            for (acc, v) in sums[c * dim..(c + 1) * dim].iter_mut().zip(row) {
                *acc += v;
            }
        }
        let mut reseeded: Vec<usize> = Vec::new();
        for c in 0..k {
            if sizes[c] > 0 {
                for (slot, acc) in centers.data_mut()[c * dim..(c + 1) * dim]
                    .iter_mut()
                    .zip(&sums[c * dim..(c + 1) * dim])
                {
                    *slot = acc / sizes[c] as f64;
                }
            } else {
                // Re-seed an emptied center at the point farthest from
                // its assigned center, so the run keeps exactly k
                // clusters without increasing the objective. Several
                // centers emptied in one pass each take a distinct point.
                let far = (0..n)
                    .filter(|i| !reseeded.contains(i))
                    .max_by(|&a, &b| {
                        let da = squared_euclidean(points.row(a), centers.row(labels[a]));
                        let db = squared_euclidean(points.row(b), centers.row(labels[b]));
                        da.total_cmp(&db)
                    })
                    .expect("fewer reseeds than points");
                reseeded.push(far);
                let row = points.row(far).to_vec();
                centers.data_mut()[c * dim..(c + 1) * dim].copy_from_slice(&row);
            }
        }

        if iterations >= max_iter {
            // one final assignment so labels match the final centers
            let ss = assign(points, &centers, &mut labels);
            ss_history.push(ss);
            break;
        }
    }

    let total_withinss = *ss_history.last().expect("at least one pass");
    Ok(LloydRun {
        labels,
        centers,
        total_withinss,
        ss_history,
        iterations,
    })
}

fn random_centers(points: &PointSet, k: usize, rng: &mut ChaCha8Rng) -> PointSet {
    let picks = rand::seq::index::sample(rng, points.n_points(), k);
    let mut data = Vec::with_capacity(k * points.dim());
    for idx in picks.iter() {
        data.extend_from_slice(points.row(idx));
    }
    PointSet::from_flat(data, points.dim()).expect("centers copied from valid points")
}

/// Multi-start k-means: runs Lloyd from `n_init` seeded starts and
/// returns the run with the smallest within-cluster sum of squares
/// (ties to the lower restart index). Each restart draws from its own
/// generator stream, so the result does not depend on evaluation order.
pub fn kmeans(points: &PointSet, cfg: &KMeansConfig) -> Result<KMeansResult, SupError> {
    if cfg.k == 0 || cfg.k > points.n_points() {
        return Err(SupError::usage("k must satisfy 1 <= k <= N"));
    }
    if cfg.n_init == 0 {
        return Err(SupError::config("n_init must be positive"));
    }

    let restarts = match cfg.init {
        // deterministic start: extra restarts would repeat it
        InitMethod::Tseng { .. } => 1,
        InitMethod::Random => cfg.n_init,
    };

    let mut best: Option<(f64, usize, LloydRun)> = None;
    for restart in 0..restarts {
        let centers = match cfg.init {
            InitMethod::Random => {
                let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
                rng.set_stream(restart as u64);
                random_centers(points, cfg.k, &mut rng)
            }
            InitMethod::Tseng { p, linkage } => tseng_init(points, cfg.k, p, linkage)?,
        };
        let run = lloyd(points, &centers, cfg.max_iter)?;
        let better = match &best {
            None => true,
            Some((ss, _, _)) => run.total_withinss < *ss,
        };
        if better {
            best = Some((run.total_withinss, restart, run));
        }
    }

    let (total_withinss, best_restart, run) = best.expect("n_init >= 1");
    Ok(KMeansResult {
        labels: run.labels,
        centers: run.centers,
        total_withinss,
        best_restart,
    })
}
