//! Seeded generators for the synthetic benchmark designs: nine tight
//! triplets, three clusters plus scattered noise, a 10×10 grid of
//! overlapping clusters, and three unbalanced elliptical groups.
//!
//! All generators draw from a ChaCha8 stream seeded with the given
//! value, so identical parameters reproduce identical coordinates.
//! Truncation constraints are enforced by rejection sampling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::point::PointSet;

/// Points with ground-truth group ids and a noise mask.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledDataset {
    pub points: PointSet,
    /// Group id per point; noise points share one reserved id distinct
    /// from every cluster id.
    pub truth: Vec<usize>,
    /// True where the point is scattered noise.
    pub noise_mask: Vec<bool>,
    pub seed: u64,
}

impl LabeledDataset {
    pub fn n_points(&self) -> usize {
        self.points.n_points()
    }

    /// Number of distinct non-noise group ids.
    pub fn n_groups(&self) -> usize {
        let mut ids: Vec<usize> = self
            .truth
            .iter()
            .zip(&self.noise_mask)
            .filter(|(_, &noise)| !noise)
            .map(|(&id, _)| id)
            .collect();
        ids.sort_unstable();
        ids.dedup();
        ids.len()
    }
}

/// Centers of the nine-triplet illustration.
pub const TRIPLET_CENTERS: [[f64; 2]; 9] = [
    [0.0, 0.0],
    [2.0, 0.0],
    [1.0, 1.0],
    [6.0, 0.0],
    [8.0, 0.0],
    [7.0, 1.0],
    [3.0, 3.0],
    [5.0, 3.0],
    [4.0, 4.0],
];

/// Centers of the three-clusters-plus-noise design.
pub const NOISE_DESIGN_CENTERS: [[f64; 2]; 3] = [[-6.0, 0.0], [6.0, 0.0], [0.0, 6.0]];

/// Reserved truth id for noise points in the noise design.
pub const NOISE_TRUTH_ID: usize = 3;

/// Centers of the unbalanced design.
pub const UNBALANCED_CENTERS: [[f64; 2]; 3] = [[-4.0, 5.0], [-5.0, -1.0], [0.0, 1.0]];

/// Per-axis standard deviations of the unbalanced design's groups.
pub const UNBALANCED_SIGMAS: [[f64; 2]; 3] = [[5.0, 2.0], [2.0, 2.0], [3.0, 3.0]];

/// Default tilt of the unbalanced design's first group.
pub const DEFAULT_ROTATION_DEG: f64 = 45.0;

fn standard_pair(rng: &mut ChaCha8Rng) -> (f64, f64) {
    (rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// A standard bivariate normal draw conditioned on radius ≤ `max_r`.
fn truncated_pair(rng: &mut ChaCha8Rng, max_r: f64) -> (f64, f64) {
    loop {
        let (z1, z2) = standard_pair(rng);
        if z1 * z1 + z2 * z2 <= max_r * max_r {
            return (z1, z2);
        }
    }
}

/// Nine triplets: 3 draws from a bivariate normal with σ = 0.2 per axis
/// around each of the nine centers; 27 points total.
pub fn gen_nine_triplets(seed: u64) -> LabeledDataset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut data = Vec::with_capacity(27 * 2);
    let mut truth = Vec::with_capacity(27);
    for (id, center) in TRIPLET_CENTERS.iter().enumerate() {
        for _ in 0..3 {
            let (z1, z2) = standard_pair(&mut rng);
            data.push(center[0] + 0.2 * z1);
            data.push(center[1] + 0.2 * z2);
            truth.push(id);
        }
    }
    LabeledDataset {
        points: PointSet::from_flat(data, 2).expect("generated coordinates are finite"),
        noise_mask: vec![false; truth.len()],
        truth,
        seed,
    }
}

/// Three clusters of 50 standard-normal points (each within distance 2
/// of its center) plus `n_noise` uniform points on [−12,12]×[−6,12]
/// kept only when farther than 3 from every center. Cluster points come
/// first, then noise.
pub fn gen_three_clusters_noise(n_noise: usize, seed: u64) -> LabeledDataset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = 150 + n_noise;
    let mut data = Vec::with_capacity(n * 2);
    let mut truth = Vec::with_capacity(n);
    let mut noise_mask = Vec::with_capacity(n);
    for (id, center) in NOISE_DESIGN_CENTERS.iter().enumerate() {
        for _ in 0..50 {
            let (z1, z2) = truncated_pair(&mut rng, 2.0);
            data.push(center[0] + z1);
            data.push(center[1] + z2);
            truth.push(id);
            noise_mask.push(false);
        }
    }
    let mut accepted = 0;
    while accepted < n_noise {
        let x = rng.random_range(-12.0..12.0);
        let y = rng.random_range(-6.0..12.0);
        let clear = NOISE_DESIGN_CENTERS.iter().all(|c| {
            let (dx, dy) = (x - c[0], y - c[1]);
            dx * dx + dy * dy > 9.0
        });
        if clear {
            data.push(x);
            data.push(y);
            truth.push(NOISE_TRUTH_ID);
            noise_mask.push(true);
            accepted += 1;
        }
    }
    LabeledDataset {
        points: PointSet::from_flat(data, 2).expect("generated coordinates are finite"),
        truth,
        noise_mask,
        seed,
    }
}

/// 100 clusters of 50 standard-normal points (each within distance 3 of
/// its center) on the grid (5i, 5j), i, j ∈ 1..=10; 5,000 points.
/// Neighboring supports overlap: centers sit 5 apart, radii reach 3.
pub fn gen_grid_clusters(seed: u64) -> LabeledDataset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = 100 * 50;
    let mut data = Vec::with_capacity(n * 2);
    let mut truth = Vec::with_capacity(n);
    for i in 1..=10 {
        for j in 1..=10 {
            let id = (i - 1) * 10 + (j - 1);
            let (cx, cy) = (5.0 * i as f64, 5.0 * j as f64);
            for _ in 0..50 {
                let (z1, z2) = truncated_pair(&mut rng, 3.0);
                data.push(cx + z1);
                data.push(cy + z2);
                truth.push(id);
            }
        }
    }
    LabeledDataset {
        points: PointSet::from_flat(data, 2).expect("generated coordinates are finite"),
        noise_mask: vec![false; truth.len()],
        truth,
        seed,
    }
}

/// Three groups of 50 points from axis-aligned bivariate normals with
/// per-axis standard deviations (5,2), (2,2), (3,3), each point within
/// one standard deviation of its center (Mahalanobis radius ≤ 1). The
/// first group is then rotated counter-clockwise by `rotation_deg`
/// about its own center.
pub fn gen_unbalanced(seed: u64, rotation_deg: f64) -> LabeledDataset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let theta = rotation_deg.to_radians();
    let (sin, cos) = theta.sin_cos();
    let n = 150;
    let mut data = Vec::with_capacity(n * 2);
    let mut truth = Vec::with_capacity(n);
    for (id, (center, sigma)) in UNBALANCED_CENTERS
        .iter()
        .zip(UNBALANCED_SIGMAS.iter())
        .enumerate()
    {
        for _ in 0..50 {
            let (z1, z2) = truncated_pair(&mut rng, 1.0);
            let (mut dx, mut dy) = (sigma[0] * z1, sigma[1] * z2);
            if id == 0 {
                let (rx, ry) = (dx * cos - dy * sin, dx * sin + dy * cos);
                dx = rx;
                dy = ry;
            }
            data.push(center[0] + dx);
            data.push(center[1] + dy);
            truth.push(id);
        }
    }
    LabeledDataset {
        points: PointSet::from_flat(data, 2).expect("generated coordinates are finite"),
        noise_mask: vec![false; truth.len()],
        truth,
        seed,
    }
}
