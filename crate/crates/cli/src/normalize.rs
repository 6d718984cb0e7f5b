//! Per-feature z-score normalization.

use sup_core::PointSet;

/// Centers each feature at 0 and scales it to sample standard
/// deviation 1 (denominator N−1). Zero-variance features are centered
/// but left unscaled, and their names are reported back so the caller
/// can warn.
pub fn zscore_normalize(points: &PointSet) -> (PointSet, Vec<usize>) {
    let n = points.n_points();
    let p = points.dim();
    let mut mean = vec![0.0f64; p];
    for row in points.iter_rows() {
        for (m, v) in mean.iter_mut().zip(row) {
            *m += v;
        }
    }
    for m in &mut mean {
        *m /= n as f64;
    }
    let mut var = vec![0.0f64; p];
    for row in points.iter_rows() {
        for ((s, v), m) in var.iter_mut().zip(row).zip(&mean) {
            let d = v - m;
            *s += d * d;
        }
    }
    let denom = (n.max(2) - 1) as f64;
    let mut constant = Vec::new();
    let sd: Vec<f64> = var
        .iter()
        .enumerate()
        .map(|(j, &s)| {
            let sd = (s / denom).sqrt();
            if sd == 0.0 {
                constant.push(j);
                1.0 // division skipped for flat features
            } else {
                sd
            }
        })
        .collect();
    let mut flat = Vec::with_capacity(n * p);
    for row in points.iter_rows() {
        for ((v, m), s) in row.iter().zip(&mean).zip(&sd) {
            flat.push((v - m) / s);
        }
    }
    (
        PointSet::from_flat(flat, p).expect("shape preserved"),
        constant,
    )
}
