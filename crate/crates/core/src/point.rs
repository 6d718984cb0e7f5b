//! Dense row-major storage for N points in p-dimensional space.

use crate::error::SupError;

/// An N×p coordinate matrix, one point per row.
///
/// Construction validates that every coordinate is finite and that the
/// shape is consistent, so downstream code can assume well-formed input.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    data: Vec<f64>,
    dim: usize,
}

impl PointSet {
    /// Builds a point set from a flat row-major buffer.
    pub fn from_flat(data: Vec<f64>, dim: usize) -> Result<Self, SupError> {
        if dim == 0 {
            return Err(SupError::usage("dimension must be at least 1"));
        }
        if data.is_empty() {
            return Err(SupError::usage("a point set needs at least one point"));
        }
        if !data.len().is_multiple_of(dim) {
            return Err(SupError::usage(format!(
                "buffer length {} is not a multiple of dimension {dim}",
                data.len()
            )));
        }
        if let Some(pos) = data.iter().position(|v| !v.is_finite()) {
            return Err(SupError::data(format!(
                "non-finite coordinate at point {}, axis {}",
                pos / dim,
                pos % dim
            )));
        }
        Ok(PointSet { data, dim })
    }

    /// Builds a point set from per-point rows, which must all share one length.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self, SupError> {
        let dim = rows.first().map(Vec::len).unwrap_or(0);
        if rows.iter().any(|r| r.len() != dim) {
            return Err(SupError::usage("rows have inconsistent lengths"));
        }
        Self::from_flat(rows.concat(), dim)
    }

    pub fn n_points(&self) -> usize {
        self.data.len() / self.dim
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn iter_rows(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks_exact(self.dim)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub(crate) fn data_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }

    /// Mean position of the given member rows.
    pub fn centroid_of(&self, members: &[usize]) -> Vec<f64> {
        let mut c = vec![0.0; self.dim];
        for &i in members {
            for (acc, v) in c.iter_mut().zip(self.row(i)) {
                *acc += v;
            }
        }
        let n = members.len().max(1) as f64;
        for acc in &mut c {
            *acc /= n;
        }
        c
    }
}

/// Squared Euclidean distance; the cheap form used in hot loops where
/// only comparisons against a squared threshold are needed.
#[inline]
pub fn squared_euclidean(a: &[f64], b: &[f64]) -> f64 {
    let mut acc = 0.0;
    for (x, y) in a.iter().zip(b) {
        let d = x - y;
        acc += d * d;
    }
    acc
}

/// Euclidean distance between two equally long coordinate slices.
#[inline]
pub fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    squared_euclidean(a, b).sqrt()
}
