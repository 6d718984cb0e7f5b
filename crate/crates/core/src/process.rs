//! The engine: one relocation step, the iteration loop, and cluster
//! extraction from the frozen positions.

use rayon::prelude::*;

use crate::error::SupError;
use crate::influence::{InfluenceFamily, InfluenceSpec, Reference};
use crate::point::{squared_euclidean, PointSet};

/// Knobs for the iteration loop.
#[derive(Debug, Clone, PartialEq)]
pub struct SupOptions {
    /// Maximum per-point displacement under which the process counts as
    /// converged. Exact fixedness never triggers in floating point, so
    /// a numeric threshold stands in for "no longer moves".
    pub convergence_eps: f64,
    /// Hard cap on iterations; hitting it is reported, not an error.
    pub max_iterations: usize,
    /// Converged positions within this distance (by transitive closure)
    /// belong to one cluster. Must exceed `convergence_eps`.
    pub merge_tol: f64,
    /// Keep position snapshots along the way.
    pub record_trajectory: bool,
    /// Snapshot every this-many iterations (when recording).
    pub snapshot_stride: usize,
    /// Compute the per-point updates across threads. Each point's inner
    /// summation stays in ascending index order, so the results agree
    /// with sequential execution.
    pub parallel: bool,
}

impl Default for SupOptions {
    fn default() -> Self {
        SupOptions {
            convergence_eps: 1e-8,
            max_iterations: 10_000,
            merge_tol: 1e-4,
            record_trajectory: false,
            snapshot_stride: 1,
            parallel: false,
        }
    }
}

impl SupOptions {
    pub fn validate(&self) -> Result<(), SupError> {
        if self.convergence_eps <= 0.0 || !self.convergence_eps.is_finite() {
            return Err(SupError::config("convergence_eps must be positive"));
        }
        if self.max_iterations == 0 {
            return Err(SupError::config("max_iterations must be positive"));
        }
        if self.merge_tol <= self.convergence_eps || !self.merge_tol.is_finite() {
            return Err(SupError::config("merge_tol must exceed convergence_eps"));
        }
        if self.snapshot_stride == 0 {
            return Err(SupError::config("snapshot_stride must be positive"));
        }
        Ok(())
    }
}

/// Everything a finished run reports.
#[derive(Debug, Clone)]
pub struct SupResult {
    /// Where every moving copy froze.
    pub final_positions: PointSet,
    /// Cluster ids, 0-based and contiguous, numbered by first occurrence.
    pub labels: Vec<usize>,
    /// One converged location per cluster (centroid of its members'
    /// final positions).
    pub representatives: PointSet,
    pub iterations_run: usize,
    /// False exactly when the iteration cap was hit first.
    pub converged: bool,
    /// Snapshots (initial state first, final state last) when requested.
    pub trajectory: Option<Vec<PointSet>>,
}

impl SupResult {
    pub fn n_clusters(&self) -> usize {
        self.representatives.n_points()
    }
}

/// Influence parameters resolved for one iteration, so the pair loop
/// does no branching on the schedule.
enum StepKernel {
    Exponential { range_sq: f64, temperature: f64 },
    Flat { range_sq: f64 },
}

impl StepKernel {
    fn at(family: &InfluenceFamily, t: usize) -> StepKernel {
        match family {
            InfluenceFamily::TruncatedExponential { range, schedule } => {
                StepKernel::Exponential {
                    range_sq: range * range,
                    temperature: schedule.temperature(t),
                }
            }
            InfluenceFamily::FlatIndicator { range } => StepKernel::Flat {
                range_sq: range * range,
            },
        }
    }
}

/// Relocates one moving copy: the influence-weighted average of the
/// origin positions it can see, summed in ascending index order.
fn relocate(state_row: &[f64], origin: &PointSet, kernel: &StepKernel, out: &mut [f64]) {
    out.fill(0.0);
    let mut total = 0.0;
    match *kernel {
        StepKernel::Exponential {
            range_sq,
            temperature,
        } => {
            for o in origin.iter_rows() {
                let d_sq = squared_euclidean(state_row, o);
                if d_sq <= range_sq {
                    let w = (-d_sq.sqrt() / temperature).exp();
                    for (acc, v) in out.iter_mut().zip(o) {
                        *acc += w * v;
                    }
                    total += w;
                }
            }
        }
        StepKernel::Flat { range_sq } => {
            for o in origin.iter_rows() {
                if squared_euclidean(state_row, o) <= range_sq {
                    for (acc, v) in out.iter_mut().zip(o) {
                        *acc += v;
                    }
                    total += 1.0;
                }
            }
        }
    }
    if total > 0.0 {
        for acc in out.iter_mut() {
            *acc /= total;
        }
    } else {
        // Only reachable with an initial-reference update whose moving
        // copy drifted out of range of every origin point: it freezes.
        out.copy_from_slice(state_row);
    }
}

fn step_into(
    state: &PointSet,
    origin: &PointSet,
    t: usize,
    family: &InfluenceFamily,
    out: &mut [f64],
    parallel: bool,
) {
    let dim = state.dim();
    let kernel = StepKernel::at(family, t);
    if parallel {
        out.par_chunks_mut(dim)
            .enumerate()
            .for_each(|(i, chunk)| relocate(state.row(i), origin, &kernel, chunk));
    } else {
        for (i, chunk) in out.chunks_mut(dim).enumerate() {
            relocate(state.row(i), origin, &kernel, chunk);
        }
    }
}

/// One synchronous update of every moving copy.
///
/// `origin` is what the copies are attracted to: pass `state` itself for
/// the blurring update (the process proper) or the initial positions for
/// the non-blurring mean-shift mode.
pub fn update_step(
    state: &PointSet,
    origin: &PointSet,
    t: usize,
    spec: &InfluenceSpec,
) -> Result<PointSet, SupError> {
    spec.validate()?;
    if state.n_points() != origin.n_points() || state.dim() != origin.dim() {
        return Err(SupError::usage("state and origin shapes must match"));
    }
    let mut out = vec![0.0; state.n_points() * state.dim()];
    step_into(state, origin, t, &spec.family, &mut out, false);
    PointSet::from_flat(out, state.dim())
}

/// The normalized weights point `i` would use in [`update_step`]:
/// nonnegative, summing to 1 (there is always the self weight in
/// blurring mode), one entry per origin point. Diagnostic companion to
/// the fused hot loop.
pub fn normalized_weights(
    state: &PointSet,
    origin: &PointSet,
    i: usize,
    t: usize,
    spec: &InfluenceSpec,
) -> Result<Vec<f64>, SupError> {
    spec.validate()?;
    if state.n_points() != origin.n_points() || state.dim() != origin.dim() {
        return Err(SupError::usage("state and origin shapes must match"));
    }
    if i >= state.n_points() {
        return Err(SupError::usage("point index out of bounds"));
    }
    let kernel = StepKernel::at(&spec.family, t);
    let row = state.row(i);
    let mut weights: Vec<f64> = origin
        .iter_rows()
        .map(|o| {
            let d_sq = squared_euclidean(row, o);
            match kernel {
                StepKernel::Exponential {
                    range_sq,
                    temperature,
                } => {
                    if d_sq <= range_sq {
                        (-d_sq.sqrt() / temperature).exp()
                    } else {
                        0.0
                    }
                }
                StepKernel::Flat { range_sq } => {
                    if d_sq <= range_sq {
                        1.0
                    } else {
                        0.0
                    }
                }
            }
        })
        .collect();
    let total: f64 = weights.iter().sum();
    if total > 0.0 {
        for w in &mut weights {
            *w /= total;
        }
    }
    Ok(weights)
}

/// Runs the process to convergence (or the iteration cap) and extracts
/// clusters from the frozen positions.
pub fn run_sup(
    points: &PointSet,
    spec: &InfluenceSpec,
    opts: &SupOptions,
) -> Result<SupResult, SupError> {
    spec.validate()?;
    opts.validate()?;

    let n = points.n_points();
    let dim = points.dim();
    let mut state = points.clone();
    // The non-blurring mode keeps attracting toward the initial
    // positions; the blurring mode attracts toward the evolving state.
    let initial = match spec.reference {
        Reference::Initial => Some(points.clone()),
        Reference::Current => None,
    };
    let mut next = vec![0.0; n * dim];
    let mut trajectory = opts.record_trajectory.then(|| vec![state.clone()]);
    let mut converged = false;
    let mut iterations_run = 0;

    for t in 0..opts.max_iterations {
        {
            let origin = initial.as_ref().unwrap_or(&state);
            step_into(&state, origin, t, &spec.family, &mut next, opts.parallel);
        }
        let mut max_disp_sq = 0.0f64;
        for (i, chunk) in next.chunks_exact(dim).enumerate() {
            let d_sq = squared_euclidean(state.row(i), chunk);
            if d_sq > max_disp_sq {
                max_disp_sq = d_sq;
            }
        }
        state.data_mut().copy_from_slice(&next);
        iterations_run = t + 1;
        if let Some(snapshots) = trajectory.as_mut() {
            if iterations_run % opts.snapshot_stride == 0 {
                snapshots.push(state.clone());
            }
        }
        if max_disp_sq.sqrt() <= opts.convergence_eps {
            converged = true;
            break;
        }
    }

    if let Some(snapshots) = trajectory.as_mut() {
        if iterations_run % opts.snapshot_stride != 0 {
            snapshots.push(state.clone());
        }
    }

    let (labels, representatives) = extract_clusters(&state, opts.merge_tol)?;
    Ok(SupResult {
        final_positions: state,
        labels,
        representatives,
        iterations_run,
        converged,
        trajectory,
    })
}

/// Groups positions by single-linkage closure at `merge_tol`: two
/// positions share a cluster when a chain of hops, each no longer than
/// `merge_tol`, connects them. Labels are numbered by first occurrence;
/// the representative is the centroid of each cluster's positions.
pub fn extract_clusters(
    positions: &PointSet,
    merge_tol: f64,
) -> Result<(Vec<usize>, PointSet), SupError> {
    if merge_tol.is_nan() || merge_tol <= 0.0 {
        return Err(SupError::config("merge_tol must be positive"));
    }
    let n = positions.n_points();
    let tol_sq = merge_tol * merge_tol;
    let mut parent: Vec<usize> = (0..n).collect();

    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }

    for i in 0..n {
        let row_i = positions.row(i);
        for j in (i + 1)..n {
            if squared_euclidean(row_i, positions.row(j)) <= tol_sq {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    // Anchor at the smaller index so labels follow first occurrence.
                    let (lo, hi) = if ri < rj { (ri, rj) } else { (rj, ri) };
                    parent[hi] = lo;
                }
            }
        }
    }

    let mut labels = vec![usize::MAX; n];
    let mut members: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        let root = find(&mut parent, i);
        if labels[root] == usize::MAX {
            labels[root] = members.len();
            members.push(Vec::new());
        }
        labels[i] = labels[root];
        members[labels[i]].push(i);
    }

    let mut reps = Vec::with_capacity(members.len() * positions.dim());
    for group in &members {
        reps.extend(positions.centroid_of(group));
    }
    let representatives = PointSet::from_flat(reps, positions.dim())?;
    Ok((labels, representatives))
}
