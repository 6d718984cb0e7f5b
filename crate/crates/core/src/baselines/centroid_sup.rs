//! Centroid-linkage agglomeration expressed as a self-updating process:
//! every iteration uses a flat influence whose radius is the smallest
//! nonzero distance between current group positions, so exactly the
//! groups at that distance collapse onto their joint average.

use crate::error::SupError;
use crate::point::{euclidean, PointSet};

/// One merge: two groups (original point ids) joining at `distance`
/// into a combined group positioned at `centroid`.
#[derive(Debug, Clone, PartialEq)]
pub struct MergeEvent {
    pub group_a: Vec<usize>,
    pub group_b: Vec<usize>,
    /// The iteration's influential range r(t) (0 for pre-merged
    /// duplicates).
    pub distance: f64,
    pub centroid: Vec<f64>,
}

/// The full merge sequence down to a single group (N−1 events).
#[derive(Debug, Clone, PartialEq)]
pub struct MergeTree {
    pub n_points: usize,
    pub events: Vec<MergeEvent>,
}

impl MergeTree {
    /// Merge distances in event order; non-decreasing is not guaranteed
    /// in general, but each iteration's distance is that iteration's
    /// minimal nonzero group separation.
    pub fn merge_distances(&self) -> Vec<f64> {
        self.events.iter().map(|e| e.distance).collect()
    }

    /// Labels after replaying events until k groups remain, 0-based and
    /// ordered by first occurrence.
    pub fn cut(&self, k: usize) -> Result<Vec<usize>, SupError> {
        let n = self.n_points;
        if k == 0 || k > n {
            return Err(SupError::usage("cut level must satisfy 1 <= k <= N"));
        }
        let mut parent: Vec<usize> = (0..n).collect();
        for event in &self.events[..n - k] {
            // fold order guarantees group_a's slot is the smaller one
            parent[event.group_b[0]] = event.group_a[0];
        }
        let root = |mut x: usize| {
            let parent = &parent;
            while parent[x] != x {
                x = parent[x];
            }
            x
        };
        let mut labels = vec![usize::MAX; n];
        let mut next = 0;
        for i in 0..n {
            let r = root(i);
            if labels[r] == usize::MAX {
                labels[r] = next;
                next += 1;
            }
            labels[i] = labels[r];
        }
        Ok(labels)
    }
}

struct Group {
    /// Original point ids, ascending; the first is the slot.
    members: Vec<usize>,
    position: Vec<f64>,
}

/// Merges `next` into `acc`, recording the event.
fn fold(acc: &mut Group, next: Group, distance: f64, events: &mut Vec<MergeEvent>) {
    let (na, nb) = (acc.members.len() as f64, next.members.len() as f64);
    let total = na + nb;
    for (pa, pb) in acc.position.iter_mut().zip(&next.position) {
        *pa = (na * *pa + nb * pb) / total;
    }
    events.push(MergeEvent {
        group_a: acc.members.clone(),
        group_b: next.members.clone(),
        distance,
        centroid: acc.position.clone(),
    });
    acc.members.extend(next.members);
    acc.members.sort_unstable();
}

/// Runs the process to a single group and returns the merge sequence.
///
/// Exact duplicates are pre-merged at distance 0. When several group
/// pairs attain the minimal distance in one iteration, the flat
/// influence merges them all at once: each connected component of the
/// at-distance graph folds together (ascending slot order) at that
/// iteration's r(t).
pub fn centroid_linkage_sup(points: &PointSet) -> Result<MergeTree, SupError> {
    let n = points.n_points();
    if n < 2 {
        return Err(SupError::usage("need at least two points to merge"));
    }
    let mut events = Vec::with_capacity(n - 1);
    let mut groups: Vec<Group> = (0..n)
        .map(|i| Group {
            members: vec![i],
            position: points.row(i).to_vec(),
        })
        .collect();

    // duplicates collapse before the process starts
    let mut deduped: Vec<Group> = Vec::with_capacity(groups.len());
    for group in groups.drain(..) {
        match deduped.iter().position(|g| g.position == group.position) {
            Some(idx) => fold(&mut deduped[idx], group, 0.0, &mut events),
            None => deduped.push(group),
        }
    }
    let mut groups = deduped;

    while groups.len() > 1 {
        let m = groups.len();
        let mut r_t = f64::INFINITY;
        for i in 0..m {
            for j in (i + 1)..m {
                let d = euclidean(&groups[i].position, &groups[j].position);
                if d > 0.0 && d < r_t {
                    r_t = d;
                }
            }
        }
        if !r_t.is_finite() {
            // every remaining position coincides; everything merges
            r_t = 0.0;
        }

        // connected components of the "within r(t)" graph
        let mut comp: Vec<usize> = (0..m).collect();
        let root = |comp: &Vec<usize>, mut x: usize| {
            while comp[x] != x {
                x = comp[x];
            }
            x
        };
        for i in 0..m {
            for j in (i + 1)..m {
                if euclidean(&groups[i].position, &groups[j].position) <= r_t {
                    let (ri, rj) = (root(&comp, i), root(&comp, j));
                    if ri != rj {
                        let (lo, hi) = if ri < rj { (ri, rj) } else { (rj, ri) };
                        comp[hi] = lo;
                    }
                }
            }
        }

        let mut merged: Vec<Group> = Vec::new();
        let mut accumulator: Vec<Option<usize>> = vec![None; m]; // root → index in merged
        for (i, group) in groups.drain(..).enumerate() {
            let r = root(&comp, i);
            match accumulator[r] {
                None => {
                    accumulator[r] = Some(merged.len());
                    merged.push(group);
                }
                Some(idx) => fold(&mut merged[idx], group, r_t, &mut events),
            }
        }
        groups = merged;
    }

    Ok(MergeTree {
        n_points: n,
        events,
    })
}
