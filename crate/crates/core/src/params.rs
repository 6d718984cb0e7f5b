//! Data-driven selection of the influential range `r` — frequency
//! polygon of pairwise distances, valley detection, percentile fallback —
//! plus temperature-schedule construction.

use crate::error::SupError;
use crate::influence::TemperatureSchedule;
use crate::point::{euclidean, PointSet};

/// Percentile used when valley detection comes up empty. A low
/// percentile keeps the influential range conservative: few pairs
/// fall inside it, so the update cannot distort large-scale structure.
pub const DEFAULT_FALLBACK_Q: f64 = 10.0;
/// Minimum valley prominence, as a fraction of the tallest bin.
pub const DEFAULT_MIN_PROMINENCE: f64 = 0.05;
/// Minimum rise-over-floor ratio for a valley to be trusted by
/// `select_r`. Separates genuine between-scale gaps (deep dips, low
/// floor) from two artifacts that plague heavy-noise distance
/// histograms: shallow saddles between two tall same-scale modes and
/// jitter dips on the slope of a single mode.
pub const DEFAULT_MIN_CONTRAST: f64 = 0.25;

/// All N(N−1)/2 Euclidean distances for unordered pairs, in
/// lexicographic (i, j) order with i < j.
pub fn pairwise_distances(points: &PointSet) -> Result<Vec<f64>, SupError> {
    let n = points.n_points();
    if n < 2 {
        return Err(SupError::usage(
            "pairwise distances need at least two points",
        ));
    }
    let mut out = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        let row_i = points.row(i);
        for j in (i + 1)..n {
            out.push(euclidean(row_i, points.row(j)));
        }
    }
    Ok(out)
}

/// Rice-rule-style default: ceil(2·cbrt(#distances)).
pub fn default_bin_count(n_distances: usize) -> usize {
    (2.0 * (n_distances as f64).cbrt()).ceil().max(1.0) as usize
}

/// Binned estimate of the pairwise-distance density.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyPolygon {
    /// Bin centers, ascending with constant spacing `bin_width`.
    pub bin_midpoints: Vec<f64>,
    /// Distances falling in each bin; sums to the input length.
    pub counts: Vec<usize>,
    pub bin_width: f64,
}

impl FrequencyPolygon {
    pub fn n_bins(&self) -> usize {
        self.counts.len()
    }

    pub fn max_count(&self) -> usize {
        self.counts.iter().copied().max().unwrap_or(0)
    }
}

/// Equal-width bins spanning [0, max(distances)]; the top edge is
/// inclusive so the maximum lands in the last bin.
pub fn frequency_polygon(distances: &[f64], n_bins: usize) -> Result<FrequencyPolygon, SupError> {
    if distances.is_empty() {
        return Err(SupError::usage("no distances to bin"));
    }
    if n_bins == 0 {
        return Err(SupError::config("bin count must be positive"));
    }
    let mut max = 0.0f64;
    for &d in distances {
        if !d.is_finite() || d < 0.0 {
            return Err(SupError::data("distances must be finite and nonnegative"));
        }
        if d > max {
            max = d;
        }
    }
    if max == 0.0 {
        return Err(SupError::data(
            "all pairwise distances are zero; nothing to bin",
        ));
    }
    let bin_width = max / n_bins as f64;
    let mut counts = vec![0usize; n_bins];
    for &d in distances {
        let idx = ((d / bin_width) as usize).min(n_bins - 1);
        counts[idx] += 1;
    }
    let bin_midpoints = (0..n_bins)
        .map(|i| (i as f64 + 0.5) * bin_width)
        .collect();
    Ok(FrequencyPolygon {
        bin_midpoints,
        counts,
        bin_width,
    })
}

/// One detected valley of the polygon.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Valley {
    /// Midpoint of the valley bin (leftmost bin when the floor is flat).
    pub distance: f64,
    /// Prominence: the smaller of the two rises to the enclosing
    /// higher-count regions.
    pub sharpness: f64,
    /// Index of the valley bin.
    pub bin: usize,
}

/// Valleys and peaks of a frequency polygon.
#[derive(Debug, Clone, PartialEq)]
pub struct ValleyReport {
    /// Sorted by distance.
    pub valleys: Vec<Valley>,
    /// Distances of local maxima (plateaus reported at their leftmost
    /// bin; boundary maxima included).
    pub peaks: Vec<f64>,
}

/// Collapses equal-count runs so neighbors always differ strictly.
fn run_length(counts: &[usize]) -> Vec<(usize, usize)> {
    let mut segments: Vec<(usize, usize)> = Vec::new(); // (value, start bin)
    for (i, &c) in counts.iter().enumerate() {
        match segments.last() {
            Some(&(v, _)) if v == c => {}
            _ => segments.push((c, i)),
        }
    }
    segments
}

/// Interior local minima of the count sequence, kept when their
/// prominence reaches `min_prominence · max(counts)`.
///
/// Prominence of a valley at count v: walk outward on each side,
/// tracking the highest count seen, until a count drops strictly below
/// v (or the boundary); the side's rise is that maximum minus v, and
/// the prominence is the smaller of the two rises.
pub fn find_valleys(polygon: &FrequencyPolygon, min_prominence: f64) -> ValleyReport {
    let segments = run_length(&polygon.counts);
    let k = segments.len();
    let threshold = min_prominence.max(0.0) * polygon.max_count() as f64;

    let mut peaks = Vec::new();
    let mut valleys = Vec::new();
    for s in 0..k {
        let (v, start) = segments[s];
        let left_higher = s > 0 && segments[s - 1].0 > v;
        let right_higher = s + 1 < k && segments[s + 1].0 > v;
        let left_lower = s > 0 && segments[s - 1].0 < v;
        let right_lower = s + 1 < k && segments[s + 1].0 < v;

        if (s == 0 || left_lower) && (s + 1 == k || right_lower) {
            peaks.push(polygon.bin_midpoints[start]);
        }

        if left_higher && right_higher {
            let side_rise = |dir: isize| -> f64 {
                let mut best = 0usize;
                let mut idx = s as isize + dir;
                while idx >= 0 && (idx as usize) < k {
                    let value = segments[idx as usize].0;
                    if value < v {
                        break;
                    }
                    if value > best {
                        best = value;
                    }
                    idx += dir;
                }
                (best - v) as f64
            };
            let sharpness = side_rise(-1).min(side_rise(1));
            if sharpness >= threshold && sharpness > 0.0 {
                valleys.push(Valley {
                    distance: polygon.bin_midpoints[start],
                    sharpness,
                    bin: start,
                });
            }
        }
    }
    ValleyReport { valleys, peaks }
}

/// q-th percentile (q strictly between 0 and 100) by linear
/// interpolation between order statistics.
pub fn percentile_r(distances: &[f64], q: f64) -> Result<f64, SupError> {
    if distances.is_empty() {
        return Err(SupError::usage("no distances for percentile"));
    }
    if !(q > 0.0 && q < 100.0) {
        return Err(SupError::usage(
            "percentile must lie strictly between 0 and 100",
        ));
    }
    let mut sorted = distances.to_vec();
    sorted.sort_unstable_by(f64::total_cmp);
    let h = (sorted.len() - 1) as f64 * q / 100.0;
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    let frac = h - lo as f64;
    Ok(sorted[lo] + frac * (sorted[hi] - sorted[lo]))
}

/// Which qualifying valley to take when the polygon offers several.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ValleyChoice {
    /// The smallest qualifying distance. A small r keeps the set of
    /// point pairs inside the influential range small, so this is the
    /// most conservative choice and the default.
    #[default]
    Leftmost,
    /// The greatest sharpness score, ties going to the smaller distance.
    Sharpest,
}

/// How the influential range should be chosen from the data.
#[derive(Debug, Clone, PartialEq)]
pub enum RPolicy {
    /// A qualifying frequency-polygon valley; falls back to the
    /// percentile when no valley qualifies. Valleys must clear both
    /// the prominence threshold (fraction of the tallest bin) and the
    /// contrast threshold (rise relative to the valley's own floor
    /// count).
    Valley {
        n_bins: Option<usize>,
        min_prominence: f64,
        min_contrast: f64,
        fallback_q: f64,
        choice: ValleyChoice,
    },
    /// Fixed percentile of the pairwise distances.
    Percentile { q: f64 },
}

impl Default for RPolicy {
    fn default() -> Self {
        RPolicy::Valley {
            n_bins: None,
            min_prominence: DEFAULT_MIN_PROMINENCE,
            min_contrast: DEFAULT_MIN_CONTRAST,
            fallback_q: DEFAULT_FALLBACK_Q,
            choice: ValleyChoice::Leftmost,
        }
    }
}

/// Where a selected range came from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RSource {
    Valley { sharpness: f64 },
    Percentile { q: f64, fallback: bool },
}

/// A selected influential range plus everything needed to report it.
#[derive(Debug, Clone, PartialEq)]
pub struct RSelection {
    pub r: f64,
    pub source: RSource,
    pub polygon: FrequencyPolygon,
    pub report: ValleyReport,
}

/// Selects r from the data under `policy`.
pub fn select_r(points: &PointSet, policy: &RPolicy) -> Result<RSelection, SupError> {
    let distances = pairwise_distances(points)?;
    match *policy {
        RPolicy::Valley {
            n_bins,
            min_prominence,
            min_contrast,
            fallback_q,
            choice,
        } => {
            let bins = n_bins.unwrap_or_else(|| default_bin_count(distances.len()));
            let polygon = frequency_polygon(&distances, bins)?;
            let report = find_valleys(&polygon, min_prominence);
            let candidates = report.valleys.iter().copied().filter(|v| {
                let floor = polygon.counts[v.bin].max(1) as f64;
                v.distance > 0.0 && v.sharpness >= min_contrast * floor
            });
            let best = match choice {
                // valleys arrive in ascending bin order
                ValleyChoice::Leftmost => candidates.min_by(|a, b| a.distance.total_cmp(&b.distance)),
                ValleyChoice::Sharpest => candidates.max_by(|a, b| {
                    a.sharpness
                        .total_cmp(&b.sharpness)
                        // sharper wins; equal sharpness goes to the
                        // smaller distance
                        .then(b.distance.total_cmp(&a.distance))
                }),
            };
            match best {
                Some(valley) => Ok(RSelection {
                    r: valley.distance,
                    source: RSource::Valley {
                        sharpness: valley.sharpness,
                    },
                    polygon,
                    report,
                }),
                None => {
                    let r = percentile_r(&distances, fallback_q)?;
                    Ok(RSelection {
                        r,
                        source: RSource::Percentile {
                            q: fallback_q,
                            fallback: true,
                        },
                        polygon,
                        report,
                    })
                }
            }
        }
        RPolicy::Percentile { q } => {
            let r = percentile_r(&distances, q)?;
            let polygon = frequency_polygon(&distances, default_bin_count(distances.len()))?;
            let report = find_valleys(&polygon, DEFAULT_MIN_PROMINENCE);
            Ok(RSelection {
                r,
                source: RSource::Percentile { q, fallback: false },
                polygon,
                report,
            })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScheduleKind {
    Static,
    Dynamic,
}

/// Builds a temperature schedule with the recommended defaults
/// (static T = r/5; dynamic s = 1/50, so T(t) = r·(1/20 + t·s)).
///
/// Returns any non-fatal warnings alongside the schedule: a heating
/// rate above 1/50 is allowed but flagged, since the slow-heating
/// guarantee no longer applies.
pub fn make_schedule(
    kind: ScheduleKind,
    r: f64,
    static_t: Option<f64>,
    s: Option<f64>,
) -> Result<(TemperatureSchedule, Vec<String>), SupError> {
    if r <= 0.0 || !r.is_finite() {
        return Err(SupError::config("influential range must be positive"));
    }
    let mut warnings = Vec::new();
    let schedule = match kind {
        ScheduleKind::Static => {
            let temperature = static_t.unwrap_or(r / TemperatureSchedule::STATIC_DIVISOR);
            if temperature <= 0.0 || !temperature.is_finite() {
                return Err(SupError::config("temperature must be positive"));
            }
            TemperatureSchedule::Static { temperature }
        }
        ScheduleKind::Dynamic => {
            let heating_rate = s.unwrap_or(TemperatureSchedule::MAX_HEATING_RATE);
            if heating_rate <= 0.0 || !heating_rate.is_finite() {
                return Err(SupError::config("heating rate must be positive"));
            }
            if heating_rate > TemperatureSchedule::MAX_HEATING_RATE {
                warnings.push(format!(
                    "heating rate {heating_rate} exceeds the recommended bound {}; \
                     slow-heating behavior is not guaranteed",
                    TemperatureSchedule::MAX_HEATING_RATE
                ));
            }
            TemperatureSchedule::Dynamic {
                base_range: r,
                heating_rate,
            }
        }
    };
    Ok((schedule, warnings))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn pairwise_three_four_five() {
        let points = PointSet::from_rows(&[vec![0.0, 0.0], vec![3.0, 4.0]]).unwrap();
        assert_eq!(pairwise_distances(&points).unwrap(), vec![5.0]);
    }

    #[test]
    fn pairwise_order_is_lexicographic() {
        let points = PointSet::from_flat(vec![0.0, 1.0, 2.0], 1).unwrap();
        // pairs (0,1), (0,2), (1,2)
        assert_eq!(pairwise_distances(&points).unwrap(), vec![1.0, 2.0, 1.0]);
    }

    #[test]
    fn pairwise_count_matches_combinations() {
        let rows: Vec<Vec<f64>> = (0..10)
            .map(|i| vec![(i as f64 * 0.73).sin(), (i as f64 * 1.31).cos()])
            .collect();
        let points = PointSet::from_rows(&rows).unwrap();
        let d = pairwise_distances(&points).unwrap();
        assert_eq!(d.len(), 45);
        assert!(d.iter().all(|&x| x >= 0.0));
    }

    #[test]
    fn pairwise_rejects_single_point() {
        let points = PointSet::from_flat(vec![1.0], 1).unwrap();
        assert!(matches!(
            pairwise_distances(&points),
            Err(SupError::Usage(_))
        ));
    }

    #[test]
    fn polygon_single_value_fills_one_bin() {
        let polygon = frequency_polygon(&[1.0; 7], 10).unwrap();
        assert_eq!(polygon.counts.iter().sum::<usize>(), 7);
        assert_eq!(polygon.counts.iter().filter(|&&c| c > 0).count(), 1);
        assert_eq!(polygon.counts[9], 7); // the max lands in the top bin
    }

    #[test]
    fn polygon_midpoints_are_evenly_spaced() {
        let polygon = frequency_polygon(&[0.4, 1.0, 2.0, 3.0, 4.0], 8).unwrap();
        assert_eq!(polygon.n_bins(), 8);
        assert_relative_eq!(polygon.bin_width, 0.5);
        for w in polygon.bin_midpoints.windows(2) {
            assert_relative_eq!(w[1] - w[0], polygon.bin_width, max_relative = 1e-12);
        }
        assert_relative_eq!(polygon.bin_midpoints[0], 0.25);
    }

    #[test]
    fn polygon_rejects_degenerate_input() {
        assert!(frequency_polygon(&[], 4).is_err());
        assert!(frequency_polygon(&[0.0, 0.0], 4).is_err());
        assert!(frequency_polygon(&[1.0], 0).is_err());
    }

    fn polygon_from_counts(counts: &[usize]) -> FrequencyPolygon {
        FrequencyPolygon {
            bin_midpoints: (0..counts.len()).map(|i| i as f64 + 0.5).collect(),
            counts: counts.to_vec(),
            bin_width: 1.0,
        }
    }

    #[test]
    fn monotone_counts_have_no_valley() {
        let polygon = polygon_from_counts(&[9, 7, 5, 3, 1]);
        assert!(find_valleys(&polygon, 0.0).valleys.is_empty());
    }

    #[test]
    fn dip_between_two_peaks_is_a_valley() {
        let polygon = polygon_from_counts(&[5, 1, 6]);
        let report = find_valleys(&polygon, 0.0);
        assert_eq!(report.valleys.len(), 1);
        assert_relative_eq!(report.valleys[0].distance, 1.5);
        assert_relative_eq!(report.valleys[0].sharpness, 4.0); // min(5,6) − 1
        assert_eq!(report.peaks, vec![0.5, 2.5]);
    }

    #[test]
    fn flat_valley_floor_reports_leftmost_bin() {
        let polygon = polygon_from_counts(&[5, 2, 2, 2, 6]);
        let report = find_valleys(&polygon, 0.0);
        assert_eq!(report.valleys.len(), 1);
        assert_eq!(report.valleys[0].bin, 1);
    }

    #[test]
    fn prominence_threshold_filters_shallow_dips() {
        // a one-count wiggle next to a tall peak
        let polygon = polygon_from_counts(&[20, 19, 20, 3, 18]);
        let strict = find_valleys(&polygon, 0.1); // needs sharpness ≥ 2
        assert_eq!(strict.valleys.len(), 1);
        assert_eq!(strict.valleys[0].bin, 3);
        let lax = find_valleys(&polygon, 0.0);
        assert_eq!(lax.valleys.len(), 2);
    }

    #[test]
    fn prominence_scans_past_lower_cols() {
        // the region enclosing the first dip ends where counts drop
        // below its floor, so the tall right peak is out of reach
        let polygon = polygon_from_counts(&[6, 3, 4, 1, 9]);
        let report = find_valleys(&polygon, 0.0);
        let first = report.valleys.iter().find(|v| v.bin == 1).unwrap();
        assert_relative_eq!(first.sharpness, 1.0); // min(6, 4) − 3
        let second = report.valleys.iter().find(|v| v.bin == 3).unwrap();
        assert_relative_eq!(second.sharpness, 5.0); // min(6, 9) − 1
    }

    #[test]
    fn percentile_median_of_five() {
        assert_relative_eq!(percentile_r(&[1.0, 2.0, 3.0, 4.0, 5.0], 50.0).unwrap(), 3.0);
        assert_relative_eq!(percentile_r(&[5.0, 1.0, 4.0, 2.0, 3.0], 25.0).unwrap(), 2.0);
    }

    #[test]
    fn percentile_approaches_extremes_continuously() {
        let data = [1.0, 2.0, 3.0, 4.0, 5.0];
        assert!(percentile_r(&data, 99.999).unwrap() > 4.999);
        assert!(percentile_r(&data, 0.001).unwrap() < 1.001);
        assert!(percentile_r(&data, 0.0).is_err());
        assert!(percentile_r(&data, 100.0).is_err());
    }

    #[test]
    fn percentile_interpolates_between_order_statistics() {
        // h = (4−1)·0.5 = 1.5 → halfway between the 2nd and 3rd values
        assert_relative_eq!(percentile_r(&[10.0, 20.0, 30.0, 40.0], 50.0).unwrap(), 25.0);
    }

    #[test]
    fn default_bins_follow_cube_root_rule() {
        assert_eq!(default_bin_count(351), 15); // ceil(2·351^(1/3))
        assert_eq!(default_bin_count(1), 2);
    }

    #[test]
    fn static_schedule_defaults_to_one_fifth() {
        let (schedule, warnings) = make_schedule(ScheduleKind::Static, 1.0, None, None).unwrap();
        assert!(warnings.is_empty());
        assert_relative_eq!(schedule.temperature(0), 0.2);
        assert_relative_eq!(schedule.temperature(999), 0.2);
        assert_relative_eq!(
            (-1.0f64 / schedule.temperature(0)).exp(),
            0.006737946999085467,
            max_relative = 1e-15
        );
    }

    #[test]
    fn dynamic_schedule_matches_formula() {
        let (schedule, warnings) = make_schedule(ScheduleKind::Dynamic, 1.0, None, None).unwrap();
        assert!(warnings.is_empty());
        assert_relative_eq!(schedule.temperature(0), 0.05); // r/20
        let (schedule, _) = make_schedule(ScheduleKind::Dynamic, 2.0, None, Some(1.0 / 50.0)).unwrap();
        assert_relative_eq!(schedule.temperature(10), 0.5);
    }

    #[test]
    fn fast_heating_warns_but_constructs() {
        let (schedule, warnings) =
            make_schedule(ScheduleKind::Dynamic, 1.0, None, Some(0.1)).unwrap();
        assert_eq!(warnings.len(), 1);
        assert!(warnings[0].contains("heating rate"));
        assert!(schedule.temperature(1) > schedule.temperature(0));
    }

    #[test]
    fn schedule_rejects_bad_parameters() {
        assert!(make_schedule(ScheduleKind::Static, 0.0, None, None).is_err());
        assert!(make_schedule(ScheduleKind::Static, 1.0, Some(-1.0), None).is_err());
        assert!(make_schedule(ScheduleKind::Dynamic, 1.0, None, Some(0.0)).is_err());
    }

    #[test]
    fn select_r_finds_the_gap_between_two_blobs() {
        // two tight 1-D blobs: within-blob distances ≪ 1, across ≈ 10
        let mut values = Vec::new();
        for i in 0..20 {
            values.push(i as f64 * 0.01);
            values.push(10.0 + i as f64 * 0.01);
        }
        let points = PointSet::from_flat(values, 1).unwrap();
        let selection = select_r(&points, &RPolicy::default()).unwrap();
        assert!(matches!(selection.source, RSource::Valley { .. }));
        assert!(
            selection.r > 0.5 && selection.r < 9.5,
            "r = {} should fall in the gap",
            selection.r
        );
    }

    #[test]
    fn select_r_falls_back_to_percentile() {
        // evenly spaced points: the distance polygon is a monotone
        // staircase with no qualifying interior valley at these bins
        let points = PointSet::from_flat((0..6).map(|i| i as f64).collect(), 1).unwrap();
        let policy = RPolicy::Valley {
            n_bins: Some(5),
            min_prominence: 0.5,
            min_contrast: DEFAULT_MIN_CONTRAST,
            fallback_q: 35.0,
            choice: ValleyChoice::Leftmost,
        };
        let selection = select_r(&points, &policy).unwrap();
        assert!(matches!(
            selection.source,
            RSource::Percentile { fallback: true, .. }
        ));
        let distances = pairwise_distances(&points).unwrap();
        assert_relative_eq!(selection.r, percentile_r(&distances, 35.0).unwrap());
    }

    #[test]
    fn valley_choice_separates_leftmost_from_sharpest() {
        // three 1-D blobs with gaps of different prominence: the first
        // valley is shallower than the second
        let mut values = Vec::new();
        for i in 0..6 {
            values.push(i as f64 * 0.01);
        }
        for i in 0..12 {
            values.push(3.0 + i as f64 * 0.01);
        }
        for i in 0..20 {
            values.push(9.0 + i as f64 * 0.01);
        }
        let points = PointSet::from_flat(values, 1).unwrap();
        let leftmost = select_r(&points, &RPolicy::default()).unwrap();
        let sharpest = select_r(
            &points,
            &RPolicy::Valley {
                n_bins: None,
                min_prominence: DEFAULT_MIN_PROMINENCE,
                min_contrast: DEFAULT_MIN_CONTRAST,
                fallback_q: DEFAULT_FALLBACK_Q,
                choice: ValleyChoice::Sharpest,
            },
        )
        .unwrap();
        assert!(leftmost.r <= sharpest.r);
        let (RSource::Valley { sharpness: s_l }, RSource::Valley { sharpness: s_s }) =
            (leftmost.source, sharpest.source)
        else {
            panic!("both policies should land on valleys");
        };
        assert!(s_s >= s_l);
    }

    #[test]
    fn select_r_percentile_policy_is_direct() {
        let points = PointSet::from_flat((0..6).map(|i| i as f64).collect(), 1).unwrap();
        let selection = select_r(&points, &RPolicy::Percentile { q: 50.0 }).unwrap();
        let distances = pairwise_distances(&points).unwrap();
        assert_relative_eq!(selection.r, percentile_r(&distances, 50.0).unwrap());
    }
}
