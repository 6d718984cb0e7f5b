//! Influence functions: how strongly one position pulls another.
//!
//! The engine only ever asks one question: given the distance between a
//! moving copy and a target position at iteration `t`, what is the
//! attraction weight? The families here answer it. Convergence of the
//! whole process is guaranteed whenever the weight function is a PDD:
//! it stays in [0, 1], equals 1 exactly at distance zero, and never
//! increases with distance. [`check_pdd`] probes those conditions
//! numerically.

use crate::error::SupError;

/// Temperature driving the truncated exponential influence.
///
/// Larger temperatures flatten the decay, so distant points inside the
/// range pull almost as hard as close ones and merging is coarser.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TemperatureSchedule {
    /// The same temperature at every iteration.
    Static { temperature: f64 },
    /// Linear heating: `T(t) = base_range * (1/20 + t * heating_rate)`,
    /// starting cold at `base_range / 20` so early iterations only act
    /// locally, then loosening as structure forms.
    Dynamic { base_range: f64, heating_rate: f64 },
}

impl TemperatureSchedule {
    /// Default static choice `T = range / 5`, cold enough that a point
    /// at the edge of the range contributes weight exp(-5) ≈ 0.0067.
    pub const STATIC_DIVISOR: f64 = 5.0;
    /// Default and recommended maximum heating rate.
    pub const MAX_HEATING_RATE: f64 = 1.0 / 50.0;

    pub fn static_default(range: f64) -> Self {
        TemperatureSchedule::Static {
            temperature: range / Self::STATIC_DIVISOR,
        }
    }

    pub fn dynamic_default(range: f64) -> Self {
        TemperatureSchedule::Dynamic {
            base_range: range,
            heating_rate: Self::MAX_HEATING_RATE,
        }
    }

    /// Temperature at iteration `t`.
    pub fn temperature(&self, t: usize) -> f64 {
        match *self {
            TemperatureSchedule::Static { temperature } => temperature,
            TemperatureSchedule::Dynamic {
                base_range,
                heating_rate,
            } => base_range * (1.0 / 20.0 + t as f64 * heating_rate),
        }
    }

    pub fn validate(&self) -> Result<(), SupError> {
        let ok = match *self {
            TemperatureSchedule::Static { temperature } => {
                temperature.is_finite() && temperature > 0.0
            }
            TemperatureSchedule::Dynamic {
                base_range,
                heating_rate,
            } => {
                base_range.is_finite()
                    && base_range > 0.0
                    && heating_rate.is_finite()
                    && heating_rate > 0.0
            }
        };
        if ok {
            Ok(())
        } else {
            Err(SupError::config(
                "temperature parameters must be positive and finite",
            ))
        }
    }
}

/// Which positions the moving copies are attracted to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reference {
    /// Blurring update: copies attract each other at their current
    /// positions. This is the self-updating process proper.
    Current,
    /// Non-blurring update: copies are attracted by the frozen initial
    /// positions only, as in the original mean shift.
    Initial,
}

/// Shape of the weight-versus-distance curve.
#[derive(Debug, Clone, PartialEq)]
pub enum InfluenceFamily {
    /// `exp(-d / T(t))` for `d <= range`, zero beyond.
    TruncatedExponential {
        range: f64,
        schedule: TemperatureSchedule,
    },
    /// 1 for `d <= range`, zero beyond. Not strictly a PDD: it also
    /// takes the value 1 at positive distances.
    FlatIndicator { range: f64 },
}

/// An influence family plus the reference mode the engine updates against.
///
/// The range may be `f64::INFINITY` for an untruncated kernel. The
/// centroid-linkage process, whose range is recomputed every iteration
/// from the current positions, is not expressible as a fixed spec; it
/// lives in [`crate::baselines::centroid_linkage_sup`].
#[derive(Debug, Clone, PartialEq)]
pub struct InfluenceSpec {
    pub family: InfluenceFamily,
    pub reference: Reference,
}

impl InfluenceSpec {
    /// Truncated exponential with an explicit constant temperature.
    pub fn truncated_static(range: f64, temperature: f64) -> Self {
        InfluenceSpec {
            family: InfluenceFamily::TruncatedExponential {
                range,
                schedule: TemperatureSchedule::Static { temperature },
            },
            reference: Reference::Current,
        }
    }

    /// Truncated exponential with an explicit heating rate.
    pub fn truncated_dynamic(range: f64, heating_rate: f64) -> Self {
        InfluenceSpec {
            family: InfluenceFamily::TruncatedExponential {
                range,
                schedule: TemperatureSchedule::Dynamic {
                    base_range: range,
                    heating_rate,
                },
            },
            reference: Reference::Current,
        }
    }

    /// Static SUP with the default temperature `range / 5`.
    pub fn sup_static(range: f64) -> Self {
        Self::truncated_static(range, range / TemperatureSchedule::STATIC_DIVISOR)
    }

    /// Dynamic SUP with the default heating rate 1/50.
    pub fn sup_dynamic(range: f64) -> Self {
        Self::truncated_dynamic(range, TemperatureSchedule::MAX_HEATING_RATE)
    }

    /// Flat indicator influence.
    pub fn flat(range: f64) -> Self {
        InfluenceSpec {
            family: InfluenceFamily::FlatIndicator { range },
            reference: Reference::Current,
        }
    }

    pub fn with_reference(mut self, reference: Reference) -> Self {
        self.reference = reference;
        self
    }

    pub fn range(&self) -> f64 {
        match self.family {
            InfluenceFamily::TruncatedExponential { range, .. } => range,
            InfluenceFamily::FlatIndicator { range } => range,
        }
    }

    pub fn validate(&self) -> Result<(), SupError> {
        let range = self.range();
        if range <= 0.0 || range.is_nan() {
            return Err(SupError::config("influential range must be positive"));
        }
        if let InfluenceFamily::TruncatedExponential { schedule, .. } = &self.family {
            schedule.validate()?;
        }
        Ok(())
    }
}

/// Attraction weight for a pair at distance `d` at iteration `t`.
pub fn influence_weight(d: f64, t: usize, spec: &InfluenceSpec) -> Result<f64, SupError> {
    spec.validate()?;
    if !d.is_finite() || d < 0.0 {
        return Err(SupError::usage("distance must be finite and nonnegative"));
    }
    Ok(weight_unchecked(d, t, &spec.family))
}

#[inline]
pub(crate) fn weight_unchecked(d: f64, t: usize, family: &InfluenceFamily) -> f64 {
    match family {
        InfluenceFamily::TruncatedExponential { range, schedule } => {
            if d <= *range {
                (-d / schedule.temperature(t)).exp()
            } else {
                0.0
            }
        }
        InfluenceFamily::FlatIndicator { range } => {
            if d <= *range {
                1.0
            } else {
                0.0
            }
        }
    }
}

/// Outcome of probing the conditions under which the process provably
/// converges: weights confined to [0, 1], full weight only at distance
/// zero, and no increase with distance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PddReport {
    /// All probed values lie in [0, 1].
    pub in_unit_interval: bool,
    /// Value 1 occurs exactly at distance 0 and nowhere else.
    pub unity_only_at_zero: bool,
    /// Values never increase along the ascending probe distances.
    pub non_increasing: bool,
}

impl PddReport {
    /// True when every probed condition holds.
    pub fn convergence_ready(&self) -> bool {
        self.in_unit_interval && self.unity_only_at_zero && self.non_increasing
    }
}

/// Evaluates the spec's weights on the probe distances at iteration `t`
/// and checks them with [`check_pdd_values`].
///
/// Probe distances must be sorted ascending and nonnegative.
pub fn check_pdd(spec: &InfluenceSpec, t: usize, probes: &[f64]) -> Result<PddReport, SupError> {
    spec.validate()?;
    let values: Vec<f64> = probes
        .iter()
        .map(|&d| weight_unchecked(d, t, &spec.family))
        .collect();
    Ok(check_pdd_values(probes, &values))
}

/// Checks an explicit weight table against the convergence conditions.
///
/// Probe distances must be sorted ascending and nonnegative; `values[i]`
/// is the weight at `probes[i]`.
pub fn check_pdd_values(probes: &[f64], values: &[f64]) -> PddReport {
    assert_eq!(probes.len(), values.len(), "one value per probe distance");
    assert!(
        probes.windows(2).all(|w| w[0] <= w[1]) && probes.iter().all(|&d| d >= 0.0),
        "probe distances must be sorted ascending and nonnegative"
    );
    let in_unit_interval = values.iter().all(|&v| (0.0..=1.0).contains(&v));
    let unity_only_at_zero = probes
        .iter()
        .zip(values)
        .all(|(&d, &v)| if d == 0.0 { v == 1.0 } else { v < 1.0 });
    let non_increasing = values.windows(2).all(|w| w[1] <= w[0]);
    PddReport {
        in_unit_interval,
        unity_only_at_zero,
        non_increasing,
    }
}
