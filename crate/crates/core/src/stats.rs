//! Group statistics in fold-change units: group fold changes, quantile
//! summaries, kernel density estimates and MAD-space intervals.

use thiserror::Error;

use crate::transform::{
    mad_forward, mad_inverse, scale_forward, FoldChange, MadValue, ScaleKind, TransformError,
};

/// Number of grid points in a [`DensityCurve`].
pub const KDE_GRID_POINTS: usize = 256;

/// The density grid extends this many bandwidths past the data on each side.
pub const KDE_GRID_PAD_BANDWIDTHS: f64 = 3.0;

/// Minimum sample count for quantile summaries and density estimates.
pub const MIN_SUMMARY_SAMPLES: usize = 5;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StatsError {
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error(transparent)]
    Transform(#[from] TransformError),
}

/// Positive measurements of one group.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleSet {
    label: String,
    values: Vec<f64>,
}

impl SampleSet {
    pub fn new(label: impl Into<String>, values: Vec<f64>) -> Result<Self, StatsError> {
        let label = label.into();
        if values.is_empty() {
            return Err(StatsError::Degenerate(format!(
                "sample set '{label}' is empty"
            )));
        }
        if let Some(bad) = values.iter().find(|v| !(v.is_finite() && **v > 0.0)) {
            return Err(StatsError::Degenerate(format!(
                "sample set '{label}' contains non-positive or non-finite value {bad}"
            )));
        }
        Ok(SampleSet { label, values })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }
}

/// A point estimate with an interval, all as fold changes.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupSummary {
    pub label: String,
    pub point_fc: FoldChange,
    pub lower_fc: FoldChange,
    pub upper_fc: FoldChange,
    /// e.g. "confidence interval" or "standard deviation".
    pub interval_kind: String,
}

impl GroupSummary {
    pub fn new(
        label: impl Into<String>,
        point_fc: FoldChange,
        lower_fc: FoldChange,
        upper_fc: FoldChange,
        interval_kind: impl Into<String>,
    ) -> Result<Self, StatsError> {
        let label = label.into();
        if !(lower_fc <= point_fc && point_fc <= upper_fc) {
            return Err(StatsError::Degenerate(format!(
                "group '{label}': need lower <= point <= upper, got {lower_fc} / {point_fc} / {upper_fc}"
            )));
        }
        Ok(GroupSummary {
            label,
            point_fc,
            lower_fc,
            upper_fc,
            interval_kind: interval_kind.into(),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FiveNumberSummary {
    pub min: FoldChange,
    pub q1: FoldChange,
    pub median: FoldChange,
    pub q3: FoldChange,
    pub max: FoldChange,
}

impl FiveNumberSummary {
    pub fn as_array(&self) -> [FoldChange; 5] {
        [self.min, self.q1, self.median, self.q3, self.max]
    }

    pub fn is_ordered(&self) -> bool {
        self.as_array().windows(2).all(|w| w[0] <= w[1])
    }
}

/// A labelled five-number summary, one box in a box plot.
#[derive(Debug, Clone, PartialEq)]
pub struct BoxGroup {
    pub label: String,
    pub summary: FiveNumberSummary,
}

/// A density evaluated on an even grid in some scale's transformed space.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityCurve {
    pub scale: ScaleKind,
    pub grid: Vec<f64>,
    pub density: Vec<f64>,
    pub bandwidth: f64,
}

impl DensityCurve {
    /// Trapezoid-rule integral over the grid.
    pub fn integral(&self) -> f64 {
        trapezoid(&self.grid, &self.density)
    }
}

fn trapezoid(x: &[f64], y: &[f64]) -> f64 {
    x.windows(2)
        .zip(y.windows(2))
        .map(|(xs, ys)| (xs[1] - xs[0]) * (ys[0] + ys[1]) / 2.0)
        .sum()
}

/// `mean(experiment) / mean(control)`.
pub fn fold_change_of_groups(
    experiment: &SampleSet,
    control: &SampleSet,
) -> Result<FoldChange, StatsError> {
    let control_mean = control.mean();
    if control_mean <= 0.0 || control_mean.is_nan() {
        return Err(StatsError::Degenerate(format!(
            "control group '{}' has mean {control_mean}",
            control.label()
        )));
    }
    FoldChange::new(experiment.mean() / control_mean).map_err(StatsError::from)
}

/// Linear-interpolation (type 7) quantile of ascending-sorted data.
pub fn quantile_sorted(sorted: &[f64], p: f64) -> f64 {
    debug_assert!(!sorted.is_empty());
    let h = (sorted.len() - 1) as f64 * p;
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

/// Min, quartiles and max of the raw fold changes, with type 7 quantiles.
pub fn quantile_summary(samples: &SampleSet) -> Result<FiveNumberSummary, StatsError> {
    if samples.len() < MIN_SUMMARY_SAMPLES {
        return Err(StatsError::Degenerate(format!(
            "'{}' has {} samples, need at least {MIN_SUMMARY_SAMPLES}",
            samples.label(),
            samples.len()
        )));
    }
    let mut sorted = samples.values().to_vec();
    sorted.sort_by(f64::total_cmp);
    let q = |p: f64| FoldChange::new(quantile_sorted(&sorted, p));
    Ok(FiveNumberSummary {
        min: q(0.0)?,
        q1: q(0.25)?,
        median: q(0.5)?,
        q3: q(0.75)?,
        max: q(1.0)?,
    })
}

/// Silverman's rule of thumb, `0.9 * min(sd, IQR / 1.34) * n^(-1/5)`, falling
/// back to the standard deviation when the IQR is zero.
pub fn silverman_bandwidth(values: &[f64]) -> f64 {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    let sd = var.sqrt();
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let iqr = quantile_sorted(&sorted, 0.75) - quantile_sorted(&sorted, 0.25);
    let spread = if iqr > 0.0 { sd.min(iqr / 1.34) } else { sd };
    0.9 * spread * n.powf(-0.2)
}

/// Gaussian KDE of the samples after mapping them into `scale`'s coordinates.
///
/// Evaluated on [`KDE_GRID_POINTS`] points from `min - 3h` to `max + 3h` and
/// rescaled so the trapezoid integral is 1.
pub fn kde_density(samples: &SampleSet, scale: ScaleKind) -> Result<DensityCurve, StatsError> {
    if samples.len() < MIN_SUMMARY_SAMPLES {
        return Err(StatsError::Degenerate(format!(
            "'{}' has {} samples, need at least {MIN_SUMMARY_SAMPLES} for a density",
            samples.label(),
            samples.len()
        )));
    }
    let coords: Vec<f64> = samples
        .values()
        .iter()
        .map(|&v| FoldChange::new(v).map(|x| scale_forward(scale, x)))
        .collect::<Result<_, _>>()?;

    let bandwidth = silverman_bandwidth(&coords);
    if !(bandwidth > 0.0 && bandwidth.is_finite()) {
        return Err(StatsError::Degenerate(format!(
            "'{}' has zero variance under the {scale} scale",
            samples.label()
        )));
    }

    let (min, max) = coords
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &c| {
            (lo.min(c), hi.max(c))
        });
    let start = min - KDE_GRID_PAD_BANDWIDTHS * bandwidth;
    let end = max + KDE_GRID_PAD_BANDWIDTHS * bandwidth;
    let step = (end - start) / (KDE_GRID_POINTS - 1) as f64;
    let grid: Vec<f64> = (0..KDE_GRID_POINTS)
        .map(|i| start + i as f64 * step)
        .collect();

    let norm = 1.0 / (coords.len() as f64 * bandwidth * (2.0 * std::f64::consts::PI).sqrt());
    let mut density: Vec<f64> = grid
        .iter()
        .map(|&g| {
            norm * coords
                .iter()
                .map(|&c| {
                    let u = (g - c) / bandwidth;
                    (-0.5 * u * u).exp()
                })
                .sum::<f64>()
        })
        .collect();

    let area = trapezoid(&grid, &density);
    density.iter_mut().for_each(|d| *d /= area);

    Ok(DensityCurve {
        scale,
        grid,
        density,
        bandwidth,
    })
}

/// Interval reaching `half_width` fold-change units either side of `point_fc`,
/// i.e. constant width `2 * half_width` in MAD space.
pub fn interval_from_fcz(
    point_fc: FoldChange,
    half_width: f64,
) -> Result<(FoldChange, FoldChange), StatsError> {
    if !(half_width >= 0.0 && half_width.is_finite()) {
        return Err(StatsError::Degenerate(format!(
            "interval half width must be finite and >= 0, got {half_width}"
        )));
    }
    if half_width == 0.0 {
        return Ok((point_fc, point_fc));
    }
    let center = mad_forward(point_fc).get();
    let lower = mad_inverse(MadValue::new(center - half_width)?);
    let upper = mad_inverse(MadValue::new(center + half_width)?);
    Ok((lower, upper))
}
