//! Synthetic datasets whose groups share one shape in MAD space.
//!
//! * interval dataset: point estimates with identical ±2-unit intervals;
//! * box dataset: medians swept from 1/9 to 9 with quartiles 2 units apart;
//! * violin dataset: one set of normal deviates translated to each group.
//!
//! Group `i` of `n` is centred at MAD coordinate `2i - (n - 1)`, so centres
//! are 2 units apart and symmetric about no change.
//!
//! Randomness comes from ChaCha8 (`rand_chacha`) seeded with
//! `seed_from_u64`, and normal deviates from `rand_distr::StandardNormal`
//! (ziggurat), so a seed fixes the output.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use thiserror::Error;

use crate::ingest::{ExpressionEntry, ExpressionMatrix};
use crate::stats::{
    interval_from_fcz, BoxGroup, FiveNumberSummary, GroupSummary, SampleSet, StatsError,
};
use crate::transform::{mad_inverse, MadValue, TransformError};

pub const INTERVAL_HALF_WIDTH: f64 = 2.0;
pub const DEFAULT_INTERVAL_GROUPS: usize = 7;

/// Box medians run over these MAD coordinates (fold change 1/9 to 9).
pub const BOX_MEDIAN_START: i32 = -8;
pub const BOX_MEDIAN_END: i32 = 8;
pub const BOX_MEDIAN_STEP: i32 = 2;
/// MAD distance between consecutive box boundaries (min, q1, median, q3, max).
pub const BOX_QUANTILE_STEP: f64 = 2.0;

pub const DEFAULT_VIOLIN_GROUPS: usize = 5;
pub const DEFAULT_VIOLIN_SAMPLES: usize = 200;
pub const DEFAULT_VIOLIN_SIGMA: f64 = 1.0;
pub const MIN_VIOLIN_SAMPLES: usize = 50;

pub const SIMULATED_GENE: &str = "simulated";

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error("need at least {min} groups, got {got}")]
    TooFewGroups { min: usize, got: usize },
    #[error("need at least {MIN_VIOLIN_SAMPLES} samples per group, got {0}")]
    TooFewSamples(usize),
    #[error("sigma must be finite and > 0, got {0}")]
    BadSigma(f64),
    #[error(transparent)]
    Stats(#[from] StatsError),
    #[error(transparent)]
    Transform(#[from] TransformError),
}

/// MAD-space centres of `group_count` groups: `-(n-1), -(n-3), …, n-1`.
pub fn group_centers(group_count: usize) -> Vec<f64> {
    let n = group_count as f64;
    (0..group_count)
        .map(|i| 2.0 * i as f64 - (n - 1.0))
        .collect()
}

fn group_label(i: usize) -> String {
    format!("g{}", i + 1)
}

/// Point estimates at [`group_centers`], each with an interval reaching
/// [`INTERVAL_HALF_WIDTH`] units either side.
///
/// Nothing here is random; `seed` is accepted so every simulator has the same
/// calling convention.
pub fn simulate_interval_dataset(
    group_count: usize,
    _seed: u64,
) -> Result<Vec<GroupSummary>, SimError> {
    if group_count < 2 {
        return Err(SimError::TooFewGroups {
            min: 2,
            got: group_count,
        });
    }
    group_centers(group_count)
        .into_iter()
        .enumerate()
        .map(|(i, c)| {
            let point = mad_inverse(MadValue::new(c)?);
            let (lower, upper) = interval_from_fcz(point, INTERVAL_HALF_WIDTH)?;
            Ok(GroupSummary::new(
                group_label(i),
                point,
                lower,
                upper,
                "confidence interval",
            )?)
        })
        .collect()
}

/// Five-number summaries with medians at MAD -8, -6, …, 8 and every boundary
/// 2 units from its neighbour. Deterministic; `seed` is unused.
pub fn simulate_boxplot_dataset(_seed: u64) -> Vec<FiveNumberSummary> {
    let at = |t: f64| mad_inverse(MadValue::new(t).expect("finite sweep coordinate"));
    (BOX_MEDIAN_START..=BOX_MEDIAN_END)
        .step_by(BOX_MEDIAN_STEP as usize)
        .map(|m| {
            let m = m as f64;
            let s = BOX_QUANTILE_STEP;
            FiveNumberSummary {
                min: at(m - 2.0 * s),
                q1: at(m - s),
                median: at(m),
                q3: at(m + s),
                max: at(m + 2.0 * s),
            }
        })
        .collect()
}

/// [`simulate_boxplot_dataset`] with `g1…gN` labels.
pub fn simulate_box_groups(seed: u64) -> Vec<BoxGroup> {
    simulate_boxplot_dataset(seed)
        .into_iter()
        .enumerate()
        .map(|(i, summary)| BoxGroup {
            label: group_label(i),
            summary,
        })
        .collect()
}

/// `samples_per_group` deviates with sample standard deviation exactly
/// `sigma_fcz` (after standardization), added to each group centre and mapped
/// back to fold changes. Every group reuses the same deviates.
pub fn simulate_violin_dataset(
    group_count: usize,
    samples_per_group: usize,
    sigma_fcz: f64,
    seed: u64,
) -> Result<ExpressionMatrix, SimError> {
    if group_count < 1 {
        return Err(SimError::TooFewGroups {
            min: 1,
            got: group_count,
        });
    }
    if samples_per_group < MIN_VIOLIN_SAMPLES {
        return Err(SimError::TooFewSamples(samples_per_group));
    }
    if !(sigma_fcz > 0.0 && sigma_fcz.is_finite()) {
        return Err(SimError::BadSigma(sigma_fcz));
    }

    let deviates = standardized_normals(samples_per_group, seed);
    let entries = group_centers(group_count)
        .into_iter()
        .enumerate()
        .map(|(i, center)| {
            let values = deviates
                .iter()
                .map(|z| Ok(mad_inverse(MadValue::new(center + sigma_fcz * z)?).get()))
                .collect::<Result<Vec<f64>, SimError>>()?;
            let group = group_label(i);
            Ok(ExpressionEntry {
                gene: SIMULATED_GENE.to_string(),
                samples: SampleSet::new(format!("{SIMULATED_GENE}:{group}"), values)?,
                group,
            })
        })
        .collect::<Result<Vec<_>, SimError>>()?;
    Ok(ExpressionMatrix { entries })
}

/// `n` standard normal draws rescaled to sample mean 0 and sample sd 1.
fn standardized_normals(n: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let raw: Vec<f64> = (0..n).map(|_| StandardNormal.sample(&mut rng)).collect();
    let mean = raw.iter().sum::<f64>() / n as f64;
    let sd = (raw.iter().map(|z| (z - mean).powi(2)).sum::<f64>() / (n - 1) as f64).sqrt();
    raw.into_iter().map(|z| (z - mean) / sd).collect()
}
