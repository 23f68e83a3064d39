//! Tick placement and fold-change label formatting.
//!
//! Ticks are placed in the scale's transformed space and labelled with the
//! fold change they stand for, so positions follow the data transform while
//! labels follow its inverse. Values at or above 1 always print as the shortest
//! exact decimal; values below 1 print in one of three [`LabelFormat`]s.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::transform::{scale_forward, scale_inverse, FoldChange, ScaleKind, TransformError};

/// Significant digits used for decimal labels below 1 (and for non-integer
/// reciprocals in exponent labels).
pub const DEFAULT_DIGITS: usize = 2;

/// Largest denominator a fraction label may use.
pub const MAX_DENOMINATOR: u64 = 1000;

/// How close `1/x` must be to an integer `d` for `x` to print as `1/d` or `d^-1`.
const RECIPROCAL_SNAP: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TickError {
    #[error(transparent)]
    Transform(#[from] TransformError),
    #[error("invalid tick range [{min}, {max}]: need 0 < min < max")]
    InvalidRange { min: f64, max: f64 },
    #[error("target tick count must be at least 3, got {0}")]
    TooFewTicks(usize),
    #[error("cannot parse label '{0}'")]
    Parse(String),
}

/// Display format for fold changes below 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum LabelFormat {
    /// `0.33`
    Decimal,
    /// `1/3`
    #[default]
    Fraction,
    /// `3^-1`
    Exponent,
}

impl LabelFormat {
    pub const ALL: [LabelFormat; 3] = [
        LabelFormat::Decimal,
        LabelFormat::Fraction,
        LabelFormat::Exponent,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            LabelFormat::Decimal => "decimal",
            LabelFormat::Fraction => "fraction",
            LabelFormat::Exponent => "exponent",
        }
    }
}

impl fmt::Display for LabelFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for LabelFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "decimal" => Ok(LabelFormat::Decimal),
            "fraction" => Ok(LabelFormat::Fraction),
            "exponent" => Ok(LabelFormat::Exponent),
            other => Err(format!(
                "unknown label format '{other}' (expected decimal, fraction or exponent)"
            )),
        }
    }
}

/// Ordered ticks for one axis.
#[derive(Debug, Clone, PartialEq)]
pub struct TickSet {
    /// Strictly increasing coordinates in the scale's transformed space.
    pub positions: Vec<f64>,
    pub labels: Vec<String>,
    pub format: LabelFormat,
    pub scale: ScaleKind,
    pub digits: usize,
}

impl TickSet {
    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, &str)> {
        self.positions
            .iter()
            .copied()
            .zip(self.labels.iter().map(String::as_str))
    }
}

/// Ticks for the fold-change range `[fc_min, fc_max]` under `scale`, labelled
/// with [`DEFAULT_DIGITS`].
pub fn generate_ticks(
    scale: ScaleKind,
    fc_min: FoldChange,
    fc_max: FoldChange,
    target_count: usize,
    format: LabelFormat,
) -> Result<TickSet, TickError> {
    generate_ticks_with(scale, fc_min, fc_max, target_count, format, DEFAULT_DIGITS)
}

/// Ticks for the fold-change range `[fc_min, fc_max]` under `scale`.
///
/// Log2 and MAD-FC ticks sit on integer multiples of a step drawn from
/// 1, 2, 5, 10, 20, ... (the smallest keeping the count within
/// `target_count`). When the range is too narrow to hold two integer
/// coordinates the step drops below 1 (0.5, 0.2, 0.1, ...). Linear ticks are
/// nice numbers on raw fold changes, plus a tick at 1 whenever the range
/// spans it.
pub fn generate_ticks_with(
    scale: ScaleKind,
    fc_min: FoldChange,
    fc_max: FoldChange,
    target_count: usize,
    format: LabelFormat,
    digits: usize,
) -> Result<TickSet, TickError> {
    if fc_min >= fc_max {
        return Err(TickError::InvalidRange {
            min: fc_min.get(),
            max: fc_max.get(),
        });
    }
    if target_count < 3 {
        return Err(TickError::TooFewTicks(target_count));
    }

    let lo = scale_forward(scale, fc_min);
    let hi = scale_forward(scale, fc_max);
    let mut positions = match scale {
        ScaleKind::Log2 | ScaleKind::MadFc => {
            let ticks = stepped_ticks(lo, hi, target_count, 0);
            if ticks.len() >= 2 {
                ticks
            } else {
                nice_ticks(lo, hi, target_count)
            }
        }
        ScaleKind::Linear => nice_ticks(lo, hi, target_count),
    };

    let reference = scale.reference();
    if lo <= reference && reference <= hi && !positions.contains(&reference) {
        let at = positions.partition_point(|&p| p < reference);
        positions.insert(at, reference);
    }

    let labels = positions
        .iter()
        .map(|&p| {
            let x = scale_inverse(scale, p)?;
            Ok(format_label_with(x, format, digits))
        })
        .collect::<Result<Vec<_>, TickError>>()?;

    Ok(TickSet {
        positions,
        labels,
        format,
        scale,
        digits,
    })
}

/// Nice-number ticks (steps 1, 2, 5 times a power of ten) inside `[lo, hi]`,
/// at most `target_count` of them.
pub fn nice_ticks(lo: f64, hi: f64, target_count: usize) -> Vec<f64> {
    if !(lo.is_finite() && hi.is_finite()) || hi < lo || target_count == 0 {
        return Vec::new();
    }
    let span = (hi - lo).max(f64::MIN_POSITIVE);
    let min_exp = (span / target_count as f64).log10().floor() as i32 - 1;
    stepped_ticks(lo, hi, target_count, min_exp)
}

/// Multiples of `m * 10^e` (m in 1, 2, 5; e >= `min_exp`) inside `[lo, hi]`,
/// using the smallest such step that yields at most `target_count` ticks.
fn stepped_ticks(lo: f64, hi: f64, target_count: usize, min_exp: i32) -> Vec<f64> {
    for exp in min_exp..=320 {
        for mantissa in [1u32, 2, 5] {
            let step = mantissa as f64 * 10f64.powi(exp);
            let first = (lo / step).ceil();
            let last = (hi / step).floor();
            let count = last - first + 1.0;
            if count <= target_count as f64 {
                return (first as i64..=last as i64)
                    .map(|k| step_multiple(k, mantissa, exp))
                    .collect();
            }
        }
    }
    Vec::new()
}

// k * m * 10^e, divided rather than multiplied for negative exponents so
// that decimal steps land on the nearest double (0.3, not 0.30000000000000004).
fn step_multiple(k: i64, mantissa: u32, exp: i32) -> f64 {
    let units = (k * mantissa as i64) as f64;
    if exp >= 0 {
        units * 10f64.powi(exp)
    } else {
        units / 10f64.powi(-exp)
    }
}

/// Label for `x` with [`DEFAULT_DIGITS`].
pub fn format_label(x: FoldChange, format: LabelFormat) -> String {
    format_label_with(x, format, DEFAULT_DIGITS)
}

/// Label for `x`.
///
/// * `x >= 1`: shortest decimal that round-trips, in every format.
/// * decimal: `digits` significant digits, trailing zeros dropped.
/// * fraction: `1/d` when `1/x` is within 1e-9 of an integer, otherwise the
///   closest `p/q` with `q <= MAX_DENOMINATOR`.
/// * exponent: `d^-1`, with `d` rounded to `digits` decimal places when
///   `1/x` is not an integer.
pub fn format_label_with(x: FoldChange, format: LabelFormat, digits: usize) -> String {
    let v = x.get();
    if v >= 1.0 {
        return format!("{v}");
    }
    let digits = digits.max(1);
    let recip = 1.0 / v;
    let snapped = snap_to_integer(recip);
    match format {
        LabelFormat::Decimal => {
            let places = (digits as i32 - 1 - v.log10().floor() as i32).max(0) as usize;
            trim_decimal(format!("{v:.places$}"))
        }
        LabelFormat::Fraction => match snapped {
            Some(d) => format!("1/{d:.0}"),
            None => {
                let (p, q) = best_fraction(v, MAX_DENOMINATOR);
                if p == 0 {
                    format!("1/{:.0}", recip.round())
                } else {
                    format!("{p}/{q}")
                }
            }
        },
        LabelFormat::Exponent => match snapped {
            Some(d) => format!("{d:.0}^-1"),
            None => format!("{}^-1", trim_decimal(format!("{recip:.digits$}"))),
        },
    }
}

fn snap_to_integer(v: f64) -> Option<f64> {
    let d = v.round();
    ((v - d).abs() <= RECIPROCAL_SNAP && d >= 1.0).then_some(d)
}

fn trim_decimal(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// Closest fraction `p/q` to `x` in `[0, 1)` with `q <= max_den`, from the
/// continued-fraction convergents of `x` and the last semiconvergent.
fn best_fraction(x: f64, max_den: u64) -> (u64, u64) {
    let (mut p_prev, mut q_prev) = (0u64, 1u64);
    let (mut p, mut q) = (1u64, 0u64);
    let mut rest = x;
    loop {
        let a = rest.floor();
        if a > max_den as f64 {
            break;
        }
        let a = a as u64;
        let q_next = a * q + q_prev;
        if q_next > max_den {
            break;
        }
        let p_next = a * p + p_prev;
        (p_prev, q_prev, p, q) = (p, q, p_next, q_next);
        let frac = rest - rest.floor();
        if frac < 1e-12 {
            return (p, q);
        }
        rest = 1.0 / frac;
    }
    if q == 0 {
        return (0, 1);
    }
    let k = (max_den - q_prev) / q;
    let (sp, sq) = (p_prev + k * p, q_prev + k * q);
    let err = |a: u64, b: u64| (x - a as f64 / b as f64).abs();
    if sq > 0 && err(sp, sq) < err(p, q) {
        (sp, sq)
    } else {
        (p, q)
    }
}

/// Fold change denoted by a label produced by [`format_label`]: a decimal
/// (`0.33`, `2`), a fraction (`1/4`) or a reciprocal (`3^-1`).
pub fn parse_label(s: &str) -> Result<FoldChange, TickError> {
    let s = s.trim();
    let parse_num = |t: &str| -> Result<f64, TickError> {
        let t = t.trim();
        if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit() || b == b'.') {
            return Err(TickError::Parse(s.to_string()));
        }
        t.parse::<f64>()
            .map_err(|_| TickError::Parse(s.to_string()))
    };
    let value = if let Some(base) = s.strip_suffix("^-1") {
        1.0 / parse_num(base)?
    } else if let Some((num, den)) = s.split_once('/') {
        parse_num(num)? / parse_num(den)?
    } else {
        parse_num(s)?
    };
    Ok(FoldChange::new(value)?)
}
