//! Fold-change coordinate transforms.
//!
//! The MAD-FC coordinate of a fold change `x` is built from two steps applied
//! to the data:
//!
//! * the mirror transform, which sends negative-direction changes `x < 1` to
//!   `-1/x` so that `x` and `1/x` sit at the same distance from the origin;
//! * the contraction transform, which pulls both branches one unit toward
//!   zero and closes the empty `[-1, 1)` band the mirror leaves behind.
//!
//! Axis labels undo the two steps in reverse order (inverse contraction, then
//! inverse mirror) so tick positions can be read back as fold changes. The
//! resulting coordinate is "fold change units from no change": 2 maps to 1,
//! 1/2 maps to -1 and 1 maps to 0.
//!
//! [`ScaleKind`] puts the MAD-FC coordinate behind the same interface as the
//! conventional log2 and linear fold-change scales.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// `|MAD|` above which a chart is considered to exceed the useful dynamic range
/// of a linear-style fold-change axis (about two orders of magnitude).
pub const DYNAMIC_RANGE_LIMIT: f64 = 100.0;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TransformError {
    #[error("fold change must be a finite value > 0, got {0}")]
    Domain(f64),
    #[error("coordinate must be finite, got {0}")]
    NonFinite(f64),
    #[error("contraction transform is undefined for {0} (valid: m >= 1 or m < -1)")]
    UndefinedRegion(f64),
    #[error("inverse mirror is undefined for {0} (valid: m >= 1 or m <= -1)")]
    MirrorGap(f64),
    #[error("coordinate {coordinate} has no fold change under the {scale} scale")]
    OutOfRange { scale: ScaleKind, coordinate: f64 },
}

/// A strictly positive, finite ratio of an experiment mean to a control mean.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct FoldChange(f64);

impl FoldChange {
    /// No change.
    pub const ONE: FoldChange = FoldChange(1.0);

    pub fn new(value: f64) -> Result<Self, TransformError> {
        if value.is_finite() && value > 0.0 {
            Ok(FoldChange(value))
        } else {
            Err(TransformError::Domain(value))
        }
    }

    #[inline]
    pub fn get(self) -> f64 {
        self.0
    }

    /// The fold change in the opposite direction (`1/x`).
    pub fn reciprocal(self) -> FoldChange {
        FoldChange(1.0 / self.0)
    }

    /// Shorthand for [`mad_forward`].
    pub fn mad(self) -> MadValue {
        mad_forward(self)
    }
}

impl TryFrom<f64> for FoldChange {
    type Error = TransformError;

    fn try_from(value: f64) -> Result<Self, Self::Error> {
        FoldChange::new(value)
    }
}

impl fmt::Display for FoldChange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

/// A coordinate in MAD-FC space, measured in fold-change units from no change.
/// Every finite real is a valid coordinate; 0 is the reference point.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct MadValue(f64);

impl MadValue {
    pub const ZERO: MadValue = MadValue(0.0);

    pub fn new(value: f64) -> Result<Self, TransformError> {
        if value.is_finite() {
            Ok(MadValue(value))
        } else {
            Err(TransformError::NonFinite(value))
        }
    }

    #[inline]
    pub fn get(self) -> f64 {
        self.0
    }
}

impl fmt::Display for MadValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

/// Mirror transform: `x` for `x >= 1`, `-1/x` otherwise.
///
/// The output lies in `(-inf, -1) ∪ [1, inf)`.
pub fn mirror_transform(x: FoldChange) -> f64 {
    let x = x.get();
    if x >= 1.0 {
        x
    } else {
        -1.0 / x
    }
}

/// Contraction transform: `m - 1` for `m >= 1`, `m + 1` for `m < -1`.
///
/// Inputs in `[-1, 1)` are outside the mirror transform's image and are
/// rejected with [`TransformError::UndefinedRegion`].
pub fn contraction_transform(m: f64) -> Result<f64, TransformError> {
    if !m.is_finite() {
        return Err(TransformError::NonFinite(m));
    }
    if m >= 1.0 {
        Ok(m - 1.0)
    } else if m < -1.0 {
        Ok(m + 1.0)
    } else {
        Err(TransformError::UndefinedRegion(m))
    }
}

/// MAD-FC forward transform, equal to `contraction_transform(mirror_transform(x))`.
///
/// `x - 1` above the reference and `1 - 1/x` below it. Strictly increasing and
/// continuous at `x = 1`.
pub fn mad_forward(x: FoldChange) -> MadValue {
    let x = x.get();
    if x >= 1.0 {
        MadValue(x - 1.0)
    } else {
        // Same float operations as the composition: (-1/x) + 1.
        MadValue(1.0 - 1.0 / x)
    }
}

/// Inverse contraction: `t + 1` for `t >= 0`, `t - 1` for `t < 0`.
///
/// Zero goes to the positive branch, which puts the reference point back at 1.
pub fn inverse_contraction(t: MadValue) -> f64 {
    let t = t.get();
    if t >= 0.0 {
        t + 1.0
    } else {
        t - 1.0
    }
}

/// Inverse mirror: `m` for `m >= 0`, `-1/m` otherwise.
///
/// Meant to be applied after [`inverse_contraction`], whose image is
/// `(-inf, -1) ∪ [1, inf)`. `m = -1` is accepted and maps to 1; the open gap
/// `(-1, 1)` is rejected because it would produce a fold change that the
/// forward transform never emits (or a non-positive one).
pub fn inverse_mirror(m: f64) -> Result<FoldChange, TransformError> {
    if !m.is_finite() {
        return Err(TransformError::NonFinite(m));
    }
    if m > -1.0 && m < 1.0 {
        return Err(TransformError::MirrorGap(m));
    }
    let x = if m >= 0.0 { m } else { -1.0 / m };
    FoldChange::new(x)
}

/// Exact inverse of [`mad_forward`]: `t + 1` for `t >= 0`, `1/(1 - t)` otherwise.
pub fn mad_inverse(t: MadValue) -> FoldChange {
    let t = t.get();
    if t >= 0.0 {
        FoldChange(t + 1.0)
    } else {
        // -1/(t - 1), written so the sign never has to round-trip.
        FoldChange(1.0 / (1.0 - t))
    }
}

/// Fold-change axis scale.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum ScaleKind {
    Log2,
    Linear,
    #[default]
    MadFc,
}

impl ScaleKind {
    pub const ALL: [ScaleKind; 3] = [ScaleKind::Log2, ScaleKind::Linear, ScaleKind::MadFc];

    pub fn as_str(self) -> &'static str {
        match self {
            ScaleKind::Log2 => "log2",
            ScaleKind::Linear => "linear",
            ScaleKind::MadFc => "madfc",
        }
    }

    /// Coordinate of "no change" (fold change 1) under this scale.
    pub fn reference(self) -> f64 {
        match self {
            ScaleKind::Linear => 1.0,
            ScaleKind::Log2 | ScaleKind::MadFc => 0.0,
        }
    }

    /// Human-readable axis title.
    pub fn axis_title(self) -> &'static str {
        match self {
            ScaleKind::Log2 => "log2 fold change",
            ScaleKind::Linear => "fold change",
            ScaleKind::MadFc => "MAD fold change",
        }
    }
}

impl fmt::Display for ScaleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ScaleKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "log2" => Ok(ScaleKind::Log2),
            "linear" => Ok(ScaleKind::Linear),
            "madfc" | "mad" => Ok(ScaleKind::MadFc),
            other => Err(format!(
                "unknown scale '{other}' (expected log2, linear or madfc)"
            )),
        }
    }
}

/// Coordinate of `x` under `kind`.
pub fn scale_forward(kind: ScaleKind, x: FoldChange) -> f64 {
    match kind {
        ScaleKind::Log2 => x.get().log2(),
        ScaleKind::Linear => x.get(),
        ScaleKind::MadFc => mad_forward(x).get(),
    }
}

/// Fold change at coordinate `t` under `kind`.
///
/// Log2 coordinates whose power of two overflows or underflows, and linear
/// coordinates `<= 0`, have no fold change and return
/// [`TransformError::OutOfRange`].
pub fn scale_inverse(kind: ScaleKind, t: f64) -> Result<FoldChange, TransformError> {
    if !t.is_finite() {
        return Err(TransformError::NonFinite(t));
    }
    let out_of_range = || TransformError::OutOfRange {
        scale: kind,
        coordinate: t,
    };
    match kind {
        ScaleKind::Log2 => FoldChange::new(t.exp2()).map_err(|_| out_of_range()),
        ScaleKind::Linear => FoldChange::new(t).map_err(|_| out_of_range()),
        ScaleKind::MadFc => Ok(mad_inverse(MadValue(t))),
    }
}
