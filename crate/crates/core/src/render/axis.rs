//! Plot-area layout and data-to-pixel mapping.

use crate::ticks::{generate_ticks_with, nice_ticks, LabelFormat, TickError, TickSet};
use crate::transform::{FoldChange, ScaleKind};

/// Fraction of the data span added on each side of an axis.
pub const AXIS_PADDING: f64 = 0.05;

/// Target number of ticks on every axis.
pub const TARGET_TICKS: usize = 9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlotArea {
    pub left: f64,
    pub top: f64,
    pub right: f64,
    pub bottom: f64,
}

impl PlotArea {
    pub fn for_chart(width: f64, height: f64) -> Self {
        PlotArea {
            left: 80.0,
            top: 50.0,
            right: width - 30.0,
            bottom: height - 60.0,
        }
    }

    pub fn width(&self) -> f64 {
        self.right - self.left
    }

    pub fn height(&self) -> f64 {
        self.bottom - self.top
    }

    pub fn contains(&self, x: f64, y: f64) -> bool {
        const EPS: f64 = 1e-9;
        x >= self.left - EPS
            && x <= self.right + EPS
            && y >= self.top - EPS
            && y <= self.bottom + EPS
    }
}

/// Affine map from a data interval onto a pixel interval. The pixel interval
/// may run backwards (vertical axes grow upward).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisMap {
    pub domain: (f64, f64),
    pub pixels: (f64, f64),
}

impl AxisMap {
    pub fn new(domain: (f64, f64), pixels: (f64, f64)) -> Self {
        AxisMap { domain, pixels }
    }

    pub fn to_px(&self, v: f64) -> f64 {
        let (d0, d1) = self.domain;
        let (p0, p1) = self.pixels;
        p0 + (v - d0) / (d1 - d0) * (p1 - p0)
    }
}

/// Axis domain for fold-change coordinates `coords` under `scale`.
///
/// The range always covers the reference coordinate. Log2 and MAD-FC axes
/// are symmetric about it; every axis is padded by [`AXIS_PADDING`].
pub fn fold_change_domain(scale: ScaleKind, coords: impl IntoIterator<Item = f64>) -> (f64, f64) {
    let reference = scale.reference();
    let (lo, hi) = coords
        .into_iter()
        .fold((reference, reference), |(lo, hi), c| (lo.min(c), hi.max(c)));
    match scale {
        ScaleKind::Log2 | ScaleKind::MadFc => {
            let reach = lo.abs().max(hi.abs());
            let reach = if reach > 0.0 { reach } else { 1.0 };
            let reach = reach * (1.0 + AXIS_PADDING);
            (-reach, reach)
        }
        ScaleKind::Linear => padded(lo, hi),
    }
}

/// `[lo, hi]` widened by [`AXIS_PADDING`] of its span (or by 0.5 when empty).
pub fn padded(lo: f64, hi: f64) -> (f64, f64) {
    let span = hi - lo;
    if span > 0.0 {
        (lo - AXIS_PADDING * span, hi + AXIS_PADDING * span)
    } else {
        (lo - 0.5, hi + 0.5)
    }
}

/// Fold-change ticks inside a coordinate domain. Linear domains that reach
/// zero or below are labelled from a small positive floor.
pub fn fold_change_ticks(
    scale: ScaleKind,
    domain: (f64, f64),
    format: LabelFormat,
    digits: usize,
) -> Result<TickSet, TickError> {
    let (lo, hi) = domain;
    let lo = match scale {
        ScaleKind::Linear if lo <= 0.0 => hi * 1e-6,
        _ => lo,
    };
    let fc = |t: f64| crate::transform::scale_inverse(scale, t);
    let (fc_lo, fc_hi): (FoldChange, FoldChange) = (fc(lo)?, fc(hi)?);
    generate_ticks_with(scale, fc_lo, fc_hi, TARGET_TICKS, format, digits)
}

/// Plain numeric ticks with shortest-decimal labels.
pub fn numeric_ticks(domain: (f64, f64)) -> Vec<(f64, String)> {
    nice_ticks(domain.0, domain.1, TARGET_TICKS)
        .into_iter()
        .map(|v| (v, format!("{}", if v == 0.0 { 0.0 } else { v })))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_domains_for_log_and_mad() {
        let (lo, hi) = fold_change_domain(ScaleKind::MadFc, [1.0, 3.0]);
        assert_eq!(lo, -hi);
        assert!((hi - 3.15).abs() < 1e-12);
        let (lo, hi) = fold_change_domain(ScaleKind::Log2, [-2.0]);
        assert_eq!(lo, -hi);
    }

    #[test]
    fn linear_domain_includes_reference() {
        let (lo, hi) = fold_change_domain(ScaleKind::Linear, [3.0, 5.0]);
        assert!(lo < 1.0 && hi > 5.0);
    }

    #[test]
    fn degenerate_domain_gets_default_width() {
        assert_eq!(fold_change_domain(ScaleKind::MadFc, [0.0]), (-1.05, 1.05));
        assert_eq!(padded(2.0, 2.0), (1.5, 2.5));
    }

    #[test]
    fn axis_map_is_affine() {
        let m = AxisMap::new((-2.0, 2.0), (500.0, 100.0));
        assert_eq!(m.to_px(-2.0), 500.0);
        assert_eq!(m.to_px(2.0), 100.0);
        assert_eq!(m.to_px(0.0), 300.0);
    }
}
