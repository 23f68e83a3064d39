//! Diverging blue-white-red colour ramp centred on no change.

use std::fmt;

use crate::transform::{scale_forward, FoldChange, ScaleKind, TransformError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rgb {
    pub r: u8,
    pub g: u8,
    pub b: u8,
}

impl Rgb {
    pub const fn new(r: u8, g: u8, b: u8) -> Self {
        Rgb { r, g, b }
    }

    pub fn channels(self) -> [u8; 3] {
        [self.r, self.g, self.b]
    }
}

impl fmt::Display for Rgb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{:02x}{:02x}{:02x}", self.r, self.g, self.b)
    }
}

/// Colour at the negative end of the ramp (ColorBrewer RdBu).
pub const RAMP_NEGATIVE: Rgb = Rgb::new(33, 102, 172);
/// Colour at no change.
pub const RAMP_NEUTRAL: Rgb = Rgb::new(255, 255, 255);
/// Colour at the positive end of the ramp.
pub const RAMP_POSITIVE: Rgb = Rgb::new(178, 24, 43);

/// Ramp position in `[-1, 1]`: the distance of `fc` from the scale's reference
/// coordinate, clamped to `±limit` and divided by `limit`.
pub fn ramp_position(fc: FoldChange, scale: ScaleKind, limit: f64) -> Result<f64, TransformError> {
    if !(limit > 0.0 && limit.is_finite()) {
        return Err(TransformError::NonFinite(limit));
    }
    let offset = scale_forward(scale, fc) - scale.reference();
    Ok(offset.clamp(-limit, limit) / limit)
}

/// Colour of a ramp position; 0 is white, -1 and 1 the saturated ends.
pub fn ramp_color(t: f64) -> Rgb {
    let t = t.clamp(-1.0, 1.0);
    let end = if t < 0.0 {
        RAMP_NEGATIVE
    } else {
        RAMP_POSITIVE
    };
    let w = t.abs();
    let mix = |a: u8, b: u8| (a as f64 + (b as f64 - a as f64) * w).round() as u8;
    Rgb::new(
        mix(RAMP_NEUTRAL.r, end.r),
        mix(RAMP_NEUTRAL.g, end.g),
        mix(RAMP_NEUTRAL.b, end.b),
    )
}

/// Heatmap colour of `fc` under `scale`, saturating beyond `limit`
/// coordinate units from no change.
pub fn map_color(fc: FoldChange, scale: ScaleKind, limit: f64) -> Result<Rgb, TransformError> {
    Ok(ramp_color(ramp_position(fc, scale, limit)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fc(v: f64) -> FoldChange {
        FoldChange::new(v).unwrap()
    }

    #[test]
    fn no_change_is_white() {
        for scale in ScaleKind::ALL {
            assert_eq!(
                map_color(FoldChange::ONE, scale, 3.0).unwrap(),
                RAMP_NEUTRAL
            );
        }
    }

    #[test]
    fn saturates_past_limit() {
        assert_eq!(
            map_color(fc(100.0), ScaleKind::MadFc, 4.0).unwrap(),
            RAMP_POSITIVE
        );
        assert_eq!(
            map_color(fc(0.001), ScaleKind::MadFc, 4.0).unwrap(),
            RAMP_NEGATIVE
        );
        assert_eq!(
            map_color(fc(0.001), ScaleKind::Log2, 4.0).unwrap(),
            RAMP_NEGATIVE
        );
    }

    #[test]
    fn madfc_reciprocals_mirror_about_white() {
        for x in [1.5, 2.0, 3.0, 4.5, 7.0] {
            let up = ramp_position(fc(x), ScaleKind::MadFc, 8.0).unwrap();
            let down = ramp_position(fc(1.0 / x), ScaleKind::MadFc, 8.0).unwrap();
            assert!((up + down).abs() < 1e-12);
            let a = map_color(fc(x), ScaleKind::MadFc, 8.0).unwrap();
            let b = map_color(fc(1.0 / x), ScaleKind::MadFc, 8.0).unwrap();
            // Same fraction of the way from white toward each end, channel by channel.
            for ((ca, cb), (ea, eb)) in a.channels().iter().zip(b.channels()).zip(
                RAMP_POSITIVE
                    .channels()
                    .iter()
                    .zip(RAMP_NEGATIVE.channels()),
            ) {
                let fa = (255.0 - *ca as f64) / (255.0 - *ea as f64);
                let fb = (255.0 - cb as f64) / (255.0 - eb as f64);
                assert!(
                    (fa - fb).abs() <= 1.0 / (255.0 - *ea.max(&eb) as f64),
                    "x = {x}"
                );
            }
        }
    }

    #[test]
    fn rejects_bad_limit() {
        assert!(map_color(fc(2.0), ScaleKind::MadFc, 0.0).is_err());
        assert!(map_color(fc(2.0), ScaleKind::MadFc, f64::NAN).is_err());
    }

    #[test]
    fn hex_display() {
        assert_eq!(RAMP_POSITIVE.to_string(), "#b2182b");
    }
}
