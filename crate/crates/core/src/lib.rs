//! Mirrored axis distortion of fold change (MAD-FC).
//!
//! Fold changes below 1 are mirrored (`x -> -1/x`) and both branches are
//! shifted one unit toward zero, giving a coordinate in "fold change units
//! from no change": 2 maps to 1, 1/2 to -1. Axis labels undo both steps so the
//! original fold changes stay readable, and equal-magnitude changes in
//! opposite directions sit at equal distances from the reference.
//!
//! * [`transform`]: forward and inverse transforms and the three scales
//!   (log2, linear, MAD-FC)
//! * [`ticks`]: tick placement and decimal / fraction / exponent labels
//! * [`stats`]: group fold changes, quantiles, densities, MAD-space intervals
//! * [`ingest`]: CSV readers and writers for the chart inputs
//! * [`simulate`]: synthetic datasets with equal MAD-space dispersion
//! * [`render`]: deterministic SVG volcano, MA, error-bar, box, violin and
//!   heatmap charts
//! * [`cli`]: the `madfc` command line
//!
//! ```
//! use madfc::transform::{mad_forward, mad_inverse, FoldChange};
//!
//! let half = FoldChange::new(0.5).unwrap();
//! assert_eq!(mad_forward(half).get(), -1.0);
//! assert_eq!(mad_inverse(mad_forward(half)), half);
//! ```

pub mod cli;
pub mod ingest;
pub mod render;
pub mod simulate;
pub mod stats;
pub mod ticks;
pub mod transform;

pub use transform::{
    mad_forward, mad_inverse, scale_forward, scale_inverse, FoldChange, MadValue, ScaleKind,
};
