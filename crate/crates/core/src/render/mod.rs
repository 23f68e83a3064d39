//! Deterministic SVG charts of fold-change data.
//!
//! Every renderer is a pure function of its data and [`ChartSpec`]: the same
//! inputs produce byte-identical SVG. Output is SVG 1.1 with every numeric
//! attribute printed to exactly three decimals, and elements grouped in a fixed
//! order: data marks (`<g class="data">`), then axes (`<g class="axes">`), then
//! text (`<g class="labels">`). Mark classes are stable and used by tests:
//! `point`, `bar`, `cap`, `box`, `median`, `whisker`, `violin`, `cell`,
//! `reference`.

mod axis;
mod color;
mod groups;
mod heatmap;
mod scatter;
mod svg;

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use thiserror::Error;

pub use axis::{fold_change_domain, AxisMap, PlotArea, AXIS_PADDING, TARGET_TICKS};
pub use color::{
    map_color, ramp_color, ramp_position, Rgb, RAMP_NEGATIVE, RAMP_NEUTRAL, RAMP_POSITIVE,
};
pub use groups::{
    render_box, render_box_matrix, render_errorbar, render_violin, VIOLIN_HALF_WIDTH_FRACTION,
};
pub use heatmap::render_heatmap;
pub use scatter::{render_ma, render_volcano, SIGNIFICANCE_LEVEL};

use crate::stats::StatsError;
use crate::ticks::{LabelFormat, TickError, DEFAULT_DIGITS};
use crate::transform::{ScaleKind, TransformError};
use svg::SvgWriter;

/// Smallest accepted chart width or height.
pub const MIN_DIMENSION_PX: u32 = 100;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RenderError {
    #[error("nothing to plot: {0}")]
    Empty(&'static str),
    #[error("chart spec is for a {found} chart, not {expected}")]
    WrongKind {
        expected: ChartKind,
        found: ChartKind,
    },
    #[error("chart dimensions {width}x{height} are below the {MIN_DIMENSION_PX} px minimum")]
    Dimensions { width: u32, height: u32 },
    #[error(transparent)]
    Stats(#[from] StatsError),
    #[error(transparent)]
    Ticks(#[from] TickError),
    #[error(transparent)]
    Transform(#[from] TransformError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChartKind {
    Volcano,
    Ma,
    ErrorBar,
    Box,
    Violin,
    Heatmap,
}

impl ChartKind {
    pub const ALL: [ChartKind; 6] = [
        ChartKind::Volcano,
        ChartKind::Ma,
        ChartKind::ErrorBar,
        ChartKind::Box,
        ChartKind::Violin,
        ChartKind::Heatmap,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ChartKind::Volcano => "volcano",
            ChartKind::Ma => "ma",
            ChartKind::ErrorBar => "errorbar",
            ChartKind::Box => "box",
            ChartKind::Violin => "violin",
            ChartKind::Heatmap => "heatmap",
        }
    }
}

impl fmt::Display for ChartKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ChartKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ChartKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| format!("unknown chart kind '{s}'"))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChartSpec {
    pub kind: ChartKind,
    pub scale: ScaleKind,
    pub label_format: LabelFormat,
    /// Significant digits for decimal labels.
    pub digits: usize,
    pub width_px: u32,
    pub height_px: u32,
    pub title: String,
}

impl ChartSpec {
    /// 800x600 MAD-FC chart with fraction labels.
    pub fn new(kind: ChartKind) -> Self {
        ChartSpec {
            kind,
            scale: ScaleKind::MadFc,
            label_format: LabelFormat::Fraction,
            digits: DEFAULT_DIGITS,
            width_px: 800,
            height_px: 600,
            title: String::new(),
        }
    }

    pub fn with_scale(mut self, scale: ScaleKind) -> Self {
        self.scale = scale;
        self
    }

    pub fn with_format(mut self, format: LabelFormat) -> Self {
        self.label_format = format;
        self
    }

    pub fn with_size(mut self, width_px: u32, height_px: u32) -> Self {
        self.width_px = width_px;
        self.height_px = height_px;
        self
    }

    pub fn with_title(mut self, title: impl Into<String>) -> Self {
        self.title = title.into();
        self
    }

    fn check(&self, expected: ChartKind) -> Result<(), RenderError> {
        if self.kind != expected {
            return Err(RenderError::WrongKind {
                expected,
                found: self.kind,
            });
        }
        if self.width_px < MIN_DIMENSION_PX || self.height_px < MIN_DIMENSION_PX {
            return Err(RenderError::Dimensions {
                width: self.width_px,
                height: self.height_px,
            });
        }
        Ok(())
    }

    fn width(&self) -> f64 {
        self.width_px as f64
    }

    fn height(&self) -> f64 {
        self.height_px as f64
    }
}

/// A rendered chart plus any warnings raised while drawing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SvgDocument {
    pub svg: String,
    pub warnings: Vec<String>,
}

impl SvgDocument {
    pub fn as_bytes(&self) -> &[u8] {
        self.svg.as_bytes()
    }

    pub fn write_to(&self, path: impl AsRef<Path>) -> std::io::Result<()> {
        std::fs::write(path, self.svg.as_bytes())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Orientation {
    Horizontal,
    Vertical,
}

/// An axis ready to be drawn: mapping, tick positions (data units) and
/// labels, and a title.
struct AxisSpec {
    orientation: Orientation,
    map: AxisMap,
    ticks: Vec<(f64, String)>,
    title: String,
}

impl AxisSpec {
    fn fold_change(
        orientation: Orientation,
        map: AxisMap,
        spec: &ChartSpec,
    ) -> Result<AxisSpec, RenderError> {
        let ticks =
            axis::fold_change_ticks(spec.scale, map.domain, spec.label_format, spec.digits)?;
        Ok(AxisSpec {
            orientation,
            map,
            ticks: ticks.positions.into_iter().zip(ticks.labels).collect(),
            title: spec.scale.axis_title().to_string(),
        })
    }

    fn numeric(orientation: Orientation, map: AxisMap, title: &str) -> AxisSpec {
        AxisSpec {
            orientation,
            map,
            ticks: axis::numeric_ticks(map.domain),
            title: title.to_string(),
        }
    }
}

const TICK_LEN: f64 = 5.0;
const AXIS_COLOR: &str = "#333333";
const REFERENCE_COLOR: &str = "#888888";

/// Frame, tick marks and the optional no-change reference line.
fn draw_axes(
    w: &mut SvgWriter,
    area: &PlotArea,
    axes: &[&AxisSpec],
    reference: Option<(Orientation, f64)>,
) {
    w.open_group("axes");
    w.element(
        "rect",
        &[
            ("class", "frame".into()),
            ("x", area.left.into()),
            ("y", area.top.into()),
            ("width", area.width().into()),
            ("height", area.height().into()),
            ("fill", "none".into()),
            ("stroke", AXIS_COLOR.into()),
        ],
    );
    if let Some((orientation, px)) = reference {
        let (x1, y1, x2, y2) = match orientation {
            Orientation::Vertical => (px, area.top, px, area.bottom),
            Orientation::Horizontal => (area.left, px, area.right, px),
        };
        w.element(
            "line",
            &[
                ("class", "reference".into()),
                ("x1", x1.into()),
                ("y1", y1.into()),
                ("x2", x2.into()),
                ("y2", y2.into()),
                ("stroke", REFERENCE_COLOR.into()),
                ("stroke-dasharray", "4 3".into()),
            ],
        );
    }
    for axis in axes {
        for (v, _) in &axis.ticks {
            let p = axis.map.to_px(*v);
            let (x1, y1, x2, y2) = match axis.orientation {
                Orientation::Horizontal => (p, area.bottom, p, area.bottom + TICK_LEN),
                Orientation::Vertical => (area.left - TICK_LEN, p, area.left, p),
            };
            w.element(
                "line",
                &[
                    ("class", "tick".into()),
                    ("x1", x1.into()),
                    ("y1", y1.into()),
                    ("x2", x2.into()),
                    ("y2", y2.into()),
                    ("stroke", AXIS_COLOR.into()),
                ],
            );
        }
    }
    w.close_group();
}

/// Tick labels, axis titles, category labels and the chart title.
fn draw_labels(
    w: &mut SvgWriter,
    area: &PlotArea,
    axes: &[&AxisSpec],
    categories: &[(f64, String)],
    spec: &ChartSpec,
) {
    w.open_group("labels");
    for axis in axes {
        for (v, label) in &axis.ticks {
            let p = axis.map.to_px(*v);
            match axis.orientation {
                Orientation::Horizontal => w.text(
                    label,
                    &[
                        ("class", "tick-label".into()),
                        ("x", p.into()),
                        ("y", (area.bottom + 18.0).into()),
                        ("text-anchor", "middle".into()),
                        ("font-size", 11.0.into()),
                    ],
                ),
                Orientation::Vertical => w.text(
                    label,
                    &[
                        ("class", "tick-label".into()),
                        ("x", (area.left - 8.0).into()),
                        ("y", (p + 4.0).into()),
                        ("text-anchor", "end".into()),
                        ("font-size", 11.0.into()),
                    ],
                ),
            }
        }
        match axis.orientation {
            Orientation::Horizontal => w.text(
                &axis.title,
                &[
                    ("class", "axis-title".into()),
                    ("x", ((area.left + area.right) / 2.0).into()),
                    ("y", (area.bottom + 42.0).into()),
                    ("text-anchor", "middle".into()),
                    ("font-size", 13.0.into()),
                ],
            ),
            Orientation::Vertical => {
                let cy = (area.top + area.bottom) / 2.0;
                let x = area.left - 58.0;
                let rotate = format!("rotate(-90.000 {} {})", svg::num(x), svg::num(cy));
                w.text(
                    &axis.title,
                    &[
                        ("class", "axis-title".into()),
                        ("x", x.into()),
                        ("y", cy.into()),
                        ("text-anchor", "middle".into()),
                        ("font-size", 13.0.into()),
                        ("transform", rotate.as_str().into()),
                    ],
                )
            }
        }
    }
    for (x, label) in categories {
        w.text(
            label,
            &[
                ("class", "category-label".into()),
                ("x", (*x).into()),
                ("y", (area.bottom + 18.0).into()),
                ("text-anchor", "middle".into()),
                ("font-size", 11.0.into()),
            ],
        );
    }
    if !spec.title.is_empty() {
        w.text(
            &spec.title,
            &[
                ("class", "title".into()),
                ("x", (spec.width() / 2.0).into()),
                ("y", 28.0.into()),
                ("text-anchor", "middle".into()),
                ("font-size", 16.0.into()),
            ],
        );
    }
    w.close_group();
}
