//! Per-group charts on a categorical x axis: interval estimates, box plots
//! and violins. The fold-change axis is vertical.

use super::axis::{fold_change_domain, AxisMap, PlotArea};
use super::svg::SvgWriter;
use super::{
    draw_axes, draw_labels, AxisSpec, ChartKind, ChartSpec, Orientation, RenderError, SvgDocument,
};
use crate::ingest::ExpressionMatrix;
use crate::stats::{kde_density, quantile_summary, BoxGroup, GroupSummary};
use crate::transform::{scale_forward, FoldChange, ScaleKind};

/// Widest violin half-width as a fraction of the category slot.
pub const VIOLIN_HALF_WIDTH_FRACTION: f64 = 0.45;

const BOX_WIDTH_FRACTION: f64 = 0.5;
const CAP_HALF_WIDTH: f64 = 6.0;
const POINT_RADIUS: f64 = 4.0;
const MARK_COLOR: &str = "#2166ac";
const FILL_COLOR: &str = "#d1e5f0";

/// Slot centres, rounded to the same 3 decimals the SVG prints so that
/// marks offset symmetrically from a centre stay symmetric after rounding.
fn slot_centers(area: &PlotArea, n: usize) -> (Vec<f64>, f64) {
    let slot = area.width() / n as f64;
    let centers = (0..n)
        .map(|i| ((area.left + (i as f64 + 0.5) * slot) * 1000.0).round() / 1000.0)
        .collect();
    (centers, slot)
}

fn vertical_axis(
    area: &PlotArea,
    scale: ScaleKind,
    coords: impl IntoIterator<Item = f64>,
) -> AxisMap {
    AxisMap::new(fold_change_domain(scale, coords), (area.bottom, area.top))
}

fn finish(
    mut w: SvgWriter,
    area: &PlotArea,
    y_map: AxisMap,
    centers: &[f64],
    labels: impl IntoIterator<Item = String>,
    spec: &ChartSpec,
) -> Result<SvgDocument, RenderError> {
    let y_axis = AxisSpec::fold_change(Orientation::Vertical, y_map, spec)?;
    let reference = y_map.to_px(spec.scale.reference());
    draw_axes(
        &mut w,
        area,
        &[&y_axis],
        Some((Orientation::Horizontal, reference)),
    );
    let categories: Vec<(f64, String)> = centers.iter().copied().zip(labels).collect();
    draw_labels(&mut w, area, &[&y_axis], &categories, spec);
    Ok(SvgDocument {
        svg: w.finish(),
        warnings: Vec::new(),
    })
}

fn vline(w: &mut SvgWriter, class: &str, x: f64, y1: f64, y2: f64) {
    w.element(
        "line",
        &[
            ("class", class.into()),
            ("x1", x.into()),
            ("y1", y1.into()),
            ("x2", x.into()),
            ("y2", y2.into()),
            ("stroke", MARK_COLOR.into()),
            ("stroke-width", 1.5.into()),
        ],
    );
}

fn hline(w: &mut SvgWriter, class: &str, x1: f64, x2: f64, y: f64) {
    w.element(
        "line",
        &[
            ("class", class.into()),
            ("x1", x1.into()),
            ("y1", y.into()),
            ("x2", x2.into()),
            ("y2", y.into()),
            ("stroke", MARK_COLOR.into()),
            ("stroke-width", 1.5.into()),
        ],
    );
}

/// Point estimates with interval bars: per group a `bar` from lower to upper,
/// two `cap`s and a `point`.
pub fn render_errorbar(
    groups: &[GroupSummary],
    spec: &ChartSpec,
) -> Result<SvgDocument, RenderError> {
    spec.check(ChartKind::ErrorBar)?;
    if groups.is_empty() {
        return Err(RenderError::Empty("no groups"));
    }
    let fwd = |x: FoldChange| scale_forward(spec.scale, x);
    let area = PlotArea::for_chart(spec.width(), spec.height());
    let y_map = vertical_axis(
        &area,
        spec.scale,
        groups
            .iter()
            .flat_map(|g| [fwd(g.lower_fc), fwd(g.point_fc), fwd(g.upper_fc)]),
    );
    let (centers, _) = slot_centers(&area, groups.len());

    let mut w = SvgWriter::new(spec.width(), spec.height());
    w.open_group("data");
    for (g, &cx) in groups.iter().zip(&centers) {
        let lo = y_map.to_px(fwd(g.lower_fc));
        let hi = y_map.to_px(fwd(g.upper_fc));
        vline(&mut w, "bar", cx, lo, hi);
        hline(&mut w, "cap", cx - CAP_HALF_WIDTH, cx + CAP_HALF_WIDTH, lo);
        hline(&mut w, "cap", cx - CAP_HALF_WIDTH, cx + CAP_HALF_WIDTH, hi);
        w.element(
            "circle",
            &[
                ("class", "point".into()),
                ("cx", cx.into()),
                ("cy", y_map.to_px(fwd(g.point_fc)).into()),
                ("r", POINT_RADIUS.into()),
                ("fill", MARK_COLOR.into()),
            ],
        );
    }
    w.close_group();
    finish(
        w,
        &area,
        y_map,
        &centers,
        groups.iter().map(|g| g.label.clone()),
        spec,
    )
}

/// Box plots from precomputed summaries: per group a lower and an upper
/// `whisker`, a `box` from q1 to q3 and a `median` line.
pub fn render_box(groups: &[BoxGroup], spec: &ChartSpec) -> Result<SvgDocument, RenderError> {
    spec.check(ChartKind::Box)?;
    if groups.is_empty() {
        return Err(RenderError::Empty("no groups"));
    }
    let fwd = |x: FoldChange| scale_forward(spec.scale, x);
    let area = PlotArea::for_chart(spec.width(), spec.height());
    let y_map = vertical_axis(
        &area,
        spec.scale,
        groups.iter().flat_map(|g| g.summary.as_array().map(fwd)),
    );
    let (centers, slot) = slot_centers(&area, groups.len());
    let half = (slot * BOX_WIDTH_FRACTION / 2.0 * 1000.0).round() / 1000.0;

    let mut w = SvgWriter::new(spec.width(), spec.height());
    w.open_group("data");
    for (g, &cx) in groups.iter().zip(&centers) {
        let [min, q1, median, q3, max] = g.summary.as_array().map(|v| y_map.to_px(fwd(v)));
        vline(&mut w, "whisker", cx, min, q1);
        vline(&mut w, "whisker", cx, q3, max);
        w.element(
            "rect",
            &[
                ("class", "box".into()),
                ("x", (cx - half).into()),
                ("y", q3.into()),
                ("width", (2.0 * half).into()),
                ("height", (q1 - q3).into()),
                ("fill", FILL_COLOR.into()),
                ("stroke", MARK_COLOR.into()),
                ("stroke-width", 1.5.into()),
            ],
        );
        hline(&mut w, "median", cx - half, cx + half, median);
    }
    w.close_group();
    finish(
        w,
        &area,
        y_map,
        &centers,
        groups.iter().map(|g| g.label.clone()),
        spec,
    )
}

/// Box plots of the raw samples in each matrix entry.
pub fn render_box_matrix(
    matrix: &ExpressionMatrix,
    spec: &ChartSpec,
) -> Result<SvgDocument, RenderError> {
    let groups = matrix
        .entries
        .iter()
        .zip(matrix.entry_labels())
        .map(|(e, label)| {
            Ok(BoxGroup {
                label,
                summary: quantile_summary(&e.samples)?,
            })
        })
        .collect::<Result<Vec<_>, RenderError>>()?;
    render_box(&groups, spec)
}

/// Violins: one mirrored `violin` polygon per entry.
///
/// Densities are estimated in the chart scale's coordinates and share one
/// width scale, so the densest point over all groups spans
/// [`VIOLIN_HALF_WIDTH_FRACTION`] of a slot on each side. Polygon vertices run
/// up the right edge along the density grid, then back down the left edge.
pub fn render_violin(
    matrix: &ExpressionMatrix,
    spec: &ChartSpec,
) -> Result<SvgDocument, RenderError> {
    spec.check(ChartKind::Violin)?;
    if matrix.entries.is_empty() {
        return Err(RenderError::Empty("expression matrix has no entries"));
    }
    let curves = matrix
        .entries
        .iter()
        .map(|e| kde_density(&e.samples, spec.scale))
        .collect::<Result<Vec<_>, _>>()?;

    let area = PlotArea::for_chart(spec.width(), spec.height());
    let y_map = vertical_axis(
        &area,
        spec.scale,
        curves.iter().flat_map(|c| c.grid.iter().copied()),
    );
    let (centers, slot) = slot_centers(&area, curves.len());
    let peak = curves
        .iter()
        .flat_map(|c| c.density.iter().copied())
        .fold(0.0, f64::max);
    let max_half = slot * VIOLIN_HALF_WIDTH_FRACTION;

    let mut w = SvgWriter::new(spec.width(), spec.height());
    w.open_group("data");
    for (curve, &cx) in curves.iter().zip(&centers) {
        let halves: Vec<(f64, f64)> = curve
            .grid
            .iter()
            .zip(&curve.density)
            .map(|(&g, &d)| {
                (
                    y_map.to_px(g),
                    (d / peak * max_half * 1000.0).round() / 1000.0,
                )
            })
            .collect();
        let points: Vec<(f64, f64)> = halves
            .iter()
            .map(|&(y, h)| (cx + h, y))
            .chain(halves.iter().rev().map(|&(y, h)| (cx - h, y)))
            .collect();
        w.polygon(
            &points,
            &[
                ("class", "violin".into()),
                ("fill", FILL_COLOR.into()),
                ("stroke", MARK_COLOR.into()),
                ("stroke-width", 1.0.into()),
            ],
        );
    }
    w.close_group();
    finish(w, &area, y_map, &centers, matrix.entry_labels(), spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stats::FiveNumberSummary;

    fn fc(v: f64) -> FoldChange {
        FoldChange::new(v).unwrap()
    }

    #[test]
    fn errorbar_requires_groups() {
        assert!(matches!(
            render_errorbar(&[], &ChartSpec::new(ChartKind::ErrorBar)),
            Err(RenderError::Empty(_))
        ));
    }

    #[test]
    fn zero_width_interval_degenerates_to_marker() {
        let g = GroupSummary::new("a", fc(2.0), fc(2.0), fc(2.0), "ci").unwrap();
        let doc = render_errorbar(&[g], &ChartSpec::new(ChartKind::ErrorBar)).unwrap();
        let bar = doc
            .svg
            .lines()
            .find(|l| l.contains("class=\"bar\""))
            .unwrap();
        let attr = |name: &str| {
            let start = bar.find(&format!(" {name}=\"")).unwrap() + name.len() + 3;
            bar[start..].split('"').next().unwrap().to_string()
        };
        assert_eq!(attr("y1"), attr("y2"));
    }

    #[test]
    fn constant_group_gives_flat_box() {
        let s = FiveNumberSummary {
            min: fc(2.0),
            q1: fc(2.0),
            median: fc(2.0),
            q3: fc(2.0),
            max: fc(2.0),
        };
        let doc = render_box(
            &[BoxGroup {
                label: "c".into(),
                summary: s,
            }],
            &ChartSpec::new(ChartKind::Box),
        )
        .unwrap();
        assert!(doc.svg.contains("height=\"0.000\""));
    }

    #[test]
    fn violin_propagates_degenerate_input() {
        let matrix = crate::ingest::parse_expression_matrix(
            b"gene,group,s1,s2,s3,s4,s5\nA,x,2,2,2,2,2\n",
            b',',
        )
        .unwrap();
        assert!(matches!(
            render_violin(&matrix, &ChartSpec::new(ChartKind::Violin)),
            Err(RenderError::Stats(_))
        ));
    }
}
