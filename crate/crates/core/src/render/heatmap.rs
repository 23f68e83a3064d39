//! Heatmap of a fold-change table with a diverging colour legend.

use super::axis::fold_change_ticks;
use super::color::{map_color, ramp_color};
use super::svg::SvgWriter;
use super::{ChartKind, ChartSpec, RenderError, SvgDocument};
use crate::ingest::HeatmapTable;
use crate::transform::scale_forward;

const LEGEND_STEPS: usize = 64;
const LEGEND_WIDTH: f64 = 18.0;

/// One `cell` rect per table entry, coloured by [`map_color`] with the limit
/// set to the largest distance from no change in the table. The legend on the
/// right spans `reference ± limit` with fold-change ticks.
pub fn render_heatmap(table: &HeatmapTable, spec: &ChartSpec) -> Result<SvgDocument, RenderError> {
    spec.check(ChartKind::Heatmap)?;
    if table.is_empty() {
        return Err(RenderError::Empty("heatmap table has no cells"));
    }
    let scale = spec.scale;
    let reference = scale.reference();
    let limit = table
        .fold_changes()
        .map(|x| (scale_forward(scale, x) - reference).abs())
        .fold(0.0, f64::max);
    let limit = if limit > 0.0 { limit } else { 1.0 };

    let (width, height) = (spec.width(), spec.height());
    let (left, top, right, bottom) = (100.0, 50.0, width - 120.0, height - 60.0);
    let rows = table.cells.len();
    let cols = table.column_labels.len();
    let cell_w = (right - left) / cols as f64;
    let cell_h = (bottom - top) / rows as f64;

    let mut w = SvgWriter::new(width, height);
    w.open_group("data");
    for (r, row) in table.cells.iter().enumerate() {
        for (c, &fc) in row.iter().enumerate() {
            let fill = map_color(fc, scale, limit)?.to_string();
            w.element(
                "rect",
                &[
                    ("class", "cell".into()),
                    ("x", (left + c as f64 * cell_w).into()),
                    ("y", (top + r as f64 * cell_h).into()),
                    ("width", cell_w.into()),
                    ("height", cell_h.into()),
                    ("fill", fill.as_str().into()),
                ],
            );
        }
    }
    w.close_group();

    // Legend: top is +limit, bottom is -limit.
    let legend_x = width - 90.0;
    let to_px = |offset: f64| top + (limit - offset) / (2.0 * limit) * (bottom - top);
    let step_h = (bottom - top) / LEGEND_STEPS as f64;
    w.open_group("axes");
    for i in 0..LEGEND_STEPS {
        // Colour at the centre of each step, from top (+1) to bottom (-1).
        let t = 1.0 - (2.0 * i as f64 + 1.0) / LEGEND_STEPS as f64;
        let fill = ramp_color(t).to_string();
        w.element(
            "rect",
            &[
                ("class", "legend-step".into()),
                ("x", legend_x.into()),
                ("y", (top + i as f64 * step_h).into()),
                ("width", LEGEND_WIDTH.into()),
                ("height", step_h.into()),
                ("fill", fill.as_str().into()),
            ],
        );
    }
    w.element(
        "rect",
        &[
            ("class", "frame".into()),
            ("x", legend_x.into()),
            ("y", top.into()),
            ("width", LEGEND_WIDTH.into()),
            ("height", (bottom - top).into()),
            ("fill", "none".into()),
            ("stroke", "#333333".into()),
        ],
    );
    let ticks = fold_change_ticks(
        scale,
        (reference - limit, reference + limit),
        spec.label_format,
        spec.digits,
    )?;
    for &pos in &ticks.positions {
        let y = to_px(pos - reference);
        w.element(
            "line",
            &[
                ("class", "tick".into()),
                ("x1", (legend_x + LEGEND_WIDTH).into()),
                ("y1", y.into()),
                ("x2", (legend_x + LEGEND_WIDTH + 4.0).into()),
                ("y2", y.into()),
                ("stroke", "#333333".into()),
            ],
        );
    }
    w.close_group();

    w.open_group("labels");
    for (pos, label) in ticks.iter() {
        w.text(
            label,
            &[
                ("class", "tick-label".into()),
                ("x", (legend_x + LEGEND_WIDTH + 7.0).into()),
                ("y", (to_px(pos - reference) + 4.0).into()),
                ("font-size", 11.0.into()),
            ],
        );
    }
    for (r, label) in table.row_labels.iter().enumerate() {
        w.text(
            label,
            &[
                ("class", "row-label".into()),
                ("x", (left - 6.0).into()),
                ("y", (top + (r as f64 + 0.5) * cell_h + 4.0).into()),
                ("text-anchor", "end".into()),
                ("font-size", 11.0.into()),
            ],
        );
    }
    for (c, label) in table.column_labels.iter().enumerate() {
        w.text(
            label,
            &[
                ("class", "column-label".into()),
                ("x", (left + (c as f64 + 0.5) * cell_w).into()),
                ("y", (bottom + 18.0).into()),
                ("text-anchor", "middle".into()),
                ("font-size", 11.0.into()),
            ],
        );
    }
    w.text(
        scale.axis_title(),
        &[
            ("class", "axis-title".into()),
            ("x", (legend_x + LEGEND_WIDTH / 2.0).into()),
            ("y", (top - 10.0).into()),
            ("text-anchor", "middle".into()),
            ("font-size", 11.0.into()),
        ],
    );
    if !spec.title.is_empty() {
        w.text(
            &spec.title,
            &[
                ("class", "title".into()),
                ("x", (width / 2.0).into()),
                ("y", 28.0.into()),
                ("text-anchor", "middle".into()),
                ("font-size", 16.0.into()),
            ],
        );
    }
    w.close_group();

    Ok(SvgDocument {
        svg: w.finish(),
        warnings: Vec::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transform::{FoldChange, ScaleKind};

    fn table() -> HeatmapTable {
        let fc = |v: f64| FoldChange::new(v).unwrap();
        HeatmapTable {
            row_labels: vec!["a".into(), "b".into()],
            column_labels: vec!["x".into(), "y".into(), "z".into()],
            cells: vec![
                vec![fc(1.0), fc(2.0), fc(0.5)],
                vec![fc(4.0), fc(0.25), fc(1.0)],
            ],
        }
    }

    #[test]
    fn one_rect_per_cell_and_white_at_no_change() {
        for scale in ScaleKind::ALL {
            let doc = render_heatmap(
                &table(),
                &ChartSpec::new(ChartKind::Heatmap).with_scale(scale),
            )
            .unwrap();
            let cells: Vec<&str> = doc
                .svg
                .lines()
                .filter(|l| l.contains("class=\"cell\""))
                .collect();
            assert_eq!(cells.len(), 6);
            assert!(cells[0].contains("fill=\"#ffffff\""), "{scale}");
            assert!(cells[5].contains("fill=\"#ffffff\""), "{scale}");
        }
    }

    #[test]
    fn empty_table_is_an_error() {
        assert!(matches!(
            render_heatmap(
                &HeatmapTable::default(),
                &ChartSpec::new(ChartKind::Heatmap)
            ),
            Err(RenderError::Empty(_))
        ));
    }
}
