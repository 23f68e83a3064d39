//! Volcano and MA plots of differential-expression tables.

use super::axis::{fold_change_domain, padded, AxisMap, PlotArea, AXIS_PADDING};
use super::svg::SvgWriter;
use super::{
    draw_axes, draw_labels, AxisSpec, ChartKind, ChartSpec, Orientation, RenderError, SvgDocument,
};
use crate::ingest::DETable;
use crate::transform::scale_forward;

/// Records below this p-value are drawn in the highlight colour.
pub const SIGNIFICANCE_LEVEL: f64 = 0.05;

const POINT_RADIUS: f64 = 3.0;
const SIGNIFICANT_COLOR: &str = "#b2182b";
const BACKGROUND_COLOR: &str = "#7f7f7f";

fn point_color(p_value: f64) -> &'static str {
    if p_value < SIGNIFICANCE_LEVEL {
        SIGNIFICANT_COLOR
    } else {
        BACKGROUND_COLOR
    }
}

/// Replace zero p-values by the smallest positive p-value in the table so
/// `-log10(p)` stays finite.
fn p_values_with_floor(table: &DETable) -> (Vec<f64>, Option<String>) {
    let floor = table
        .records
        .iter()
        .map(|r| r.p_value)
        .filter(|&p| p > 0.0)
        .fold(f64::INFINITY, f64::min);
    let floor = if floor.is_finite() {
        floor
    } else {
        f64::MIN_POSITIVE
    };
    let zeros = table.records.iter().filter(|r| r.p_value <= 0.0).count();
    let ps = table.records.iter().map(|r| r.p_value.max(floor)).collect();
    let warning =
        (zeros > 0).then(|| format!("{zeros} record(s) with p-value 0 drawn at p = {floor:e}"));
    (ps, warning)
}

/// Volcano plot: `x = scale_forward(fc)`, `y = -log10(p)`, one `point` per record
/// and a vertical `reference` line at no change.
pub fn render_volcano(table: &DETable, spec: &ChartSpec) -> Result<SvgDocument, RenderError> {
    spec.check(ChartKind::Volcano)?;
    if table.is_empty() {
        return Err(RenderError::Empty("DE table has no records"));
    }
    let (ps, warning) = p_values_with_floor(table);
    let xs: Vec<f64> = table
        .records
        .iter()
        .map(|r| scale_forward(spec.scale, r.fc))
        .collect();
    let ys: Vec<f64> = ps.iter().map(|p| -p.log10()).collect();

    let area = PlotArea::for_chart(spec.width(), spec.height());
    let x_map = AxisMap::new(
        fold_change_domain(spec.scale, xs.iter().copied()),
        (area.left, area.right),
    );
    let y_max = ys.iter().copied().fold(0.0, f64::max);
    let y_max = if y_max > 0.0 { y_max } else { 1.0 };
    let y_map = AxisMap::new((0.0, y_max * (1.0 + AXIS_PADDING)), (area.bottom, area.top));

    let mut w = SvgWriter::new(spec.width(), spec.height());
    w.open_group("data");
    for ((record, &x), (&y, &p)) in table.records.iter().zip(&xs).zip(ys.iter().zip(&ps)) {
        w.element(
            "circle",
            &[
                ("class", "point".into()),
                ("data-id", record.id.as_str().into()),
                ("cx", x_map.to_px(x).into()),
                ("cy", y_map.to_px(y).into()),
                ("r", POINT_RADIUS.into()),
                ("fill", point_color(p).into()),
                ("fill-opacity", 0.7.into()),
            ],
        );
    }
    w.close_group();

    let x_axis = AxisSpec::fold_change(Orientation::Horizontal, x_map, spec)?;
    let y_axis = AxisSpec::numeric(Orientation::Vertical, y_map, "-log10(p-value)");
    let reference = x_map.to_px(spec.scale.reference());
    draw_axes(
        &mut w,
        &area,
        &[&x_axis, &y_axis],
        Some((Orientation::Vertical, reference)),
    );
    draw_labels(&mut w, &area, &[&x_axis, &y_axis], &[], spec);

    Ok(SvgDocument {
        svg: w.finish(),
        warnings: warning.into_iter().collect(),
    })
}

/// MA plot: `x = log10(base_mean + 1)`, `y = scale_forward(fc)`, with a
/// horizontal `reference` line at no change.
pub fn render_ma(table: &DETable, spec: &ChartSpec) -> Result<SvgDocument, RenderError> {
    spec.check(ChartKind::Ma)?;
    if table.is_empty() {
        return Err(RenderError::Empty("DE table has no records"));
    }
    let xs: Vec<f64> = table
        .records
        .iter()
        .map(|r| (r.base_mean + 1.0).log10())
        .collect();
    let ys: Vec<f64> = table
        .records
        .iter()
        .map(|r| scale_forward(spec.scale, r.fc))
        .collect();

    let area = PlotArea::for_chart(spec.width(), spec.height());
    let (x_lo, x_hi) = xs
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| {
            (lo.min(x), hi.max(x))
        });
    let x_map = AxisMap::new(padded(x_lo, x_hi), (area.left, area.right));
    let y_map = AxisMap::new(
        fold_change_domain(spec.scale, ys.iter().copied()),
        (area.bottom, area.top),
    );

    let mut w = SvgWriter::new(spec.width(), spec.height());
    w.open_group("data");
    for ((record, &x), &y) in table.records.iter().zip(&xs).zip(&ys) {
        w.element(
            "circle",
            &[
                ("class", "point".into()),
                ("data-id", record.id.as_str().into()),
                ("cx", x_map.to_px(x).into()),
                ("cy", y_map.to_px(y).into()),
                ("r", POINT_RADIUS.into()),
                ("fill", point_color(record.p_value).into()),
                ("fill-opacity", 0.7.into()),
            ],
        );
    }
    w.close_group();

    let x_axis = AxisSpec::numeric(Orientation::Horizontal, x_map, "log10(mean count + 1)");
    let y_axis = AxisSpec::fold_change(Orientation::Vertical, y_map, spec)?;
    let reference = y_map.to_px(spec.scale.reference());
    draw_axes(
        &mut w,
        &area,
        &[&x_axis, &y_axis],
        Some((Orientation::Horizontal, reference)),
    );
    draw_labels(&mut w, &area, &[&x_axis, &y_axis], &[], spec);

    Ok(SvgDocument {
        svg: w.finish(),
        warnings: Vec::new(),
    })
}
