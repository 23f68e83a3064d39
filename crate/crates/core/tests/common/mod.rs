//! Helpers shared by the integration tests: SVG attribute scraping and the
//! printed-precision tolerance of tick labels.
#![allow(dead_code)]

use std::collections::HashMap;
use std::path::PathBuf;

use regex::Regex;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

/// Attributes of every element whose `class` is exactly `class`, in document order.
pub fn elements(svg: &str, class: &str) -> Vec<HashMap<String, String>> {
    let attr = Regex::new(r#"([A-Za-z_:][-A-Za-z0-9_:.]*)="([^"]*)""#).unwrap();
    let needle = format!("class=\"{class}\"");
    svg.lines()
        .filter(|l| l.contains(&needle))
        .map(|l| {
            attr.captures_iter(l)
                .map(|c| (c[1].to_string(), c[2].to_string()))
                .collect()
        })
        .collect()
}

pub fn num(el: &HashMap<String, String>, name: &str) -> f64 {
    el.get(name)
        .unwrap_or_else(|| panic!("missing attribute {name}"))
        .parse()
        .unwrap_or_else(|e| panic!("attribute {name}: {e}"))
}

/// `points` attribute of a polygon as (x, y) pairs.
pub fn points(el: &HashMap<String, String>) -> Vec<(f64, f64)> {
    el["points"]
        .split_whitespace()
        .map(|p| {
            let (x, y) = p.split_once(',').unwrap();
            (x.parse().unwrap(), y.parse().unwrap())
        })
        .collect()
}

/// Largest error between a label's value and the fold change it was printed
/// from that the printed form can explain.
///
/// * plain decimals: half a unit in the last printed place;
/// * `p/q` with `q <= 1000`: the closest such fraction is never further than
///   `1/2000` from the value;
/// * `1/d` with `d > 1000`, and `d^-1`: half a unit in the last printed place
///   of `d`, carried through the reciprocal.
pub fn printed_tolerance(label: &str, value: f64) -> f64 {
    fn half_ulp(s: &str) -> f64 {
        match s.split_once('.') {
            Some((_, frac)) => 0.5 * 10f64.powi(-(frac.len() as i32)),
            None => 0.5,
        }
    }
    let slack = 1e-12 * value.abs().max(1e-300);
    if let Some(base) = label.strip_suffix("^-1") {
        let d: f64 = base.parse().unwrap();
        return reciprocal_tolerance(d, half_ulp(base)) + slack;
    }
    if let Some((p, q)) = label.split_once('/') {
        let q_val: f64 = q.parse().unwrap();
        if p == "1" && q_val > 1000.0 {
            return reciprocal_tolerance(q_val, 0.5) + slack;
        }
        return 1.0 / 2000.0 + slack;
    }
    if value >= 1.0 {
        // Shortest round-trip representation: exact.
        return slack;
    }
    half_ulp(label) + slack
}

// |1/d - 1/(d + e)| for |e| <= err, worst case on the side towards zero.
fn reciprocal_tolerance(d: f64, err: f64) -> f64 {
    if d - err <= 0.0 {
        f64::INFINITY
    } else {
        1.0 / (d - err) - 1.0 / d
    }
}
