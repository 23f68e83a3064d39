use madfc::transform::{
    contraction_transform, inverse_contraction, inverse_mirror, mad_forward, mad_inverse,
    mirror_transform, scale_forward, scale_inverse, FoldChange, MadValue, ScaleKind,
};
use proptest::prelude::*;

fn fc(v: f64) -> FoldChange {
    FoldChange::new(v).unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs())
    }
}

// Log-uniform fold changes over eight orders of magnitude.
fn fold_change() -> impl Strategy<Value = f64> {
    (-4.0f64..4.0).prop_map(|e| 10f64.powf(e))
}

proptest! {
    #[test]
    fn round_trip(x in fold_change()) {
        prop_assert!(rel(mad_inverse(mad_forward(fc(x))).get(), x) < 1e-12);
    }

    #[test]
    fn inverse_then_forward(t in -1e4f64..1e4) {
        let back = mad_forward(mad_inverse(MadValue::new(t).unwrap())).get();
        prop_assert!((back - t).abs() <= 1e-12 * t.abs().max(1.0));
    }

    #[test]
    fn reciprocals_are_symmetric(x in fold_change()) {
        let a = mad_forward(fc(x)).get();
        let b = mad_forward(fc(1.0 / x)).get();
        prop_assert!(rel(a, -b) < 1e-12, "{x}: {a} vs {b}");
    }

    #[test]
    fn proportional_above_one(x in 1.0001f64..1e4, y in 1.0001f64..1e4) {
        let ratio = mad_forward(fc(x)).get() / mad_forward(fc(y)).get();
        prop_assert!(rel(ratio, (x - 1.0) / (y - 1.0)) < 1e-12);
    }

    #[test]
    fn strictly_increasing(a in fold_change(), b in fold_change()) {
        prop_assume!(a < b);
        for scale in ScaleKind::ALL {
            prop_assert!(scale_forward(scale, fc(a)) < scale_forward(scale, fc(b)), "{scale}");
        }
    }

    #[test]
    fn composition_matches_forward(x in fold_change()) {
        let via_parts = contraction_transform(mirror_transform(fc(x))).unwrap();
        prop_assert_eq!(via_parts, mad_forward(fc(x)).get());
        let back = inverse_mirror(inverse_contraction(mad_forward(fc(x)))).unwrap();
        prop_assert_eq!(back, mad_inverse(mad_forward(fc(x))));
    }

    #[test]
    fn every_coordinate_has_a_fold_change(t in -1e4f64..1e4) {
        // No gap in MAD space: every real coordinate inverts to a positive fold change.
        let x = mad_inverse(MadValue::new(t).unwrap()).get();
        prop_assert!(x > 0.0 && x.is_finite());
    }

    #[test]
    fn scale_inverse_round_trips(x in fold_change()) {
        for scale in ScaleKind::ALL {
            let back = scale_inverse(scale, scale_forward(scale, fc(x))).unwrap().get();
            prop_assert!(rel(back, x) < 1e-12, "{scale}: {x} -> {back}");
        }
    }
}

#[test]
fn continuous_at_no_change() {
    for eps in [1e-3, 1e-6, 1e-9, 1e-12] {
        assert!(mad_forward(fc(1.0 + eps)).get().abs() < 2.0 * eps);
        assert!(mad_forward(fc(1.0 - eps)).get().abs() < 2.0 * eps);
    }
    assert_eq!(mad_forward(FoldChange::ONE).get(), 0.0);
}

#[test]
fn reference_coordinates() {
    assert_eq!(scale_forward(ScaleKind::Log2, FoldChange::ONE), 0.0);
    assert_eq!(scale_forward(ScaleKind::Linear, FoldChange::ONE), 1.0);
    assert_eq!(scale_forward(ScaleKind::MadFc, FoldChange::ONE), 0.0);
}

#[test]
fn integer_coordinates_hit_exact_fractions() {
    for n in 1..=48 {
        let up = mad_inverse(MadValue::new(n as f64).unwrap()).get();
        let down = mad_inverse(MadValue::new(-(n as f64)).unwrap()).get();
        assert_eq!(up, (n + 1) as f64);
        assert_eq!(down, 1.0 / (n + 1) as f64);
    }
}

#[test]
fn domain_errors() {
    assert!(FoldChange::new(0.0).is_err());
    assert!(FoldChange::new(-2.0).is_err());
    assert!(FoldChange::new(f64::NAN).is_err());
    assert!(FoldChange::new(f64::INFINITY).is_err());
    assert!(contraction_transform(0.5).is_err());
    assert!(inverse_mirror(0.5).is_err());
    assert!(scale_inverse(ScaleKind::Linear, 0.0).is_err());
}
