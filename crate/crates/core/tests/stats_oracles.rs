use madfc::stats::{
    fold_change_of_groups, interval_from_fcz, kde_density, quantile_summary, SampleSet,
    KDE_GRID_POINTS,
};
use madfc::transform::{mad_forward, mad_inverse, FoldChange, MadValue, ScaleKind};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

fn mad_samples(z: &[f64]) -> SampleSet {
    let values = z
        .iter()
        .map(|&t| mad_inverse(MadValue::new(t).unwrap()).get())
        .collect();
    SampleSet::new("z", values).unwrap()
}

fn normals(n: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| rng.sample(StandardNormal)).collect()
}

// Independent type 7 quantile: position (n-1)p, linear interpolation between
// the neighbouring order statistics.
fn oracle_quantile(values: &[f64], p: f64) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let pos = p * (v.len() - 1) as f64;
    let i = pos as usize;
    if i + 1 >= v.len() {
        return v[v.len() - 1];
    }
    v[i] * (1.0 - (pos - i as f64)) + v[i + 1] * (pos - i as f64)
}

#[test]
fn quantiles_match_sort_oracle_and_uniform_truth() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let values: Vec<f64> = (0..10_000).map(|_| rng.random_range(1e-9..1.0)).collect();
    let s = quantile_summary(&SampleSet::new("u", values.clone()).unwrap()).unwrap();
    for (got, p) in s.as_array().iter().zip([0.0, 0.25, 0.5, 0.75, 1.0]) {
        assert!(
            (got.get() - oracle_quantile(&values, p)).abs() < 1e-12,
            "p={p}"
        );
        assert!((got.get() - p).abs() < 0.05, "p={p}: {}", got.get());
    }
    assert!(s.is_ordered());
}

#[test]
fn quantiles_of_small_sample() {
    let s = quantile_summary(&SampleSet::new("s", vec![5.0, 1.0, 4.0, 2.0, 3.0]).unwrap()).unwrap();
    let got: Vec<f64> = s.as_array().iter().map(|x| x.get()).collect();
    assert_eq!(got, [1.0, 2.0, 3.0, 4.0, 5.0]);
    assert!(quantile_summary(&SampleSet::new("s", vec![1.0; 4]).unwrap()).is_err());
}

#[test]
fn kde_of_standard_normal_peaks_near_one_over_root_two_pi() {
    let curve = kde_density(&mad_samples(&normals(10_000, 3)), ScaleKind::MadFc).unwrap();
    assert_eq!(curve.grid.len(), KDE_GRID_POINTS);
    let peak = curve.density.iter().copied().fold(0.0, f64::max);
    assert!((peak - 0.3989).abs() < 0.02, "peak {peak}");
    assert!((curve.integral() - 1.0).abs() < 1e-9);
}

#[test]
fn kde_of_mirrored_samples_is_symmetric() {
    let z = normals(400, 5);
    let mirrored: Vec<f64> = z.iter().flat_map(|&t| [t, -t]).collect();
    let curve = kde_density(&mad_samples(&mirrored), ScaleKind::MadFc).unwrap();
    let n = curve.density.len();
    for i in 0..n {
        assert!(
            (curve.density[i] - curve.density[n - 1 - i]).abs() < 1e-9,
            "i={i}"
        );
        assert!(
            (curve.grid[i] + curve.grid[n - 1 - i]).abs() < 1e-9,
            "i={i}"
        );
    }
}

#[test]
fn kde_is_translation_invariant_in_mad_space() {
    let z = normals(300, 9);
    let shifted: Vec<f64> = z.iter().map(|t| t + 3.0).collect();
    let a = kde_density(&mad_samples(&z), ScaleKind::MadFc).unwrap();
    let b = kde_density(&mad_samples(&shifted), ScaleKind::MadFc).unwrap();
    assert!((a.bandwidth - b.bandwidth).abs() < 1e-9);
    for i in 0..a.grid.len() {
        assert!((b.grid[i] - a.grid[i] - 3.0).abs() < 1e-9);
        assert!((a.density[i] - b.density[i]).abs() < 1e-9);
    }
}

#[test]
fn kde_rejects_constant_and_tiny_samples() {
    assert!(kde_density(
        &SampleSet::new("c", vec![2.0; 10]).unwrap(),
        ScaleKind::MadFc
    )
    .is_err());
    assert!(kde_density(
        &SampleSet::new("t", vec![1.0, 2.0]).unwrap(),
        ScaleKind::Log2
    )
    .is_err());
}

#[test]
fn intervals_have_constant_mad_width() {
    for x in [1.0 / 7.0, 0.5, 1.0, 1.5, 3.0, 40.0] {
        let fc = FoldChange::new(x).unwrap();
        let (lo, hi) = interval_from_fcz(fc, 2.0).unwrap();
        let width = mad_forward(hi).get() - mad_forward(lo).get();
        assert!((width - 4.0).abs() < 1e-12, "{x}: {width}");
    }
    let (lo, hi) = interval_from_fcz(FoldChange::new(0.5).unwrap(), 1.0).unwrap();
    assert_eq!((lo.get(), hi.get()), (1.0 / 3.0, 1.0));
    assert!(interval_from_fcz(FoldChange::ONE, -1.0).is_err());
}

#[test]
fn group_fold_change_is_ratio_of_means() {
    let exp = SampleSet::new("e", vec![4.0, 6.0]).unwrap();
    let ctl = SampleSet::new("c", vec![2.0, 3.0]).unwrap();
    assert_eq!(fold_change_of_groups(&exp, &ctl).unwrap().get(), 2.0);
    assert_eq!(fold_change_of_groups(&ctl, &exp).unwrap().get(), 0.5);
}
