use proptest::prelude::*;
use ptq_core::experiment::{
    estimate_confusion_of, exact_probabilities, sample_counts, sweep, BackendConfig, BackendKind, ConfusionMatrix,
    Grid, StreamKey,
};
use ptq_core::pt_model::{self, PTParams};

fn small_grid() -> Grid {
    Grid { r_min: 0.0, r_max: 1.2, r_steps: 7, t_min: 0.0, t_max: 5.0, t_steps: 11 }
}

#[test]
fn theory_sweep_matches_closed_form() {
    let pts = sweep(&Grid::default(), &BackendConfig::theory()).unwrap();
    assert_eq!(pts.len(), 61 * 101);
    for p in &pts {
        let want = pt_model::return_probability(&PTParams::new(p.r, p.t).unwrap());
        assert!((p.p_exact[0] - want).abs() < 1e-12, "r={} t={}", p.r, p.t);
        assert_eq!(p.counts.iter().sum::<u64>(), p.shots);
    }
}

#[test]
fn noiseless_hardware_sweeps_reduce_to_theory() {
    let theory = sweep(&small_grid(), &BackendConfig::theory()).unwrap();
    for kind in [BackendKind::Ion, BackendKind::Transmon] {
        let pts = sweep(&small_grid(), &BackendConfig::for_kind(kind).noiseless()).unwrap();
        for (a, b) in pts.iter().zip(&theory) {
            for k in 0..3 {
                assert!((a.p_exact[k] - b.p_exact[k]).abs() < 1e-10);
            }
        }
    }
}

#[test]
fn postselected_counts_are_consistent() {
    let pts = sweep(&small_grid(), &BackendConfig::transmon()).unwrap();
    for p in &pts {
        let kept = p.counts[0] + p.counts[1];
        assert_eq!(p.postselect_kept, kept);
        match p.p0_postselected {
            Some(v) => assert_eq!(v, p.counts[0] as f64 / kept as f64),
            None => assert_eq!(kept, 0),
        }
    }
}

#[test]
fn ion_columns_keep_their_ion() {
    let grid = small_grid();
    let pts = sweep(&grid, &BackendConfig::ion()).unwrap();
    for j in 0..grid.t_steps {
        let ions: Vec<_> = (0..grid.r_steps).map(|i| pts[i * grid.t_steps + j].ion).collect();
        assert!(ions.iter().all(|&x| x == Some(j % 5)));
    }
}

#[test]
fn calibration_converges() {
    let truth = ConfusionMatrix::transmon_default();
    let est = estimate_confusion_of(&truth, 1_000_000, 17).unwrap();
    assert!(est.max_abs_diff(&truth) < 0.003);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn counts_sum_to_shots(a in 0.0f64..1.0, b in 0.0f64..1.0, shots in 1u64..5000, seed in any::<u64>()) {
        let total = 1.0 + a + b;
        let probs = [1.0 / total, a / total, b / total];
        let c = sample_counts(&probs, shots, StreamKey::grid(seed, 1, 2)).unwrap();
        prop_assert_eq!(c.iter().sum::<u64>(), shots);
        prop_assert_eq!(c, sample_counts(&probs, shots, StreamKey::grid(seed, 1, 2)).unwrap());
    }

    #[test]
    fn observed_distributions_are_normalised(r in 0.0f64..2.0, t in 0.0f64..8.0, ion in 0usize..5) {
        let p = PTParams::new(r, t).unwrap();
        for backend in [BackendConfig::theory(), BackendConfig::ion(), BackendConfig::transmon()] {
            let probs = exact_probabilities(&p, &backend, Some(ion)).unwrap();
            prop_assert!((probs.iter().sum::<f64>() - 1.0).abs() < 1e-12);
            prop_assert!(probs.iter().all(|&x| x >= -1e-15));
        }
    }

    #[test]
    fn confusion_mixing_preserves_probability(f in 0.0f64..1.0, x in 0.0f64..1.0, y in 0.0f64..1.0) {
        let total = 1.0 + x + y;
        let p = [1.0 / total, x / total, y / total];
        let out = ConfusionMatrix::uniform(f).apply(&p);
        prop_assert!((out.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }
}
