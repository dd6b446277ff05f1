use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ptq_core::block_encoding::{general_dilation, rescale_to_contraction, MatN};
use ptq_core::{Error, C64};

fn random_matrix(n: usize, rng: &mut ChaCha8Rng) -> MatN {
    MatN::from_fn(n, |_, _| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
}

/// Random unitary from the eigenvectors of a random Hermitian matrix.
fn random_unitary(n: usize, rng: &mut ChaCha8Rng) -> MatN {
    let g = random_matrix(n, rng);
    let h = MatN::from_fn(n, |i, j| g[(i, j)] + g[(j, i)].conj());
    h.eigh().1
}

fn rank_of_defect(a: &MatN) -> usize {
    let n = a.dim();
    let d = &MatN::identity(n) - &(&a.dagger() * a);
    d.eigh().0.iter().filter(|&&l| l > 1e-12).count()
}

#[test]
fn random_contractions_dilate_exactly() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst_u: f64 = 0.0;
    let mut worst_b: f64 = 0.0;
    for trial in 0..200 {
        let n = 1 + trial % 4;
        let (a, _) = rescale_to_contraction(&random_matrix(n, &mut rng)).unwrap();
        let m = rank_of_defect(&a);
        let d = general_dilation(&a, m).unwrap();
        assert_eq!(d.u.dim(), n + m);
        worst_u = worst_u.max(d.unitarity_defect());
        worst_b = worst_b.max(d.block_defect(&a));
    }
    assert!(worst_u < 1e-10, "unitarity defect {worst_u}");
    assert!(worst_b < 1e-10, "block defect {worst_b}");
}

#[test]
fn prescribed_singular_values() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for n in 1..=5 {
        let sig: Vec<f64> = (0..n).map(|k| if k == 0 { 1.0 } else { rng.random_range(0.05..1.0) }).collect();
        let (u, w) = (random_unitary(n, &mut rng), random_unitary(n, &mut rng));
        let a = &(&u * &MatN::diag_real(&sig)) * &w.dagger();
        assert_eq!(rank_of_defect(&a), n - 1);
        let d = general_dilation(&a, n - 1).unwrap();
        assert!(d.unitarity_defect() < 1e-10);
        assert!(d.block_defect(&a) < 1e-12);
        assert!(matches!(general_dilation(&a, n.saturating_sub(2)), Err(Error::RankTooLarge { .. })) || n == 1);
    }
}

#[test]
fn violating_inputs_are_refused() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (a, _) = rescale_to_contraction(&random_matrix(3, &mut rng)).unwrap();
    let too_big = a.scale_re(1.01);
    assert!(matches!(general_dilation(&too_big, 3), Err(Error::NormTooLarge(_))));
    let half = MatN::identity(4).scale_re(0.5);
    assert_eq!(general_dilation(&half, 3), Err(Error::RankTooLarge { rank: 4, m: 3 }));
    // A unitary needs nothing, a generic contraction does.
    assert!(general_dilation(&random_unitary(4, &mut rng), 0).is_ok());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn extra_auxiliary_dimensions_are_harmless(seed in any::<u64>(), n in 1usize..=4, extra in 0usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, sigma) = rescale_to_contraction(&random_matrix(n, &mut rng)).unwrap();
        prop_assume!(sigma > 1e-3);
        let m = rank_of_defect(&a) + extra;
        match general_dilation(&a, m) {
            Ok(d) => {
                prop_assert!(d.unitarity_defect() < 1e-9);
                prop_assert!(d.block_defect(&a) < 1e-12);
            }
            // Near-singular draws are allowed to be refused, nothing else.
            Err(Error::Singular(_)) => {}
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }
}
