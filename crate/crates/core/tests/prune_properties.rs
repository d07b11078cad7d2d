mod common;

use mpsplit_core::prune::{split_at_rank, truncation_error_sq};
use mpsplit_core::{
    bema_fit, decompose, goodness_of_fit, plan_split, symmetrized_spectrum, BemaConfig, Matrix,
};
use proptest::prelude::*;

fn relative_frobenius(a: &Matrix, b: &Matrix) -> f64 {
    a.sub(b).unwrap().frobenius_norm() / b.frobenius_norm()
}

#[test]
fn random_matrix_reconstructs() {
    let w = common::gaussian(50, 30, 7);
    let svd = decompose(&w).unwrap();
    assert_eq!(svd.singular_values.len(), 30);
    assert!(svd.singular_values.windows(2).all(|p| p[0] >= p[1]));
    assert!(relative_frobenius(&svd.reconstruct(), &w) <= 1e-8);
    let u = &svd.u;
    let utu = u.transpose().matmul(u).unwrap();
    assert!(relative_frobenius(&utu, &Matrix::identity(50)) < 1e-10);
}

#[test]
fn eckart_young_on_100_by_60() {
    let w = common::gaussian(100, 60, 8);
    let sv = decompose(&w).unwrap().singular_values;
    let bias = vec![0.0; 100];
    let result = split_at_rank(&w, &bias, 10).unwrap();
    assert_eq!((result.w_first.rows(), result.w_first.cols()), (10, 60));
    assert_eq!((result.w_second.rows(), result.w_second.cols()), (100, 10));
    let expected: f64 = sv[10..].iter().map(|s| s * s).sum();
    let got = truncation_error_sq(&w, &result);
    assert!((got - expected).abs() <= 1e-6 * expected);
    let direct = w.sub(&result.product()).unwrap().frobenius_norm_sq();
    assert!((direct - expected).abs() <= 1e-6 * expected);
}

#[test]
fn full_rank_split_is_exact() {
    let w = common::gaussian(40, 25, 9);
    let result = split_at_rank(&w, &vec![0.5; 40], 25).unwrap();
    assert!(relative_frobenius(&result.product(), &w) <= 1e-8);
}

#[test]
fn gram_eigenvalues_match_squared_singular_values() {
    for (rows, cols) in [(80, 50), (50, 80), (64, 64)] {
        let w = common::gaussian(rows, cols, 10);
        let esd = symmetrized_spectrum(&w).unwrap();
        let sv = decompose(&w).unwrap().singular_values;
        let n = rows.max(cols) as f64;
        let m = esd.len();
        for i in 0..m {
            let lambda = esd.eigenvalues()[m - 1 - i];
            let s2 = sv[i] * sv[i];
            assert!((n * lambda - s2).abs() <= 1e-6 * s2);
        }
    }
}

#[test]
fn accepted_splits_shrink_and_obey_eckart_young() {
    let mut w = common::gaussian(120, 200, 11);
    // A few strong directions on top of the noise.
    let spikes = common::gaussian(120, 3, 12)
        .matmul(&common::gaussian(3, 200, 13))
        .unwrap()
        .scaled(0.5);
    for (x, s) in w.as_mut_slice().iter_mut().zip(spikes.as_slice()) {
        *x += s;
    }
    let esd = symmetrized_spectrum(&w).unwrap();
    let bema = bema_fit(&esd, BemaConfig::default()).unwrap();
    let fit = goodness_of_fit(&esd, &bema, 0.1).unwrap();
    let decision = plan_split(&w, &esd, &bema, &fit, 0.45).unwrap();
    assert!(decision.accepted);
    assert_eq!(decision.n_spikes + decision.n_small, 120);
    assert!(decision.params_after < decision.params_before);
    let result = mpsplit_core::split(&w, &vec![0.0; 120], &decision).unwrap();
    let sv = decompose(&w).unwrap().singular_values;
    let expected: f64 = sv[decision.rank_kept..].iter().map(|s| s * s).sum();
    assert!((truncation_error_sq(&w, &result) - expected).abs() <= 1e-6 * expected);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn rank_nonincreasing_in_removal_fraction(seed in any::<u64>(), a in 0.0f64..0.99, b in 0.0f64..0.99) {
        let w = common::uniform_matrix(30, 45, seed);
        let esd = symmetrized_spectrum(&w).unwrap();
        let bema = bema_fit(&esd, BemaConfig::default()).unwrap();
        let fit = goodness_of_fit(&esd, &bema, 0.5).unwrap();
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let r_lo = plan_split(&w, &esd, &bema, &fit, lo).unwrap();
        let r_hi = plan_split(&w, &esd, &bema, &fit, hi).unwrap();
        prop_assert!(r_hi.rank_kept <= r_lo.rank_kept);
        for d in [&r_lo, &r_hi] {
            prop_assert_eq!(d.rank_kept, d.n_spikes + d.n_small - d.dropped());
            prop_assert!(!d.accepted || (d.params_after < d.params_before && d.fit.passed));
        }
    }
}
