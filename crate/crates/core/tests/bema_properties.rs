mod common;

use mpsplit_core::bema::edge_fluctuation_scale;
use mpsplit_core::tw::tw1_quantile;
use mpsplit_core::{
    bema_fit, gen_spiked, goodness_of_fit, spike_count, symmetrized_spectrum, BemaConfig,
    DeterministicPart, Esd, SpikedMatrixSpec,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn pure_noise_recovers_unit_variance_and_edge() {
    let esd = symmetrized_spectrum(&common::gaussian(1000, 1000, 21)).unwrap();
    let fit = bema_fit(&esd, BemaConfig::default()).unwrap();
    assert!((fit.sigma_hat_sq - 1.0).abs() < 0.05, "{}", fit.sigma_hat_sq);
    assert!((fit.lambda_plus - 4.0).abs() < 0.4, "{}", fit.lambda_plus);
    let report = goodness_of_fit(&esd, &fit, 0.05).unwrap();
    assert!(report.passed, "s = {}", report.s_statistic);
}

#[test]
fn rank_one_spike_is_isolated() {
    let n = 500;
    let noise = SpikedMatrixSpec::new(n, 5, 1.0, DeterministicPart::None).unwrap();
    let spiked = SpikedMatrixSpec::new(n, 5, 1.0, DeterministicPart::RankOne { theta: 50.0 }).unwrap();
    let pure = symmetrized_spectrum(&gen_spiked(&noise).unwrap()).unwrap();
    let esd = symmetrized_spectrum(&gen_spiked(&spiked).unwrap()).unwrap();
    let cfg = BemaConfig::default();
    let base = bema_fit(&pure, cfg).unwrap();
    let fit = bema_fit(&esd, cfg).unwrap();
    assert_eq!(spike_count(&esd, &fit), 1);
    assert!((fit.lambda_plus / base.lambda_plus - 1.0).abs() < 0.15);
}

#[test]
fn high_beta_rarely_reports_spikes_on_noise() {
    let cfg = BemaConfig::new(0.25, 0.9).unwrap();
    let clean = (0..100)
        .filter(|&seed| {
            let esd = symmetrized_spectrum(&common::gaussian(500, 500, 1000 + seed)).unwrap();
            spike_count(&esd, &bema_fit(&esd, cfg).unwrap()) == 0
        })
        .count();
    assert!(clean >= 80, "{clean}/100 runs without spikes");
}

#[test]
fn uniform_spectrum_fails_fit_test() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let eig: Vec<f64> = (0..1000).map(|_| rng.random_range(0.0..8.0)).collect();
    let esd = Esd::from_eigenvalues(eig, 1000).unwrap();
    let fit = bema_fit(&esd, BemaConfig::default()).unwrap();
    let report = goodness_of_fit(&esd, &fit, 0.1).unwrap();
    assert!(!report.passed && report.s_statistic > 0.1, "s = {}", report.s_statistic);
}

#[test]
fn square_case_is_the_literal_formula() {
    for (n, seed, beta) in [(200, 1, 0.5), (300, 2, 0.1), (150, 3, 0.95)] {
        let esd = symmetrized_spectrum(&common::gaussian(n, n, seed)).unwrap();
        let cfg = BemaConfig::new(0.25, beta).unwrap();
        let fit = bema_fit(&esd, cfg).unwrap();
        let t = tw1_quantile(beta).unwrap();
        let literal = fit.sigma_hat_sq * (4.0 + 2f64.powf(4.0 / 3.0) * t * (n as f64).powf(-2.0 / 3.0));
        assert!((fit.lambda_plus - literal).abs() <= 1e-12 * literal);
        assert!((edge_fluctuation_scale(n, n) - 2f64.powf(4.0 / 3.0) * (n as f64).powf(-2.0 / 3.0)).abs() < 1e-15);
    }
}

#[test]
fn edge_grows_with_beta() {
    let esd = symmetrized_spectrum(&common::gaussian(300, 300, 8)).unwrap();
    let mut prev_edge = f64::NEG_INFINITY;
    let mut prev_spikes = usize::MAX;
    for k in 1..20 {
        let fit = bema_fit(&esd, BemaConfig::new(0.25, k as f64 / 20.0).unwrap()).unwrap();
        assert!(fit.lambda_plus > prev_edge);
        let spikes = spike_count(&esd, &fit);
        assert!(spikes <= prev_spikes);
        prev_edge = fit.lambda_plus;
        prev_spikes = spikes;
    }
}

#[test]
fn zero_spectrum_counts_no_spikes_but_cannot_be_fitted() {
    let esd = Esd::from_eigenvalues(vec![0.0; 40], 40).unwrap();
    assert!(bema_fit(&esd, BemaConfig::default()).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn scale_equivariance(seed in any::<u64>(), k in -4i32..=4) {
        let t = 2f64.powi(k);
        let w = common::uniform_matrix(60, 80, seed);
        let esd = symmetrized_spectrum(&w).unwrap();
        let scaled = esd.scaled(t * t);
        let cfg = BemaConfig::default();
        let a = bema_fit(&esd, cfg).unwrap();
        let b = bema_fit(&scaled, cfg).unwrap();
        prop_assert_eq!(b.sigma_hat_sq, t * t * a.sigma_hat_sq);
        prop_assert_eq!(b.lambda_plus, t * t * a.lambda_plus);
        prop_assert_eq!(spike_count(&esd, &a), spike_count(&scaled, &b));
    }

    #[test]
    fn fit_statistic_bounded_and_monotone_in_gamma(seed in any::<u64>(), g1 in 0.0f64..0.5, g2 in 0.0f64..0.5) {
        let esd = symmetrized_spectrum(&common::uniform_matrix(40, 50, seed)).unwrap();
        let fit = bema_fit(&esd, BemaConfig::default()).unwrap();
        let (lo, hi) = if g1 <= g2 { (g1, g2) } else { (g2, g1) };
        let a = goodness_of_fit(&esd, &fit, lo).unwrap();
        let b = goodness_of_fit(&esd, &fit, hi).unwrap();
        prop_assert!((0.0..=1.0).contains(&a.s_statistic));
        prop_assert!(!a.passed || b.passed);
        prop_assert_eq!(a.passed, a.s_statistic <= lo);
        prop_assert!(a.i_low < a.i_high && a.i_high <= esd.len());
    }
}
