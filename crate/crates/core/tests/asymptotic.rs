use approx::assert_relative_eq;
use macsic::asymptotic::*;
use macsic::numerics::{gauss_hermite, gaussian_q, QuadratureRule};
use macsic::units::linear_to_db;
use proptest::prelude::*;
use std::sync::OnceLock;

fn rule() -> &'static QuadratureRule {
    static RULE: OnceLock<QuadratureRule> = OnceLock::new();
    RULE.get_or_init(|| gauss_hermite(300).unwrap())
}

fn snr(s: f64) -> EffectiveSnr {
    EffectiveSnr::new(s).unwrap()
}

fn code(bits: u32) -> CodeSpec {
    CodeSpec::new(bits, 1.0).unwrap()
}

#[test]
fn binary_code_reduces_to_pairwise_error() {
    for &s in &[0.0, 1.0, 4.0, 9.0, 25.0] {
        let p = block_error_prob(&code(1), snr(s), rule());
        let closed = gaussian_q((s / 2.0).sqrt()).unwrap();
        assert!((p - closed).abs() < 1e-10, "s={s}: {p} vs {closed}");
    }
}

#[test]
fn block_error_reference_values() {
    // 40-digit adaptive quadrature of the defining integral.
    let cases = [
        (4, 16.0, 0.025_019_192_241_905_001_988),
        (8, 20.0, 0.063_482_244_353_766_153_022),
    ];
    for &(k, s, expected) in &cases {
        assert_relative_eq!(
            block_error_prob(&code(k), snr(s), rule()),
            expected,
            max_relative = 1e-9
        );
    }
    // Long messages turn the integrand into a sharp step; the default rule
    // is then only good to about 1e-3 and the largest rule to about 1e-6.
    let long = 0.197_546_223_926_711_009_74;
    let p300 = block_error_prob(&code(64), snr(100.0), rule());
    let p1024 = block_error_prob(&code(64), snr(100.0), &gauss_hermite(1024).unwrap());
    assert_relative_eq!(p300, long, max_relative = 1e-3);
    assert_relative_eq!(p1024, long, max_relative = 1e-6);
    assert!((p1024 - long).abs() < (p300 - long).abs());
}

#[test]
fn posterior_residual_reference_values() {
    let cases = [
        (4, 9.0, 0.227_895_882_772_668_925_13),
        (8, 20.0, 0.106_639_848_681_818_896_8),
    ];
    for &(k, s, expected) in &cases {
        let v = residual_fraction_upper(&code(k), snr(s), rule()).unwrap();
        assert_relative_eq!(v, expected, max_relative = 1e-9);
        let v = BoundKind::UpperResidual
            .residual_fraction(&code(k), snr(s), rule())
            .unwrap();
        assert_relative_eq!(v, expected, max_relative = 1e-9);
    }
}

#[test]
fn degenerate_arguments() {
    assert_eq!(block_error_prob(&code(0), snr(3.0), rule()), 0.0);
    assert_relative_eq!(
        block_error_prob(&code(4), snr(0.0), rule()),
        1.0 - 1.0 / 16.0,
        max_relative = 1e-12
    );
    assert!(residual_fraction_upper(&code(0), snr(1.0), rule()).is_err());
    assert!(posterior_error_prob(&code(0), snr(1.0), 0.0).is_err());
    assert!(EffectiveSnr::new(-1.0).is_err());
    assert!(EffectiveSnr::new(f64::NAN).is_err());
    assert!(CodeSpec::new(MAX_BITS + 1, 1.0).is_err());
    assert!(CodeSpec::new(8, 0.0).is_err());
    // Huge effective SNR switches to the union-bound tail and underflows to zero.
    assert_eq!(block_error_prob(&code(8), snr(1e5), rule()), 0.0);
}

#[test]
fn message_length_1024_stays_finite() {
    let c = code(1024);
    let p = block_error_prob(&c, snr(1500.0), rule());
    assert!(p > 0.0 && p < 1.0, "{p}");
    let v = residual_fraction_upper(&c, snr(1500.0), rule()).unwrap();
    assert!(v >= p && v <= 1.0);
}

#[test]
fn single_user_threshold_for_k8() {
    let ebno = ebno_for_single_user_pe(8, 1e-3, rule()).unwrap();
    assert!(
        (linear_to_db(ebno) - 3.825_447_232_478_046_266_9).abs() < 1e-6,
        "{}",
        linear_to_db(ebno)
    );
    assert_relative_eq!(
        single_user_pe(8, ebno, rule()).unwrap(),
        1e-3,
        max_relative = 1e-8
    );
    let lower = ebno_for_pe_lower_bound(8, 1e-3).unwrap();
    assert_relative_eq!(lower, 2.066_621_718_743_472_730_4, max_relative = 1e-12);
    assert_relative_eq!(
        pe_lower_bound(8, lower).unwrap(),
        1e-3,
        max_relative = 1e-10
    );
}

#[test]
fn lower_bound_gap_closes_with_message_length() {
    let gaps: Vec<f64> = [8, 32, 128, 512]
        .iter()
        .map(|&k| {
            linear_to_db(ebno_for_single_user_pe(k, 1e-3, rule()).unwrap())
                - linear_to_db(ebno_for_pe_lower_bound(k, 1e-3).unwrap())
        })
        .collect();
    assert!(gaps.windows(2).all(|g| g[1] < g[0]), "{gaps:?}");
    assert!(gaps[0] > 0.5 && gaps[3] < 0.25, "{gaps:?}");
}

#[test]
fn soft_weight_one_minus_p_is_optimal() {
    for i in 0..=10 {
        let p = i as f64 / 10.0;
        let cost = |q: f64| (1.0 - q).powi(2) * (1.0 - p) + (1.0 + q * q) * p;
        let best = (0..=10_000)
            .map(|j| j as f64 / 10_000.0)
            .min_by(|a, b| cost(*a).total_cmp(&cost(*b)))
            .unwrap();
        assert!((best - (1.0 - p)).abs() <= 1e-4, "p={p}: {best}");
        assert!((cost(1.0 - p) - (1.0 - (1.0 - p).powi(2))).abs() < 1e-15);
    }
}

#[test]
fn finite_user_conditional_error() {
    let c = CodeSpec::new(4, 2.0).unwrap();
    assert_eq!(conditional_pe_finite(8, &c, 2.0, 3.0, 0.0).unwrap(), 0.0);
    let a = conditional_pe_finite(8, &c, 2.0, 3.0, 1.0).unwrap();
    let b = conditional_pe_finite(8, &c, 2.0, 3.0, 2.0).unwrap();
    assert!(0.0 < a && a < b && b <= 1.0, "{a} {b}");
    assert!(conditional_pe_finite(3, &CodeSpec::new(4, 0.5).unwrap(), 2.0, 1.0, 1.0).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn genie_residual_never_exceeds_posterior_residual(k in 1u32..=256, s in 0.0f64..600.0) {
        let c = code(k);
        let lower = residual_fraction_lower(&c, snr(s), rule());
        let upper = residual_fraction_upper(&c, snr(s), rule()).unwrap();
        prop_assert!(lower <= upper);
        prop_assert!((0.0..=1.0).contains(&lower) && upper <= 1.0);
    }

    #[test]
    fn error_probability_falls_with_snr(k in 1u32..=128, s in 0.0f64..300.0, ds in 0.01f64..20.0) {
        let c = code(k);
        let p0 = block_error_prob(&c, snr(s), rule());
        let p1 = block_error_prob(&c, snr(s + ds), rule());
        prop_assert!(p1 <= p0 + 1e-15);
        prop_assert!(block_error_prob(&code(k + 1), snr(s), rule()) >= p0 - 1e-15);
    }

    #[test]
    fn posterior_is_a_probability_decreasing_in_statistic(k in 1u32..=64, s in 0.1f64..100.0, x in -5.0f64..15.0, dx in 0.01f64..2.0) {
        let c = code(k);
        let p0 = posterior_error_prob(&c, snr(s), x).unwrap();
        let p1 = posterior_error_prob(&c, snr(s), x + dx).unwrap();
        prop_assert!((0.0..=1.0).contains(&p0));
        prop_assert!(p1 <= p0 + 1e-15);
    }

    #[test]
    fn quadrature_has_converged(k in 1u32..=16, s in 0.0f64..150.0) {
        let fine = gauss_hermite(1024).unwrap();
        let c = code(k);
        let a = block_error_prob(&c, snr(s), rule());
        let b = block_error_prob(&c, snr(s), &fine);
        prop_assert!((a - b).abs() <= 1e-6 * b + 1e-14, "{} vs {}", a, b);
    }
}
