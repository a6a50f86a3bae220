use macsic::asymptotic::{ebno_for_single_user_pe, single_user_pe, BoundKind, CodeSpec};
use macsic::evolution::*;
use macsic::numerics::{gauss_hermite, QuadratureRule};
use macsic::units::db_to_linear;
use proptest::prelude::*;
use std::sync::OnceLock;

fn rule() -> &'static QuadratureRule {
    static RULE: OnceLock<QuadratureRule> = OnceLock::new();
    RULE.get_or_init(|| gauss_hermite(300).unwrap())
}

fn run(bits: u32, n: f64, profile: &PowerProfile, bound: BoundKind) -> Trajectory {
    let code = CodeSpec::new(bits, n).unwrap();
    evolve(&code, profile, bound, rule(), DEFAULT_MAX_ITER, DEFAULT_TOL).unwrap()
}

/// Equal power per user at `Eb/N0` (linear) for message length `bits` and load `1/n`.
fn equal_power(bits: u32, n: f64, ebno: f64) -> PowerProfile {
    PowerProfile::equal_power(2.0 * f64::from(bits) * ebno / n).unwrap()
}

#[test]
fn trajectory_rises_monotonically() {
    let profile = PowerProfile::from_pairs(&[(0.6, 4.0), (0.4, 9.0)]).unwrap();
    for bound in [BoundKind::UpperResidual, BoundKind::LowerResidual] {
        let t = run(8, 6.0, &profile, bound);
        assert!(t.converged);
        assert_eq!(t.states[0].iteration, 0);
        assert!(t.states[0].v.iter().all(|&v| v == 1.0));
        assert!(t.states.windows(2).all(|w| w[1].eta > w[0].eta));
        assert!(t.states.iter().all(|s| s.eta > 0.0 && s.eta <= 1.0));
    }
}

#[test]
fn light_load_reaches_single_user_performance() {
    let ebno = db_to_linear(4.5);
    let t = run(
        8,
        200.0,
        &equal_power(8, 200.0, ebno),
        BoundKind::UpperResidual,
    );
    assert!(t.eta_star() > 0.999);
    let code = CodeSpec::new(8, 200.0).unwrap();
    let pe = final_pe(
        &code,
        &equal_power(8, 200.0, ebno),
        BoundKind::UpperResidual,
        rule(),
        DEFAULT_MAX_ITER,
        DEFAULT_TOL,
    )
    .unwrap();
    let single = single_user_pe(8, ebno, rule()).unwrap();
    assert!(
        pe[0] >= single && pe[0] < 1.01 * single,
        "{} vs {single}",
        pe[0]
    );
}

#[test]
fn equal_power_just_above_threshold_converges_at_the_wall() {
    // 0.2 dB above the single-user threshold, at the heaviest load that still
    // converges, the efficiency ends close to one.
    let ebno = ebno_for_single_user_pe(8, 1e-3, rule()).unwrap() * db_to_linear(0.2);
    let converges =
        |n: f64| run(8, n, &equal_power(8, n, ebno), BoundKind::UpperResidual).eta_star() > 0.9;
    let (mut lo, mut hi) = (1.0, 200.0);
    assert!(!converges(lo) && converges(hi));
    for _ in 0..30 {
        let mid = (lo * hi).sqrt();
        if converges(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let t = run(8, hi, &equal_power(8, hi, ebno), BoundKind::UpperResidual);
    assert!(t.eta_star() > 0.99, "N={hi}: {}", t.eta_star());
    // Past the wall the tracker stalls at low efficiency.
    assert!(
        run(
            8,
            lo * 0.95,
            &equal_power(8, lo * 0.95, ebno),
            BoundKind::UpperResidual
        )
        .eta_star()
            < 0.5
    );
}

#[test]
fn iteration_budget_is_reported() {
    let profile = PowerProfile::equal_power(5.0).unwrap();
    let code = CodeSpec::new(8, 4.0).unwrap();
    let t = evolve(&code, &profile, BoundKind::UpperResidual, rule(), 2, 1e-15).unwrap();
    assert!(!t.converged);
    assert_eq!(t.states.len(), 3);
}

#[test]
fn converged_efficiency_is_the_last_increase() {
    // Both trackers end within the tolerance of a fixed point close to one,
    // so their order must not depend on where the stopping rule cut off.
    let profile = PowerProfile::from_pairs(&[
        (0.690_961_806_276_753_1, 21.928_792_980_018_78),
        (0.309_038_193_723_246_87, 17.122_907_181_812_735),
    ])
    .unwrap();
    let upper = run(
        14,
        16.623_275_825_003_766,
        &profile,
        BoundKind::UpperResidual,
    );
    let lower = run(
        14,
        16.623_275_825_003_766,
        &profile,
        BoundKind::LowerResidual,
    );
    assert!(upper.converged && lower.converged);
    assert!(upper.eta_star() <= lower.eta_star());
    assert!(lower.eta_star() > 1.0 - 1e-15, "{}", lower.eta_star());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn posterior_tracker_never_beats_genie(
        bits in 2u32..=16,
        n in 1.5f64..20.0,
        groups in prop::collection::vec((0.05f64..1.0, 0.2f64..30.0), 1..4),
    ) {
        let total: f64 = groups.iter().map(|g| g.0).sum();
        let pairs: Vec<(f64, f64)> = groups.iter().map(|&(a, p)| (a / total, p)).collect();
        let profile = PowerProfile::from_pairs(&pairs).unwrap();
        let upper = run(bits, n, &profile, BoundKind::UpperResidual);
        let lower = run(bits, n, &profile, BoundKind::LowerResidual);
        prop_assert!(upper.eta_star() <= lower.eta_star() + 1e-12);
        let fractions: f64 = profile.groups().iter().map(|g| g.fraction).sum();
        prop_assert!((fractions - 1.0).abs() < 1e-9);
    }
}
