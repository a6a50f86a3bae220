use macsic::asymptotic::{block_error_prob, CodeSpec, EffectiveSnr};
use macsic::evolution::PowerProfile;
use macsic::numerics::gauss_hermite;
use macsic::simulator::*;

fn config(users: usize, bits: u32, n: f64, power: f64, trials: usize, seed: u64) -> SimConfig {
    SimConfig::new(
        users,
        CodeSpec::new(bits, n).unwrap(),
        PowerProfile::equal_power(power).unwrap(),
        trials,
        seed,
    )
}

/// One group 1 dB above the K=4 threshold at twice the wall load.
fn operating_point(users: usize, trials: usize, seed: u64) -> SimConfig {
    config(users, 4, 6.125, 5.912_833_204_633_03, trials, seed)
}

#[test]
fn reports_are_reproducible() {
    let a = run_simulation(&config(8, 3, 2.0, 3.0, 40, 99)).unwrap();
    let b = run_simulation(&config(8, 3, 2.0, 3.0, 40, 99)).unwrap();
    assert_eq!(a, b);
    let c = run_simulation(&config(8, 3, 2.0, 3.0, 40, 100)).unwrap();
    assert_ne!(a.eta, c.eta);
}

#[test]
fn result_does_not_depend_on_thread_count() {
    let cfg = config(8, 3, 2.0, 3.0, 64, 1);
    let single = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap();
    let a = single.install(|| run_simulation(&cfg).unwrap());
    let b = run_simulation(&cfg).unwrap();
    assert_eq!(a, b);
}

#[test]
fn trial_seeds_are_distinct() {
    let mut seeds: Vec<u64> = (0..10_000).map(|t| trial_seed(42, t)).collect();
    seeds.sort_unstable();
    seeds.dedup();
    assert_eq!(seeds.len(), 10_000);
    assert_ne!(trial_seed(1, 0), trial_seed(2, 0));
}

#[test]
fn silent_users_are_guessed() {
    // Without power every decision is a blind guess.
    let r = run_simulation(&config(8, 2, 2.0, 0.0, 500, 3)).unwrap();
    let expected = 0.75;
    let se = (expected * (1.0 - expected) / r.decisions as f64).sqrt();
    assert!(
        (r.block_error_rate - expected).abs() < 4.0 * se,
        "{}",
        r.block_error_rate
    );
}

#[test]
fn noiseless_single_user_never_errs() {
    let mut cfg = config(1, 4, 8.0, 1.0, 200, 5);
    cfg.noiseless = true;
    let r = run_simulation(&cfg).unwrap();
    assert_eq!(r.errors, 0);
}

#[test]
fn gaussian_codebook_has_the_right_moments() {
    let code = CodeSpec::new(8, 16.0).unwrap();
    let (power, users) = (3.0, 4);
    let book = generate_codebook(17, 1, &code, power, users, CodebookKind::Gaussian).unwrap();
    assert_eq!(book.len(), 256 * 64);
    let count = book.len() as f64;
    let mean = book.iter().sum::<f64>() / count;
    let var = book.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / count;
    // Each codeword carries energy N P spread over M N dimensions.
    let per_dim = power / users as f64;
    assert!(mean.abs() < 4.0 * (per_dim / count).sqrt(), "{mean}");
    assert!(
        (var / per_dim - 1.0).abs() < 4.0 * (2.0 / count).sqrt(),
        "{var}"
    );
    // Different users draw different codebooks from the same seed.
    let other = generate_codebook(17, 2, &code, power, users, CodebookKind::Gaussian).unwrap();
    assert_ne!(book, other);
}

#[test]
fn interference_starts_at_full_load() {
    let cfg = operating_point(16, 1, 0);
    let state = SimState::initial(vec![0.0; cfg.dims()], &cfg);
    assert_eq!(cfg.dims(), 98);
    assert!((state.eta() - 1.0 / (1.0 + 5.912_833_204_633_03)).abs() < 1e-15);
    assert!(state.v.iter().all(|&v| v == 1.0));
}

#[test]
fn single_iteration_matches_the_driver() {
    // A noiseless superposition decoded once with genie confidence.
    let mut cfg = config(4, 2, 4.0, 4.0, 1, 0);
    cfg.noiseless = true;
    cfg.estimate = ErrorEstimate::Genie;
    let dims = cfg.dims();
    let truth = [0usize, 1, 2, 3];
    let mut received = vec![0.0; dims];
    for (m, &k) in truth.iter().enumerate() {
        let book = generate_codebook(7, m, &cfg.code, 4.0, 4, CodebookKind::Gaussian).unwrap();
        received
            .iter_mut()
            .zip(&book[k * dims..(k + 1) * dims])
            .for_each(|(r, c)| *r += c);
    }
    let energy = received.iter().map(|r| r * r).sum::<f64>() / dims as f64;
    assert!(energy > 1.0 && energy < 9.0, "{energy}");
    let start = SimState::initial(received, &cfg);
    let next = soft_cancel_iteration(&start, &cfg, 7, &truth).unwrap();
    assert_eq!(next.iteration, 1);
    for (m, &d) in next.decisions.iter().enumerate() {
        assert_eq!(next.p[m], f64::from(u8::from(d != truth[m])));
    }
    assert!(next.eta() >= start.eta());
}

#[test]
fn renormalized_cancellation_helps() {
    let run = |renorm, estimate| {
        let mut cfg = operating_point(32, 300, 11);
        cfg.renormalization = renorm;
        cfg.estimate = estimate;
        run_simulation(&cfg).unwrap()
    };
    let plain = run(Renormalization::None, ErrorEstimate::Posterior);
    let double = run(Renormalization::Double, ErrorEstimate::Posterior);
    let genie = run(Renormalization::Double, ErrorEstimate::Genie);
    let gap = |a: &SimReport, b: &SimReport| {
        (a.block_error_rate - b.block_error_rate)
            / (a.standard_error.powi(2) + b.standard_error.powi(2)).sqrt()
    };
    assert!(
        gap(&plain, &double) > 3.0,
        "{} vs {}",
        plain.block_error_rate,
        double.block_error_rate
    );
    assert!(genie.block_error_rate <= double.block_error_rate);
    // With genie confidence the mean efficiency only rises.
    assert!(
        genie.eta.windows(2).all(|w| w[1] >= w[0] - 1e-12),
        "{:?}",
        genie.eta
    );
}

#[test]
fn single_user_matches_the_error_kernel() {
    // Orthogonal codebook with M = 1 reproduces the single-user kernel.
    let mut cfg = config(1, 4, 16.0, 1.0, 20_000, 2024);
    cfg.codebook = CodebookKind::Orthogonal;
    let r = run_simulation(&cfg).unwrap();
    let exact = block_error_prob(
        &cfg.code,
        EffectiveSnr::new(16.0).unwrap(),
        &gauss_hermite(300).unwrap(),
    );
    let se = (exact * (1.0 - exact) / r.decisions as f64).sqrt();
    assert!(
        (r.block_error_rate - exact).abs() < 3.0 * se,
        "{} vs {exact}",
        r.block_error_rate
    );
}

#[test]
fn invalid_configurations_are_rejected() {
    assert!(run_simulation(&config(0, 4, 2.0, 1.0, 10, 0)).is_err());
    assert!(run_simulation(&config(4, 4, 2.0, 1.0, 0, 0)).is_err());
    assert!(run_simulation(&config(4, MAX_SIM_BITS + 1, 2.0, 1.0, 1, 0)).is_err());
    let mut ortho = config(2, 4, 2.0, 1.0, 1, 0);
    ortho.codebook = CodebookKind::Orthogonal;
    assert!(run_simulation(&ortho).is_err());
}
