//! Finite-user Monte-Carlo simulation of iterative soft interference
//! cancellation with random Gaussian codebooks.
//!
//! Each of `M` users sends one of `2^K` codewords of length `M N` with
//! per-coordinate variance `P_j / M`; the channel adds unit-variance noise.
//! Every iteration decodes each user from the received word with all other
//! users' soft estimates removed, estimates its error probability from the
//! largest normalized correlation, and rebuilds the interference estimate with
//! group-wise and global re-normalization.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::asymptotic::{posterior_raw, CodeSpec};
use crate::error::{domain, Result};
use crate::evolution::PowerProfile;

pub const DEFAULT_MAX_ITERATIONS: usize = 30;
pub const DEFAULT_ETA_TOL: f64 = 1e-4;
/// Default cap on stored codeword coordinates (64 MiB of `f64`).
pub const DEFAULT_MEMORY_BUDGET: usize = 1 << 23;
/// Largest message length the simulator enumerates.
pub const MAX_SIM_BITS: u32 = 16;

const STREAM_CHANNEL: u64 = u64::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CodebookKind {
    /// i.i.d. Gaussian coordinates.
    Gaussian,
    /// Gaussian draws orthonormalized per user and scaled to energy `N P_j`.
    Orthogonal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorEstimate {
    /// Posterior given the largest normalized correlation.
    Posterior,
    /// Genie: 1 if the decision is wrong, else 0.
    Genie,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Renormalization {
    None,
    Group,
    Double,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    pub users: usize,
    pub code: CodeSpec,
    pub profile: PowerProfile,
    pub trials: usize,
    pub max_iterations: usize,
    pub eta_tol: f64,
    pub seed: u64,
    pub codebook: CodebookKind,
    pub estimate: ErrorEstimate,
    pub renormalization: Renormalization,
    pub noiseless: bool,
    /// Maximum number of codeword coordinates kept in memory per trial.
    pub memory_budget: usize,
}

impl SimConfig {
    pub fn new(
        users: usize,
        code: CodeSpec,
        profile: PowerProfile,
        trials: usize,
        seed: u64,
    ) -> Self {
        Self {
            users,
            code,
            profile,
            trials,
            max_iterations: DEFAULT_MAX_ITERATIONS,
            eta_tol: DEFAULT_ETA_TOL,
            seed,
            codebook: CodebookKind::Gaussian,
            estimate: ErrorEstimate::Posterior,
            renormalization: Renormalization::Double,
            noiseless: false,
            memory_budget: DEFAULT_MEMORY_BUDGET,
        }
    }

    /// Blocklength `M N`.
    pub fn dims(&self) -> usize {
        (self.users as f64 * self.code.n()).round() as usize
    }

    pub fn codewords(&self) -> usize {
        1usize << self.code.bits()
    }

    /// Number of users in each group.
    pub fn group_sizes(&self) -> Vec<usize> {
        self.profile
            .groups()
            .iter()
            .map(|g| (g.fraction * self.users as f64).round() as usize)
            .collect()
    }

    pub fn validate(&self) -> Result<()> {
        if self.users == 0 {
            return Err(domain("user count must be positive"));
        }
        if self.code.bits() > MAX_SIM_BITS {
            return Err(domain(format!("simulation supports K <= {MAX_SIM_BITS}")));
        }
        let dims = self.users as f64 * self.code.n();
        if (dims - dims.round()).abs() > 1e-9 || dims.round() < 1.0 {
            return Err(domain(format!(
                "M N must be a positive integer, got {dims}"
            )));
        }
        for g in self.profile.groups() {
            let size = g.fraction * self.users as f64;
            if (size - size.round()).abs() > 1e-6 {
                return Err(domain(format!(
                    "group fraction {} does not give an integer number of users",
                    g.fraction
                )));
            }
        }
        if self.group_sizes().iter().sum::<usize>() != self.users {
            return Err(domain("group sizes do not add up to the user count"));
        }
        if self.trials == 0 || self.max_iterations == 0 {
            return Err(domain("trials and max_iterations must be positive"));
        }
        if !(self.eta_tol > 0.0) {
            return Err(domain("eta_tol must be positive"));
        }
        if self.codebook == CodebookKind::Orthogonal && self.dims() < self.codewords() {
            return Err(domain(format!(
                "orthogonal codebook needs M N >= 2^K ({} < {})",
                self.dims(),
                self.codewords()
            )));
        }
        Ok(())
    }
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of trial `trial` derived from the master seed.
pub fn trial_seed(master: u64, trial: u64) -> u64 {
    splitmix(splitmix(master) ^ trial.wrapping_mul(0xD6E8_FEB8_6659_FD93))
}

fn codeword_rng(seed: u64, user: usize, index: usize, bits: u32) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((user as u64) << bits) | index as u64);
    rng
}

fn fill_gaussian(rng: &mut ChaCha8Rng, scale: f64, out: &mut [f64]) {
    for x in out.iter_mut() {
        let z: f64 = rng.sample(StandardNormal);
        *x = scale * z;
    }
}

/// Codebook of user `user`: `2^K` rows of length `M N`, row-major.
///
/// Codeword `k` depends only on `(seed, user, k)` for Gaussian codebooks;
/// orthogonal codebooks orthonormalize those draws in index order.
pub fn generate_codebook(
    seed: u64,
    user: usize,
    code: &CodeSpec,
    power: f64,
    users: usize,
    kind: CodebookKind,
) -> Result<Vec<f64>> {
    if users == 0 || !(power >= 0.0) || code.bits() > MAX_SIM_BITS {
        return Err(domain("codebook needs users > 0, power >= 0 and K <= 16"));
    }
    let dims_f = users as f64 * code.n();
    if (dims_f - dims_f.round()).abs() > 1e-9 || dims_f.round() < 1.0 {
        return Err(domain(format!(
            "M N must be a positive integer, got {dims_f}"
        )));
    }
    let dims = dims_f.round() as usize;
    let count = 1usize << code.bits();
    if kind == CodebookKind::Orthogonal && dims < count {
        return Err(domain("orthogonal codebook needs M N >= 2^K"));
    }
    Ok(build_codebook(
        seed,
        user,
        code.bits(),
        dims,
        count,
        power,
        users,
        kind,
    ))
}

#[allow(clippy::too_many_arguments)]
fn build_codebook(
    seed: u64,
    user: usize,
    bits: u32,
    dims: usize,
    count: usize,
    power: f64,
    users: usize,
    kind: CodebookKind,
) -> Vec<f64> {
    let sigma = (power / users as f64).sqrt();
    let mut book = vec![0.0; dims * count];
    match kind {
        CodebookKind::Gaussian => {
            for (k, row) in book.chunks_exact_mut(dims).enumerate() {
                fill_gaussian(&mut codeword_rng(seed, user, k, bits), sigma, row);
            }
        }
        CodebookKind::Orthogonal => {
            for k in 0..count {
                let (done, rest) = book.split_at_mut(k * dims);
                let row = &mut rest[..dims];
                fill_gaussian(&mut codeword_rng(seed, user, k, bits), 1.0, row);
                for prev in done.chunks_exact(dims) {
                    let proj = dot(row, prev);
                    row.iter_mut().zip(prev).for_each(|(x, p)| *x -= proj * p);
                }
                let norm = dot(row, row).sqrt();
                row.iter_mut().for_each(|x| *x /= norm);
            }
            let energy = (power * dims as f64 / users as f64).sqrt();
            book.iter_mut().for_each(|x| *x *= energy);
        }
    }
    book
}

#[inline]
fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Maximum-likelihood decision over a row-major codebook.
///
/// Returns the winning index and its correlation normalized by the codeword
/// norm, `<y, c> / ||c||`; divide by `sqrt(I)` for the posterior statistic.
pub fn decode(residual: &[f64], codebook: &[f64]) -> (usize, f64) {
    let dims = residual.len();
    let mut best = (0usize, f64::NEG_INFINITY, 0.0);
    for (k, c) in codebook.chunks_exact(dims).enumerate() {
        let corr = dot(residual, c);
        let energy = dot(c, c);
        let metric = corr - 0.5 * energy;
        if metric > best.1 {
            let normalized = if energy > 0.0 {
                corr / energy.sqrt()
            } else {
                0.0
            };
            best = (k, metric, normalized);
        }
    }
    (best.0, best.2)
}

/// Codebooks of all users for one trial, stored or regenerated per use.
struct Codebooks<'a> {
    config: &'a SimConfig,
    seed: u64,
    powers: Vec<f64>,
    stored: Option<Vec<Vec<f64>>>,
}

impl<'a> Codebooks<'a> {
    fn new(config: &'a SimConfig, seed: u64, powers: Vec<f64>) -> Self {
        let total = config.users * config.codewords() * config.dims();
        let mut books = Self {
            config,
            seed,
            powers,
            stored: None,
        };
        if total <= config.memory_budget {
            books.stored = Some((0..config.users).map(|m| books.generate(m)).collect());
        }
        books
    }

    fn generate(&self, user: usize) -> Vec<f64> {
        build_codebook(
            self.seed,
            user,
            self.config.code.bits(),
            self.config.dims(),
            self.config.codewords(),
            self.powers[user],
            self.config.users,
            self.config.codebook,
        )
    }

    fn with<R>(&self, user: usize, f: impl FnOnce(&[f64]) -> R) -> R {
        match &self.stored {
            Some(all) => f(&all[user]),
            None => f(&self.generate(user)),
        }
    }

    fn is_stored(&self) -> bool {
        self.stored.is_some()
    }
}

/// Receiver state between cancellation steps.
#[derive(Debug, Clone, PartialEq)]
pub struct SimState {
    pub received: Vec<f64>,
    /// Current interference estimate subtracted from the received word.
    pub estimate: Vec<f64>,
    pub decisions: Vec<usize>,
    /// Normalized largest correlation of each user.
    pub statistics: Vec<f64>,
    pub p: Vec<f64>,
    /// Per-group residual fraction estimates.
    pub v: Vec<f64>,
    /// Interference-plus-noise power `1 + sum_j alpha_j v_j P_j`.
    pub interference: f64,
    /// Scale of each user's codeword inside `estimate`.
    pub weights: Vec<f64>,
    pub iteration: usize,
}

impl SimState {
    pub fn initial(received: Vec<f64>, config: &SimConfig) -> Self {
        let users = config.users;
        let groups = config.profile.len();
        Self {
            estimate: vec![0.0; received.len()],
            received,
            decisions: vec![0; users],
            statistics: vec![0.0; users],
            p: vec![1.0; users],
            v: vec![1.0; groups],
            interference: 1.0 + config.profile.total_power(),
            weights: vec![0.0; users],
            iteration: 0,
        }
    }

    pub fn eta(&self) -> f64 {
        1.0 / self.interference
    }
}

struct Layout {
    group_of: Vec<usize>,
    members: Vec<Vec<usize>>,
    powers: Vec<f64>,
}

fn layout(config: &SimConfig) -> Layout {
    let sizes = config.group_sizes();
    let mut group_of = Vec::with_capacity(config.users);
    let mut members = vec![Vec::new(); sizes.len()];
    for (j, &size) in sizes.iter().enumerate() {
        for _ in 0..size {
            members[j].push(group_of.len());
            group_of.push(j);
        }
    }
    let powers = group_of
        .iter()
        .map(|&j| config.profile.groups()[j].power)
        .collect();
    Layout {
        group_of,
        members,
        powers,
    }
}

fn soft_cancel_step(
    state: &SimState,
    config: &SimConfig,
    layout: &Layout,
    books: &Codebooks<'_>,
    truth: &[usize],
) -> SimState {
    let dims = state.received.len();
    let users = config.users;
    let ln_a = config.code.ln_competitors();
    let n = config.code.n();

    // Decode every user with the other users' estimates removed.
    let decoded: Vec<(usize, f64)> = (0..users)
        .map(|m| {
            books.with(m, |book| {
                let mut y: Vec<f64> = state
                    .received
                    .iter()
                    .zip(&state.estimate)
                    .map(|(r, e)| r - e)
                    .collect();
                let w = state.weights[m];
                if w != 0.0 {
                    let own = &book[state.decisions[m] * dims..(state.decisions[m] + 1) * dims];
                    y.iter_mut().zip(own).for_each(|(yi, c)| *yi += w * c);
                }
                decode(&y, book)
            })
        })
        .collect();

    let mut next = state.clone();
    next.iteration += 1;
    let sqrt_i = state.interference.sqrt();
    for (m, &(k, corr)) in decoded.iter().enumerate() {
        next.decisions[m] = k;
        next.statistics[m] = corr / sqrt_i;
        let power = layout.powers[m];
        next.p[m] = match config.estimate {
            ErrorEstimate::Genie => f64::from(u8::from(k != truth[m])),
            ErrorEstimate::Posterior if config.code.bits() == 0 => 0.0,
            ErrorEstimate::Posterior => {
                let s = n * power / state.interference;
                posterior_raw(ln_a, s, next.statistics[m])
            }
        };
    }

    // Residual fractions and interference power.
    let groups = config.profile.groups();
    for (j, members) in layout.members.iter().enumerate() {
        next.v[j] = if members.is_empty() {
            0.0
        } else {
            let mean_sq: f64 = members
                .iter()
                .map(|&m| (1.0 - next.p[m]).powi(2))
                .sum::<f64>()
                / members.len() as f64;
            1.0 - mean_sq
        };
    }
    next.interference = 1.0
        + groups
            .iter()
            .zip(&next.v)
            .map(|(g, v)| g.fraction * v * g.power)
            .sum::<f64>();

    // Group estimates with s_j, then the global scale s.
    let dims_f = dims as f64;
    let mut total = vec![0.0; dims];
    let mut weights = vec![0.0; users];
    for (j, members) in layout.members.iter().enumerate() {
        let mut sum = vec![0.0; dims];
        let mut q_sq = 0.0;
        for &m in members {
            let q = 1.0 - next.p[m];
            if q == 0.0 {
                continue;
            }
            q_sq += q * q;
            books.with(m, |book| {
                let c = &book[next.decisions[m] * dims..(next.decisions[m] + 1) * dims];
                sum.iter_mut().zip(c).for_each(|(s, ci)| *s += q * ci);
            });
        }
        let measured = dot(&sum, &sum) / dims_f;
        let scale = match config.renormalization {
            Renormalization::None => 1.0,
            _ if measured > 0.0 => (groups[j].power / users as f64 * q_sq / measured).sqrt(),
            _ => 0.0,
        };
        for &m in members {
            weights[m] = scale * (1.0 - next.p[m]);
        }
        total
            .iter_mut()
            .zip(&sum)
            .for_each(|(t, s)| *t += scale * s);
    }
    let global = match config.renormalization {
        Renormalization::Double => {
            let measured = dot(&total, &total) / dims_f;
            let expected: f64 = groups
                .iter()
                .zip(&next.v)
                .map(|(g, v)| g.fraction * (1.0 - v) * g.power)
                .sum();
            if measured > 0.0 {
                (expected / measured).sqrt()
            } else {
                0.0
            }
        }
        _ => 1.0,
    };
    next.estimate = total.iter().map(|t| global * t).collect();
    next.weights = weights.iter().map(|w| global * w).collect();
    next
}

/// One decode-and-cancel pass for a trial whose codebooks derive from
/// `codebook_seed` and whose transmitted indices are `truth`.
pub fn soft_cancel_iteration(
    state: &SimState,
    config: &SimConfig,
    codebook_seed: u64,
    truth: &[usize],
) -> Result<SimState> {
    config.validate()?;
    let layout = layout(config);
    let books = Codebooks::new(config, codebook_seed, layout.powers.clone());
    Ok(soft_cancel_step(state, config, &layout, &books, truth))
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimReport {
    pub users: usize,
    pub trials: usize,
    pub errors: u64,
    pub decisions: u64,
    pub block_error_rate: f64,
    /// Binomial standard error of `block_error_rate`.
    pub standard_error: f64,
    /// Per-group error rates.
    pub group_error_rate: Vec<f64>,
    /// Mean efficiency estimate after each iteration (trials that stopped
    /// early keep their final value).
    pub eta: Vec<f64>,
    /// Mean per-group residual fraction after each iteration.
    pub v: Vec<Vec<f64>>,
    pub mean_iterations: f64,
    /// Trials that hit `max_iterations` without settling.
    pub unconverged_trials: usize,
    pub codebooks_stored: bool,
}

struct TrialOutcome {
    errors_per_group: Vec<u64>,
    eta: Vec<f64>,
    v: Vec<Vec<f64>>,
    converged: bool,
    stored: bool,
}

fn run_trial(config: &SimConfig, layout: &Layout, trial: u64) -> TrialOutcome {
    let seed = trial_seed(config.seed, trial);
    let books = Codebooks::new(config, seed, layout.powers.clone());
    let dims = config.dims();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(STREAM_CHANNEL);
    let truth: Vec<usize> = (0..config.users)
        .map(|_| rng.random_range(0..config.codewords()))
        .collect();
    let mut received = vec![0.0; dims];
    if !config.noiseless {
        fill_gaussian(&mut rng, 1.0, &mut received);
    }
    for (m, &k) in truth.iter().enumerate() {
        books.with(m, |book| {
            let c = &book[k * dims..(k + 1) * dims];
            received.iter_mut().zip(c).for_each(|(r, ci)| *r += ci);
        });
    }

    let mut state = SimState::initial(received, config);
    let mut eta = Vec::new();
    let mut v = Vec::new();
    let mut converged = false;
    for _ in 0..config.max_iterations {
        let next = soft_cancel_step(&state, config, layout, &books, &truth);
        let change = (next.eta() - state.eta()).abs();
        eta.push(next.eta());
        v.push(next.v.clone());
        state = next;
        if change < config.eta_tol {
            converged = true;
            break;
        }
    }
    let mut errors_per_group = vec![0u64; layout.members.len()];
    for (m, (&d, &t)) in state.decisions.iter().zip(&truth).enumerate() {
        if d != t {
            errors_per_group[layout.group_of[m]] += 1;
        }
    }
    TrialOutcome {
        errors_per_group,
        eta,
        v,
        converged,
        stored: books.is_stored(),
    }
}

/// Runs all trials in parallel; the report depends only on the configuration.
pub fn run_simulation(config: &SimConfig) -> Result<SimReport> {
    config.validate()?;
    let layout = layout(config);
    let outcomes: Vec<TrialOutcome> = (0..config.trials as u64)
        .into_par_iter()
        .map(|t| run_trial(config, &layout, t))
        .collect();

    let groups = layout.members.len();
    let iterations = outcomes.iter().map(|o| o.eta.len()).max().unwrap_or(0);
    let mut eta = vec![0.0; iterations];
    let mut v = vec![vec![0.0; groups]; iterations];
    let mut group_errors = vec![0u64; groups];
    for o in &outcomes {
        for i in 0..iterations {
            let k = i.min(o.eta.len() - 1);
            eta[i] += o.eta[k];
            v[i].iter_mut().zip(&o.v[k]).for_each(|(a, b)| *a += b);
        }
        group_errors
            .iter_mut()
            .zip(&o.errors_per_group)
            .for_each(|(a, b)| *a += b);
    }
    let trials = config.trials as f64;
    eta.iter_mut().for_each(|x| *x /= trials);
    v.iter_mut().flatten().for_each(|x| *x /= trials);

    let errors: u64 = group_errors.iter().sum();
    let decisions = (config.users * config.trials) as u64;
    let rate = errors as f64 / decisions as f64;
    let group_error_rate = group_errors
        .iter()
        .zip(&layout.members)
        .map(|(&e, members)| {
            if members.is_empty() {
                0.0
            } else {
                e as f64 / (members.len() * config.trials) as f64
            }
        })
        .collect();
    Ok(SimReport {
        users: config.users,
        trials: config.trials,
        errors,
        decisions,
        block_error_rate: rate,
        standard_error: (rate * (1.0 - rate) / decisions as f64).sqrt(),
        group_error_rate,
        eta,
        v,
        mean_iterations: outcomes.iter().map(|o| o.eta.len() as f64).sum::<f64>() / trials,
        unconverged_trials: outcomes.iter().filter(|o| !o.converged).count(),
        codebooks_stored: outcomes.iter().all(|o| o.stored),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(users: usize, bits: u32, n: f64, power: f64) -> SimConfig {
        SimConfig::new(
            users,
            CodeSpec::new(bits, n).unwrap(),
            PowerProfile::equal_power(power).unwrap(),
            4,
            7,
        )
    }

    #[test]
    fn codebook_is_reproducible() {
        let code = CodeSpec::new(3, 2.0).unwrap();
        let a = generate_codebook(11, 2, &code, 1.5, 4, CodebookKind::Gaussian).unwrap();
        let b = generate_codebook(11, 2, &code, 1.5, 4, CodebookKind::Gaussian).unwrap();
        assert_eq!(a, b);
        let c = generate_codebook(12, 2, &code, 1.5, 4, CodebookKind::Gaussian).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn orthogonal_codebook_has_equal_orthogonal_rows() {
        let code = CodeSpec::new(3, 4.0).unwrap();
        let book = generate_codebook(5, 0, &code, 2.0, 2, CodebookKind::Orthogonal).unwrap();
        let dims = 8;
        for i in 0..8 {
            for k in 0..8 {
                let d = dot(
                    &book[i * dims..(i + 1) * dims],
                    &book[k * dims..(k + 1) * dims],
                );
                let expected = if i == k { 4.0 * 2.0 } else { 0.0 };
                assert!((d - expected).abs() < 1e-9, "({i},{k}) {d}");
            }
        }
        assert!(generate_codebook(
            5,
            0,
            &CodeSpec::new(4, 1.0).unwrap(),
            1.0,
            2,
            CodebookKind::Orthogonal
        )
        .is_err());
    }

    #[test]
    fn decode_recovers_noiseless_codeword() {
        let code = CodeSpec::new(4, 8.0).unwrap();
        let book = generate_codebook(1, 0, &code, 1.0, 2, CodebookKind::Gaussian).unwrap();
        for k in 0..16 {
            let y = book[k * 16..(k + 1) * 16].to_vec();
            assert_eq!(decode(&y, &book).0, k);
        }
    }

    #[test]
    fn validation_rejects_fractional_dimensions() {
        assert!(config(3, 2, 0.5, 1.0).validate().is_err());
        assert!(config(4, 2, 0.5, 1.0).validate().is_ok());
        let mut c = config(4, 2, 1.0, 1.0);
        c.profile = PowerProfile::from_pairs(&[(0.3, 1.0), (0.7, 2.0)]).unwrap();
        assert!(c.validate().is_err());
    }

    #[test]
    fn memory_budget_switches_to_regeneration() {
        let mut stored = config(4, 3, 2.0, 2.0);
        stored.trials = 3;
        let mut streamed = stored.clone();
        streamed.memory_budget = 0;
        let a = run_simulation(&stored).unwrap();
        let b = run_simulation(&streamed).unwrap();
        assert!(a.codebooks_stored && !b.codebooks_stored);
        assert_eq!(a.block_error_rate, b.block_error_rate);
        assert_eq!(a.eta, b.eta);
    }

    #[test]
    fn no_confidence_cancels_nothing() {
        let cfg = config(4, 2, 2.0, 0.0);
        let layout = layout(&cfg);
        let books = Codebooks::new(&cfg, 3, layout.powers.clone());
        let state = SimState::initial(vec![0.5; 8], &cfg);
        let next = soft_cancel_step(&state, &cfg, &layout, &books, &[0, 1, 2, 3]);
        assert!(next.estimate.iter().all(|&x| x == 0.0));
    }
}
