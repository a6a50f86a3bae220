//! Power-profile optimization by linear programming.
//!
//! For an interval of multiuser efficiencies `[eta_lo, eta_hi]` the program
//!
//! ```text
//! min  sum_j alpha_j P_j
//! s.t. sum_j alpha_j P_j v_j(eta) <= 1/(eta + eps) - 1   for every grid point eta
//!      sum_j alpha_j = 1,  alpha >= 0
//! ```
//!
//! selects the fractions of users received at each candidate power so that
//! every iteration of soft cancellation strictly improves the efficiency. The
//! upper end `eta_hi` is nested until density evolution of the resulting
//! profile just meets the target error probability.

mod simplex;
mod table;

use rayon::prelude::*;

pub use simplex::{simplex_solve, LpProblem, LpSolution, LpStatus};

use crate::asymptotic::{ebno_for_single_user_pe, BoundKind, CodeSpec, EffectiveSnr};
use crate::error::{contract, domain, Error, Result};
use crate::evolution::{self, average_pe, Group, PowerProfile};
use crate::numerics::{binary_entropy, QuadratureRule};
use crate::units::db_to_linear;
use table::ResidualTable;

pub const DEFAULT_EPSILON: f64 = 1e-3;
pub const DEFAULT_GRID_POINTS: usize = 256;
pub const DEFAULT_POWER_COUNT: usize = 128;
pub const DEFAULT_POWER_SPAN_DB: f64 = 30.0;
/// Offset of the weakest candidate power above the equal-power threshold.
pub const DEFAULT_POWER_MARGIN_DB: f64 = 0.02;

/// Fractions below this are treated as empty groups.
const EMPTY_FRACTION: f64 = 1e-9;

/// Discrete path-loss model: level `l` has power gain `w_l` with probability `Pr(w_l)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FadingModel {
    weights: Vec<f64>,
    probabilities: Vec<f64>,
}

impl FadingModel {
    pub fn new(weights: Vec<f64>, probabilities: Vec<f64>) -> Result<Self> {
        if weights.is_empty() || weights.len() != probabilities.len() {
            return Err(contract(
                "fading weights and probabilities must be nonempty and equally long",
            ));
        }
        if weights.iter().any(|&w| !(w > 0.0) || !w.is_finite()) {
            return Err(domain("fading weights must be positive and finite"));
        }
        if weights.windows(2).any(|p| p[1] >= p[0]) {
            return Err(domain("fading weights must be strictly decreasing"));
        }
        if probabilities.iter().any(|&p| !(p >= 0.0)) {
            return Err(domain("fading probabilities must be nonnegative"));
        }
        let total: f64 = probabilities.iter().sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(domain(format!(
                "fading probabilities sum to {total}, expected 1"
            )));
        }
        Ok(Self {
            weights,
            probabilities,
        })
    }

    /// `L` equiprobable levels with amplitude gains `1 / l`.
    pub fn path_loss(levels: usize) -> Result<Self> {
        if levels == 0 {
            return Err(domain("fading model needs at least one level"));
        }
        let weights = (1..=levels).map(|l| 1.0 / (l * l) as f64).collect();
        Self::new(weights, vec![1.0 / levels as f64; levels])
    }

    pub fn levels(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    /// Average power gain `mu`.
    pub fn mean_gain(&self) -> f64 {
        self.weights
            .iter()
            .zip(&self.probabilities)
            .map(|(w, p)| w * p)
            .sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridSpacing {
    Uniform,
    Logit,
}

/// Efficiency grid on which the LP enforces progress.
#[derive(Debug, Clone, PartialEq)]
pub struct EtaGrid {
    points: Vec<f64>,
    epsilon: f64,
}

impl EtaGrid {
    pub fn uniform(lo: f64, hi: f64, count: usize, epsilon: f64) -> Result<Self> {
        if !(0.0 < lo && lo < hi && hi < 1.0) {
            return Err(domain(format!(
                "efficiency interval [{lo}, {hi}] must satisfy 0 < lo < hi < 1"
            )));
        }
        if count < 2 {
            return Err(contract("efficiency grid needs at least two points"));
        }
        if !(epsilon > 0.0) || !epsilon.is_finite() {
            return Err(domain(format!("margin must be positive, got {epsilon}")));
        }
        let step = (hi - lo) / (count - 1) as f64;
        let mut points: Vec<f64> = (0..count).map(|i| lo + step * i as f64).collect();
        points[count - 1] = hi;
        Ok(Self { points, epsilon })
    }

    /// Points uniform in `ln(eta / (1 - eta))`: relative resolution near
    /// both ends of the interval.
    pub fn logit(lo: f64, hi: f64, count: usize, epsilon: f64) -> Result<Self> {
        let mut grid = Self::uniform(lo, hi, count, epsilon)?;
        let (a, b) = ((lo / (1.0 - lo)).ln(), (hi / (1.0 - hi)).ln());
        for (i, p) in grid.points.iter_mut().enumerate() {
            let t = a + (b - a) * i as f64 / (count - 1) as f64;
            *p = 1.0 / (1.0 + (-t).exp());
        }
        grid.points[0] = lo;
        grid.points[count - 1] = hi;
        Ok(grid)
    }

    pub fn with_spacing(
        spacing: GridSpacing,
        lo: f64,
        hi: f64,
        count: usize,
        epsilon: f64,
    ) -> Result<Self> {
        match spacing {
            GridSpacing::Uniform => Self::uniform(lo, hi, count, epsilon),
            GridSpacing::Logit => Self::logit(lo, hi, count, epsilon),
        }
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn lo(&self) -> f64 {
        self.points[0]
    }

    pub fn hi(&self) -> f64 {
        self.points[self.points.len() - 1]
    }

    /// Right-hand side `1/(eta + eps) - 1` of the progress constraint.
    pub fn progress_bound(&self, eta: f64) -> f64 {
        1.0 / (eta + self.epsilon) - 1.0
    }
}

/// Geometric grid `p_min g^(j-1)`, `j = 1..count`, spanning `span_db`.
pub fn geometric_power_grid(p_min: f64, count: usize, span_db: f64) -> Result<Vec<f64>> {
    if !(p_min > 0.0) || !p_min.is_finite() || count == 0 || !(span_db >= 0.0) {
        return Err(domain(
            "power grid needs p_min > 0, count >= 1 and span >= 0",
        ));
    }
    if count == 1 {
        return Ok(vec![p_min]);
    }
    let step_db = span_db / (count - 1) as f64;
    Ok((0..count)
        .map(|j| p_min * db_to_linear(step_db * j as f64))
        .collect())
}

/// Default candidate powers for a code: 128 levels over 30 dB starting just
/// above the equal-power threshold of the strongest fading level.
pub fn default_power_grid(
    code: &CodeSpec,
    target_pe: f64,
    fading: Option<&FadingModel>,
    rule: &QuadratureRule,
) -> Result<Vec<f64>> {
    let ebno = ebno_for_single_user_pe(code.bits(), target_pe, rule)?;
    let threshold = 2.0 * f64::from(code.bits()) * ebno / code.n();
    let strongest = fading.map_or(1.0, |f| f.weights()[0]);
    geometric_power_grid(
        threshold * db_to_linear(DEFAULT_POWER_MARGIN_DB) / strongest,
        DEFAULT_POWER_COUNT,
        DEFAULT_POWER_SPAN_DB,
    )
}

fn check_power_grid(power_grid: &[f64]) -> Result<()> {
    if power_grid.is_empty() {
        return Err(contract("power grid is empty"));
    }
    if power_grid.iter().any(|&p| !(p > 0.0) || !p.is_finite()) {
        return Err(domain("candidate powers must be positive and finite"));
    }
    if power_grid.windows(2).any(|p| p[1] <= p[0]) {
        return Err(domain("candidate powers must be strictly increasing"));
    }
    Ok(())
}

fn levels_of(fading: Option<&FadingModel>) -> (Vec<f64>, Vec<f64>) {
    match fading {
        Some(f) => (f.weights.clone(), f.probabilities.clone()),
        None => (vec![1.0], vec![1.0]),
    }
}

fn objective_levels(
    fading: Option<&FadingModel>,
    objective_weights: Option<&[f64]>,
) -> Result<Vec<f64>> {
    let (w, _) = levels_of(fading);
    match objective_weights {
        None => Ok(w),
        Some(c) if c.len() == w.len() && c.iter().all(|x| x.is_finite() && *x >= 0.0) => {
            Ok(c.to_vec())
        }
        Some(c) => Err(contract(format!(
            "{} objective weights for {} fading levels (must be finite and >= 0)",
            c.len(),
            w.len()
        ))),
    }
}

/// Assembles the LP; variables are ordered level-major, index `l * J + j`.
fn assemble(
    code: &CodeSpec,
    power_grid: &[f64],
    grid: &EtaGrid,
    fading: Option<&FadingModel>,
    objective_weights: Option<&[f64]>,
    residual: &dyn Fn(f64) -> f64,
) -> Result<LpProblem> {
    check_power_grid(power_grid)?;
    let (w, pr) = levels_of(fading);
    let c_level = objective_levels(fading, objective_weights)?;
    let j_count = power_grid.len();
    let vars = w.len() * j_count;
    let mut c = Vec::with_capacity(vars);
    for &cl in &c_level {
        c.extend(power_grid.iter().map(|&p| cl * p));
    }
    let a_ub = grid
        .points
        .iter()
        .map(|&eta| {
            let mut row = Vec::with_capacity(vars);
            for &wl in &w {
                row.extend(power_grid.iter().map(|&p| {
                    let received = wl * p;
                    received * residual(eta * code.n() * received)
                }));
            }
            row
        })
        .collect();
    let b_ub = grid
        .points
        .iter()
        .map(|&eta| grid.progress_bound(eta))
        .collect();
    let a_eq = (0..w.len())
        .map(|l| {
            let mut row = vec![0.0; vars];
            row[l * j_count..(l + 1) * j_count].fill(1.0);
            row
        })
        .collect();
    LpProblem::new(c, a_ub, b_ub, a_eq, pr)
}

/// Builds the power-allocation LP with residual fractions evaluated exactly.
///
/// With fading, variable `l * J + j` is the fraction of users at fading level
/// `l` transmitting with power `P_j`; the objective weights per level default
/// to the fading gains.
pub fn build_power_lp(
    code: &CodeSpec,
    power_grid: &[f64],
    grid: &EtaGrid,
    bound: BoundKind,
    fading: Option<&FadingModel>,
    objective_weights: Option<&[f64]>,
    rule: &QuadratureRule,
) -> Result<LpProblem> {
    if bound == BoundKind::UpperResidual && code.bits() == 0 {
        return Err(domain("posterior-based residual needs K >= 1"));
    }
    let residual = |s: f64| {
        EffectiveSnr::new(s)
            .and_then(|s| bound.residual_fraction(code, s, rule))
            .unwrap_or(1.0)
    };
    assemble(code, power_grid, grid, fading, objective_weights, &residual)
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizeOptions {
    pub epsilon: f64,
    pub grid_points: usize,
    pub grid_spacing: GridSpacing,
    pub bisection_steps: usize,
    /// Bracket for the upper end of the efficiency interval.
    pub eta_hi_min: f64,
    pub eta_hi_max: f64,
    pub max_iter: usize,
    pub tol: f64,
}

impl Default for OptimizeOptions {
    fn default() -> Self {
        Self {
            epsilon: DEFAULT_EPSILON,
            grid_points: DEFAULT_GRID_POINTS,
            grid_spacing: GridSpacing::Logit,
            bisection_steps: 30,
            eta_hi_min: 0.9,
            eta_hi_max: 1.0 - 1e-6,
            max_iter: evolution::DEFAULT_MAX_ITER,
            tol: evolution::DEFAULT_TOL,
        }
    }
}

/// A nonempty group of the optimized allocation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Allocation {
    /// Fading level index (always 0 without fading).
    pub level: usize,
    /// Transmit power `P_j`.
    pub power: f64,
    /// Fraction of all users in this group.
    pub fraction: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizedProfile {
    pub allocations: Vec<Allocation>,
    /// The same groups described by their received powers.
    pub received: PowerProfile,
    /// LP objective at the optimum.
    pub total_power: f64,
    pub transmit_power: f64,
    pub received_power: f64,
    /// User-averaged block error probability after density evolution.
    pub achieved_pe: f64,
    pub group_pe: Vec<f64>,
    pub eta_hi: f64,
    pub eta_star: f64,
    /// The LP whose solution this is, for re-verification.
    pub lp: LpProblem,
    pub lp_solution: LpSolution,
}

impl OptimizedProfile {
    pub fn group_count(&self) -> usize {
        self.allocations.len()
    }
}

/// Reusable optimizer for a fixed message length and residual bound.
#[derive(Debug, Clone)]
pub struct PowerOptimizer {
    bits: u32,
    bound: BoundKind,
    rule: QuadratureRule,
    table: ResidualTable,
    options: OptimizeOptions,
}

#[derive(Clone)]
struct Candidate {
    eta_hi: f64,
    lp: LpProblem,
    solution: LpSolution,
}

impl PowerOptimizer {
    pub fn new(
        bits: u32,
        bound: BoundKind,
        rule: &QuadratureRule,
        options: OptimizeOptions,
    ) -> Result<Self> {
        if !(options.epsilon > 0.0) || options.grid_points < 2 || options.bisection_steps == 0 {
            return Err(domain(
                "optimizer needs epsilon > 0, >= 2 grid points, >= 1 bisection step",
            ));
        }
        if !(options.eta_hi_min > 0.0
            && options.eta_hi_min < options.eta_hi_max
            && options.eta_hi_max < 1.0)
        {
            return Err(domain(
                "efficiency bracket must satisfy 0 < eta_hi_min < eta_hi_max < 1",
            ));
        }
        let code = CodeSpec::new(bits, 1.0)?;
        let table = ResidualTable::build(&code, bound, rule)?;
        Ok(Self {
            bits,
            bound,
            rule: rule.clone(),
            table,
            options,
        })
    }

    pub fn bound(&self) -> BoundKind {
        self.bound
    }

    pub fn options(&self) -> &OptimizeOptions {
        &self.options
    }

    fn candidate(
        &self,
        code: &CodeSpec,
        power_grid: &[f64],
        fading: Option<&FadingModel>,
        weights: Option<&[f64]>,
        eta_lo: f64,
        eta_hi: f64,
    ) -> Result<Candidate> {
        let grid = EtaGrid::with_spacing(
            self.options.grid_spacing,
            eta_lo,
            eta_hi,
            self.options.grid_points,
            self.options.epsilon,
        )?;
        let lp = assemble(code, power_grid, &grid, fading, weights, &|s| {
            self.table.eval(s)
        })?;
        let solution = simplex_solve(&lp);
        Ok(Candidate {
            eta_hi,
            lp,
            solution,
        })
    }

    fn profile_of(
        &self,
        code: &CodeSpec,
        power_grid: &[f64],
        fading: Option<&FadingModel>,
        cand: Candidate,
    ) -> Result<OptimizedProfile> {
        let (w, _) = levels_of(fading);
        let j_count = power_grid.len();
        let mut allocations: Vec<Allocation> = cand
            .solution
            .x
            .iter()
            .enumerate()
            .filter(|(_, &a)| a > EMPTY_FRACTION)
            .map(|(idx, &fraction)| Allocation {
                level: idx / j_count,
                power: power_grid[idx % j_count],
                fraction,
            })
            .collect();
        let kept: f64 = allocations.iter().map(|a| a.fraction).sum();
        allocations.iter_mut().for_each(|a| a.fraction /= kept);
        let received = PowerProfile::new(
            allocations
                .iter()
                .map(|a| Group {
                    fraction: a.fraction,
                    power: w[a.level] * a.power,
                })
                .collect(),
        )?;
        let trajectory = evolution::evolve(
            code,
            &received,
            self.bound,
            &self.rule,
            self.options.max_iter,
            self.options.tol,
        )?;
        let eta_star = trajectory.eta_star();
        let group_pe = evolution::pe_at(code, &received, &self.rule, eta_star);
        Ok(OptimizedProfile {
            achieved_pe: average_pe(&received, &group_pe),
            group_pe,
            transmit_power: allocations.iter().map(|a| a.fraction * a.power).sum(),
            received_power: received.total_power(),
            total_power: cand.solution.objective,
            received,
            allocations,
            eta_hi: cand.eta_hi,
            eta_star,
            lp: cand.lp,
            lp_solution: cand.solution,
        })
    }

    /// Lowest grid point that no allocation can satisfy on its own.
    fn binding_eta(
        &self,
        code: &CodeSpec,
        power_grid: &[f64],
        fading: Option<&FadingModel>,
        eta_lo: f64,
        eta_hi: f64,
    ) -> f64 {
        let (w, pr) = levels_of(fading);
        let Ok(grid) = EtaGrid::with_spacing(
            self.options.grid_spacing,
            eta_lo,
            eta_hi,
            self.options.grid_points,
            self.options.epsilon,
        ) else {
            return eta_hi;
        };
        grid.points
            .iter()
            .copied()
            .find(|&eta| {
                let least: f64 = w
                    .iter()
                    .zip(&pr)
                    .map(|(&wl, &p)| {
                        p * power_grid
                            .iter()
                            .map(|&pj| wl * pj * self.table.eval(eta * code.n() * wl * pj))
                            .fold(f64::INFINITY, f64::min)
                    })
                    .sum();
                least > grid.progress_bound(eta)
            })
            .unwrap_or(eta_hi)
    }

    /// Minimal-power allocation over `power_grid` whose density evolution
    /// reaches `target_pe`.
    pub fn optimize(
        &self,
        code: &CodeSpec,
        target_pe: f64,
        power_grid: &[f64],
        fading: Option<&FadingModel>,
        objective_weights: Option<&[f64]>,
    ) -> Result<OptimizedProfile> {
        if code.bits() != self.bits {
            return Err(contract(format!(
                "optimizer built for K = {}, called with K = {}",
                self.bits,
                code.bits()
            )));
        }
        if !(target_pe > 0.0 && target_pe < 0.5) {
            return Err(domain(format!(
                "target error probability must lie in (0, 0.5), got {target_pe}"
            )));
        }
        check_power_grid(power_grid)?;
        objective_levels(fading, objective_weights)?;
        let (w, _) = levels_of(fading);
        let p_max = power_grid[power_grid.len() - 1] * w[0];
        let eta_lo = 1.0 / (1.0 + p_max);
        let hi_max = self.options.eta_hi_max;
        if eta_lo >= hi_max {
            return Err(domain(
                "candidate powers too small for a nonempty efficiency interval",
            ));
        }
        let floor = self
            .options
            .eta_hi_min
            .max(eta_lo + 0.01 * (hi_max - eta_lo));
        let try_at = |eta_hi: f64| {
            self.candidate(code, power_grid, fading, objective_weights, eta_lo, eta_hi)
        };
        let infeasible = |reason: &str, eta: f64| Error::Infeasible {
            reason: reason.to_string(),
            binding_eta: eta,
        };

        // Largest upper end for which progress can be guaranteed.
        let at_floor = try_at(floor)?;
        if at_floor.solution.status != LpStatus::Optimal {
            let eta = self.binding_eta(code, power_grid, fading, eta_lo, floor);
            return Err(infeasible("no allocation guarantees progress", eta));
        }
        let mut best = at_floor.clone();
        let top = try_at(hi_max)?;
        if top.solution.status == LpStatus::Optimal {
            best = top;
        } else {
            let (mut lo, mut hi) = (floor, hi_max);
            for _ in 0..self.options.bisection_steps {
                let mid = 0.5 * (lo + hi);
                let cand = try_at(mid)?;
                if cand.solution.status == LpStatus::Optimal {
                    lo = mid;
                    best = cand;
                } else {
                    hi = mid;
                }
            }
        }
        let widest = self.profile_of(code, power_grid, fading, best)?;
        if widest.achieved_pe > target_pe {
            return Err(infeasible(
                "target error probability not reached",
                widest.eta_hi,
            ));
        }

        // Smallest upper end that still meets the target: least power.
        let profile = self.profile_of(code, power_grid, fading, at_floor)?;
        if profile.achieved_pe <= target_pe {
            return Ok(profile);
        }
        let (mut lo, mut hi) = (floor, widest.eta_hi);
        let mut chosen = widest;
        for _ in 0..self.options.bisection_steps {
            let mid = 0.5 * (lo + hi);
            let cand = try_at(mid)?;
            let meets = if cand.solution.status == LpStatus::Optimal {
                let profile = self.profile_of(code, power_grid, fading, cand)?;
                if profile.achieved_pe <= target_pe {
                    chosen = profile;
                    true
                } else {
                    false
                }
            } else {
                false
            };
            if meets {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Ok(chosen)
    }

    /// Smallest Eb/N0 (linear) at spectral efficiency `rate`, with the
    /// default candidate powers. `Eb/N0 = N P / (2K)` with `P` the LP
    /// objective.
    pub fn min_ebno_at_rate(
        &self,
        rate: f64,
        target_pe: f64,
        fading: Option<&FadingModel>,
        objective_weights: Option<&[f64]>,
    ) -> Result<(f64, OptimizedProfile)> {
        if !(rate > 0.0) || !rate.is_finite() {
            return Err(domain(format!("rate must be positive, got {rate}")));
        }
        let code = CodeSpec::new(self.bits, f64::from(self.bits) / rate)?;
        let grid = default_power_grid(&code, target_pe, fading, &self.rule)?;
        let profile = self.optimize(&code, target_pe, &grid, fading, objective_weights)?;
        Ok((profile.total_power / (2.0 * rate), profile))
    }

    /// Largest rate in `[rate_min, rate_max]` whose minimal Eb/N0 does not
    /// exceed `ebno`, located to relative precision `rel_tol`.
    pub fn max_rate_at_ebno(
        &self,
        ebno: f64,
        target_pe: f64,
        fading: Option<&FadingModel>,
        sweep: &SweepOptions,
    ) -> Option<f64> {
        let ok = |rate: f64| {
            self.min_ebno_at_rate(rate, target_pe, fading, None)
                .map(|(need, _)| need <= ebno)
                .unwrap_or(false)
        };
        if !ok(sweep.rate_min) {
            return None;
        }
        let mut lo = sweep.rate_min;
        let mut hi = lo;
        loop {
            if hi >= sweep.rate_max {
                if ok(sweep.rate_max) {
                    return Some(sweep.rate_max);
                }
                hi = sweep.rate_max;
                break;
            }
            let next = (hi * 2.0).min(sweep.rate_max);
            if ok(next) {
                lo = next;
                hi = next;
            } else {
                hi = next;
                break;
            }
        }
        while hi / lo > 1.0 + sweep.rel_tol {
            let mid = (lo * hi).sqrt();
            if ok(mid) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Some(lo)
    }
}

/// Convenience wrapper around [`PowerOptimizer::optimize`].
pub fn optimize_profile(
    code: &CodeSpec,
    target_pe: f64,
    power_grid: &[f64],
    bound: BoundKind,
    fading: Option<&FadingModel>,
    options: &OptimizeOptions,
    rule: &QuadratureRule,
) -> Result<OptimizedProfile> {
    PowerOptimizer::new(code.bits(), bound, rule, options.clone())?
        .optimize(code, target_pe, power_grid, fading, None)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepOptions {
    pub rate_min: f64,
    pub rate_max: f64,
    pub rel_tol: f64,
}

impl Default for SweepOptions {
    fn default() -> Self {
        Self {
            rate_min: 0.05,
            rate_max: 8.0,
            rel_tol: 1e-3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TradeoffPoint {
    /// Linear Eb/N0 (Eb/(mu N0) with fading).
    pub ebno: f64,
    /// Largest rate reachable with the posterior-based residual; `None` if none.
    pub rate_inner: Option<f64>,
    /// Largest rate reachable with the genie-aided residual.
    pub rate_outer: Option<f64>,
}

/// Spectral efficiency versus Eb/N0 for both residual bounds, one point per
/// entry of `ebno_grid` (linear).
#[allow(clippy::too_many_arguments)]
pub fn tradeoff_sweep(
    bits: u32,
    ebno_grid: &[f64],
    target_pe: f64,
    fading: Option<&FadingModel>,
    options: &OptimizeOptions,
    sweep: &SweepOptions,
    rule: &QuadratureRule,
) -> Result<Vec<TradeoffPoint>> {
    if ebno_grid.iter().any(|&e| !(e > 0.0) || !e.is_finite()) {
        return Err(domain("Eb/N0 grid entries must be positive and finite"));
    }
    if !(sweep.rate_min > 0.0 && sweep.rate_min <= sweep.rate_max && sweep.rel_tol > 0.0) {
        return Err(domain(
            "sweep needs 0 < rate_min <= rate_max and rel_tol > 0",
        ));
    }
    let inner = PowerOptimizer::new(bits, BoundKind::UpperResidual, rule, options.clone())?;
    let outer = PowerOptimizer::new(bits, BoundKind::LowerResidual, rule, options.clone())?;
    Ok(ebno_grid
        .par_iter()
        .map(|&ebno| TradeoffPoint {
            ebno,
            rate_inner: inner.max_rate_at_ebno(ebno, target_pe, fading, sweep),
            rate_outer: outer.max_rate_at_ebno(ebno, target_pe, fading, sweep),
        })
        .collect())
}

/// Lower bound on `Eb/(mu N0)` for rate `R` under the fading model, with the
/// finite-length correction `a = 1 - Pe - H2(Pe)/K`.
pub fn fading_outer_bound(rate: f64, bits: u32, pe: f64, fading: &FadingModel) -> Result<f64> {
    if !(pe > 0.0 && pe < 1.0) {
        return Err(domain(format!(
            "error probability must lie in (0, 1), got {pe}"
        )));
    }
    if bits == 0 {
        return Err(domain("K must be positive"));
    }
    let a = 1.0 - pe - binary_entropy(pe)? / f64::from(bits);
    fading_outer_bound_with_factor(rate, a, fading)
}

/// [`fading_outer_bound`] with an explicit correction factor `a`.
pub fn fading_outer_bound_with_factor(rate: f64, a: f64, fading: &FadingModel) -> Result<f64> {
    if !(rate > 0.0) || !rate.is_finite() {
        return Err(domain(format!("rate must be positive, got {rate}")));
    }
    if !a.is_finite() {
        return Err(domain("correction factor must be finite"));
    }
    let l_count = fading.levels() as f64;
    let step = a * rate * std::f64::consts::LN_2 * 2.0 / l_count;
    let sum: f64 = fading
        .weights
        .iter()
        .enumerate()
        .map(|(i, &w)| w * (step * i as f64).exp() * step.exp_m1())
        .sum();
    Ok(sum / (2.0 * rate))
}
