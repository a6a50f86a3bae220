//! Density evolution of the multiuser efficiency.
//!
//! Starting from full interference (`v_j = 1`), the tracker alternates
//! `v_j <- residual(K, eta N P_j)` and `eta <- 1 / (1 + sum_j alpha_j v_j P_j)`.

use crate::asymptotic::{block_error_prob_raw, BoundKind, CodeSpec, EffectiveSnr};
use crate::error::{contract, domain, Result};
use crate::numerics::QuadratureRule;

pub const DEFAULT_TOL: f64 = 1e-9;
pub const DEFAULT_MAX_ITER: usize = 10_000;
/// Fixed points above this efficiency count as successful decoding.
pub const DEFAULT_SUCCESS_ETA: f64 = 0.95;

const FRACTION_SUM_TOL: f64 = 1e-9;

/// One group of users sharing a received power level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Group {
    pub fraction: f64,
    pub power: f64,
}

/// Fractions and received powers of all user groups.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerProfile {
    groups: Vec<Group>,
}

impl PowerProfile {
    pub fn new(groups: Vec<Group>) -> Result<Self> {
        if groups.is_empty() {
            return Err(domain("power profile needs at least one group"));
        }
        for (j, g) in groups.iter().enumerate() {
            if !(g.fraction >= 0.0) || !g.fraction.is_finite() {
                return Err(domain(format!(
                    "group {j}: fraction {} is invalid",
                    g.fraction
                )));
            }
            if !(g.power >= 0.0) || !g.power.is_finite() {
                return Err(domain(format!("group {j}: power {} is invalid", g.power)));
            }
        }
        let total: f64 = groups.iter().map(|g| g.fraction).sum();
        if (total - 1.0).abs() > FRACTION_SUM_TOL {
            return Err(domain(format!(
                "group fractions sum to {total}, expected 1"
            )));
        }
        Ok(Self { groups })
    }

    pub fn from_pairs(pairs: &[(f64, f64)]) -> Result<Self> {
        Self::new(
            pairs
                .iter()
                .map(|&(fraction, power)| Group { fraction, power })
                .collect(),
        )
    }

    /// All users received at the same power.
    pub fn equal_power(power: f64) -> Result<Self> {
        Self::new(vec![Group {
            fraction: 1.0,
            power,
        }])
    }

    pub fn groups(&self) -> &[Group] {
        &self.groups
    }

    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    /// Aggregate power `sum_j alpha_j P_j`.
    pub fn total_power(&self) -> f64 {
        self.groups.iter().map(|g| g.fraction * g.power).sum()
    }

    pub fn max_power(&self) -> f64 {
        self.groups.iter().map(|g| g.power).fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvolutionState {
    pub eta: f64,
    pub v: Vec<f64>,
    pub iteration: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub states: Vec<EvolutionState>,
    /// Whether the efficiency settled within `tol` before `max_iter` ran out.
    pub converged: bool,
}

impl Trajectory {
    pub fn last(&self) -> &EvolutionState {
        self.states
            .last()
            .expect("trajectory always holds the initial state")
    }

    pub fn eta_star(&self) -> f64 {
        self.last().eta
    }

    pub fn succeeded(&self, eta_threshold: f64) -> bool {
        self.eta_star() > eta_threshold
    }
}

/// `1 / (1 + sum_j alpha_j v_j P_j)`.
pub fn multiuser_efficiency(profile: &PowerProfile, v: &[f64]) -> Result<f64> {
    if v.len() != profile.len() {
        return Err(contract(format!(
            "{} residual fractions for {} groups",
            v.len(),
            profile.len()
        )));
    }
    if let Some(bad) = v.iter().find(|x| !(0.0..=1.0).contains(*x)) {
        return Err(domain(format!("residual fraction {bad} outside [0, 1]")));
    }
    Ok(efficiency_unchecked(profile, v))
}

fn efficiency_unchecked(profile: &PowerProfile, v: &[f64]) -> f64 {
    let interference: f64 = profile
        .groups
        .iter()
        .zip(v)
        .map(|(g, &vj)| g.fraction * vj * g.power)
        .sum();
    1.0 / (1.0 + interference)
}

fn residuals(
    code: &CodeSpec,
    profile: &PowerProfile,
    bound: BoundKind,
    rule: &QuadratureRule,
    eta: f64,
) -> Result<Vec<f64>> {
    profile
        .groups
        .iter()
        .map(|g| {
            let s = EffectiveSnr::new(eta * code.n() * g.power)?;
            bound.residual_fraction(code, s, rule)
        })
        .collect()
}

/// Runs the tracker from `v = 1` until the efficiency changes by less than
/// `tol` or `max_iter` updates have been made. The update that meets the
/// tolerance is recorded only if it raises the efficiency.
pub fn evolve(
    code: &CodeSpec,
    profile: &PowerProfile,
    bound: BoundKind,
    rule: &QuadratureRule,
    max_iter: usize,
    tol: f64,
) -> Result<Trajectory> {
    if max_iter == 0 {
        return Err(domain("max_iter must be at least 1"));
    }
    if !(tol > 0.0) || !tol.is_finite() {
        return Err(domain(format!("tol must be positive, got {tol}")));
    }
    let v0 = vec![1.0; profile.len()];
    let mut states = vec![EvolutionState {
        eta: efficiency_unchecked(profile, &v0),
        v: v0,
        iteration: 0,
    }];
    let mut converged = false;
    for iteration in 1..=max_iter {
        let eta_prev = states.last().map(|s| s.eta).unwrap_or(1.0);
        let v = residuals(code, profile, bound, rule, eta_prev)?;
        let eta = efficiency_unchecked(profile, &v);
        // The map is monotone; a decrease can only be rounding at the fixed point.
        if eta <= eta_prev {
            converged = true;
            break;
        }
        states.push(EvolutionState { eta, v, iteration });
        if eta - eta_prev < tol {
            converged = true;
            break;
        }
    }
    Ok(Trajectory { states, converged })
}

/// Per-group block error probabilities at the efficiency where the tracker stops.
pub fn final_pe(
    code: &CodeSpec,
    profile: &PowerProfile,
    bound: BoundKind,
    rule: &QuadratureRule,
    max_iter: usize,
    tol: f64,
) -> Result<Vec<f64>> {
    let trajectory = evolve(code, profile, bound, rule, max_iter, tol)?;
    Ok(pe_at(code, profile, rule, trajectory.eta_star()))
}

pub(crate) fn pe_at(
    code: &CodeSpec,
    profile: &PowerProfile,
    rule: &QuadratureRule,
    eta: f64,
) -> Vec<f64> {
    let ln_a = code.ln_competitors();
    profile
        .groups
        .iter()
        .map(|g| block_error_prob_raw(ln_a, eta * code.n() * g.power, rule))
        .collect()
}

/// User-averaged block error probability `sum_j alpha_j p_j`.
pub fn average_pe(profile: &PowerProfile, per_group: &[f64]) -> f64 {
    profile
        .groups
        .iter()
        .zip(per_group)
        .map(|(g, &p)| g.fraction * p)
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::gauss_hermite;

    #[test]
    fn efficiency_examples() {
        let one = PowerProfile::equal_power(3.0).unwrap();
        assert_eq!(multiuser_efficiency(&one, &[0.0]).unwrap(), 1.0);
        assert_eq!(multiuser_efficiency(&one, &[1.0]).unwrap(), 0.25);
        let two = PowerProfile::from_pairs(&[(0.5, 2.0), (0.5, 4.0)]).unwrap();
        assert_eq!(multiuser_efficiency(&two, &[0.5, 0.25]).unwrap(), 0.5);
        assert!(multiuser_efficiency(&two, &[0.5]).is_err());
        assert!(multiuser_efficiency(&two, &[0.5, 1.5]).is_err());
    }

    #[test]
    fn profile_validation() {
        assert!(PowerProfile::new(vec![]).is_err());
        assert!(PowerProfile::from_pairs(&[(0.5, 1.0)]).is_err());
        assert!(PowerProfile::from_pairs(&[(1.0, -1.0)]).is_err());
        assert!(PowerProfile::from_pairs(&[(1.2, 1.0), (-0.2, 1.0)]).is_err());
        let p = PowerProfile::from_pairs(&[(0.25, 4.0), (0.75, 8.0)]).unwrap();
        assert_eq!(p.total_power(), 7.0);
    }

    #[test]
    fn zero_power_settles_immediately() {
        let rule = gauss_hermite(40).unwrap();
        let code = CodeSpec::new(4, 2.0).unwrap();
        let profile = PowerProfile::equal_power(0.0).unwrap();
        let t = evolve(&code, &profile, BoundKind::UpperResidual, &rule, 100, 1e-9).unwrap();
        assert!(t.converged);
        assert_eq!(t.states.len(), 1);
        assert_eq!(t.eta_star(), 1.0);
    }

    #[test]
    fn rejects_bad_controls() {
        let rule = gauss_hermite(8).unwrap();
        let code = CodeSpec::new(4, 2.0).unwrap();
        let profile = PowerProfile::equal_power(1.0).unwrap();
        assert!(evolve(&code, &profile, BoundKind::LowerResidual, &rule, 0, 1e-9).is_err());
        assert!(evolve(&code, &profile, BoundKind::LowerResidual, &rule, 10, 0.0).is_err());
    }
}
