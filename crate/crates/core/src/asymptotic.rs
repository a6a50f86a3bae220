//! Large-system error probabilities of Gaussian random codes and the residual
//! interference left behind by soft cancellation.
//!
//! In the many-user limit the codewords of a user become orthogonal, so the
//! block error probability is that of a `2^K`-ary orthogonal constellation at
//! effective SNR `s = eta N P_j`:
//!
//! ```text
//! p(s) = 1 - E[ Q(X - sqrt s)^(2^K - 1) ],   X ~ N(0, 1)
//! ```
//!
//! Soft cancellation with weight `1 - p_post` leaves a fraction
//! `1 - E[(1 - p_post)^2]` of a user's interference power. The exact
//! posterior is not computable, so two surrogates bracket it: conditioning on
//! the largest matched-filter output only ([`BoundKind::UpperResidual`]) and a
//! genie that knows whether each decision is right ([`BoundKind::LowerResidual`]).

use std::f64::consts::LN_2;

use crate::error::{domain, Result};
use crate::numerics::{
    self, gaussian_q_inv_neg_ln, ln_competitors, ln_q, ln_q_pow_ln_exponent, QuadratureRule,
};

/// Largest supported message length in bits.
pub const MAX_BITS: u32 = 1024;

/// Message length and dimension-per-user of the random code.
///
/// The codeword of each of `M` users spans `M N` real channel uses.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CodeSpec {
    bits: u32,
    n: f64,
}

impl CodeSpec {
    pub fn new(bits: u32, n: f64) -> Result<Self> {
        if bits > MAX_BITS {
            return Err(domain(format!("K must be at most {MAX_BITS}, got {bits}")));
        }
        if !(n > 0.0) || !n.is_finite() {
            return Err(domain(format!("N must be positive and finite, got {n}")));
        }
        Ok(Self { bits, n })
    }

    /// Information bits per user, `K`.
    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// Channel uses per user and per user count, `N`.
    pub fn n(&self) -> f64 {
        self.n
    }

    /// Spectral efficiency `R = K / N`.
    pub fn rate(&self) -> f64 {
        f64::from(self.bits) / self.n
    }

    /// `ln(2^K - 1)`.
    pub fn ln_competitors(&self) -> f64 {
        ln_competitors(self.bits)
    }

    pub fn with_n(&self, n: f64) -> Result<Self> {
        Self::new(self.bits, n)
    }
}

/// Effective signal-to-interference-and-noise ratio `s = eta N P_j`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct EffectiveSnr(f64);

impl EffectiveSnr {
    pub fn new(s: f64) -> Result<Self> {
        if !(s >= 0.0) || !s.is_finite() {
            return Err(domain(format!(
                "effective SNR must be finite and >= 0, got {s}"
            )));
        }
        Ok(Self(s))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// Which surrogate of the remaining interference fraction to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundKind {
    /// Cancellation driven by the posterior given the largest correlator output.
    UpperResidual,
    /// Genie-aided cancellation: the residual equals the block error probability.
    LowerResidual,
}

impl BoundKind {
    pub fn residual_fraction(
        self,
        code: &CodeSpec,
        s: EffectiveSnr,
        rule: &QuadratureRule,
    ) -> Result<f64> {
        match self {
            BoundKind::UpperResidual => residual_fraction_upper(code, s, rule),
            BoundKind::LowerResidual => Ok(residual_fraction_lower(code, s, rule)),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            BoundKind::UpperResidual => "upper",
            BoundKind::LowerResidual => "lower",
        }
    }
}

/// Ensemble-averaged block error probability of a user seen at effective SNR `s`.
pub fn block_error_prob(code: &CodeSpec, s: EffectiveSnr, rule: &QuadratureRule) -> f64 {
    block_error_prob_raw(code.ln_competitors(), s.0, rule)
}

pub(crate) fn block_error_prob_raw(ln_a: f64, s: f64, rule: &QuadratureRule) -> f64 {
    if ln_a == f64::NEG_INFINITY {
        return 0.0;
    }
    let rs = s.sqrt();
    if rs > 2.0 * rule.max_node() {
        return union_tail(ln_a, s);
    }
    let p: f64 = rule
        .nodes()
        .iter()
        .zip(rule.weights())
        .map(|(&x, &w)| w * -ln_q_pow_ln_exponent(x - rs, ln_a).exp_m1())
        .sum();
    p.clamp(0.0, 1.0)
}

/// Pairwise-error bound `a Q(sqrt(s/2))`, tight once it is small; values
/// below `1e-300` are reported as zero.
fn union_tail(ln_a: f64, s: f64) -> f64 {
    let ln_p = ln_a + ln_q((0.5 * s).sqrt());
    if ln_p < (1e-300f64).ln() {
        0.0
    } else {
        ln_p.exp().min(1.0)
    }
}

/// `ln F(x)` from the posterior error probability `1 / (1 + F(x))`.
#[inline]
fn ln_odds_correct(ln_a: f64, rs: f64, x: f64) -> f64 {
    ln_q(-x) - ln_q(rs - x) + x * rs - 0.5 * rs * rs - ln_a
}

/// `1 / (1 + exp(t))` without overflow.
#[inline]
fn logistic_neg(t: f64) -> f64 {
    if t > 0.0 {
        let e = (-t).exp();
        e / (1.0 + e)
    } else {
        1.0 / (1.0 + t.exp())
    }
}

/// Posterior probability that the decision is wrong given the normalized
/// largest correlator output `x`.
pub fn posterior_error_prob(code: &CodeSpec, s: EffectiveSnr, x: f64) -> Result<f64> {
    if code.bits == 0 {
        return Err(domain("posterior error probability needs K >= 1"));
    }
    if !x.is_finite() {
        return Err(domain(format!("statistic must be finite, got {x}")));
    }
    Ok(posterior_raw(code.ln_competitors(), s.0, x))
}

#[inline]
pub(crate) fn posterior_raw(ln_a: f64, s: f64, x: f64) -> f64 {
    logistic_neg(ln_odds_correct(ln_a, s.sqrt(), x))
}

/// Residual interference fraction when cancellation weights come from the
/// posterior given the largest correlator output.
pub fn residual_fraction_upper(
    code: &CodeSpec,
    s: EffectiveSnr,
    rule: &QuadratureRule,
) -> Result<f64> {
    if code.bits == 0 {
        return Err(domain("posterior-based residual needs K >= 1"));
    }
    Ok(residual_upper_raw(code.ln_competitors(), s.0, rule))
}

pub(crate) fn residual_upper_raw(ln_a: f64, s: f64, rule: &QuadratureRule) -> f64 {
    let rs = s.sqrt();
    let half_s = 0.5 * s;
    let mut v = 0.0;
    for ((&x, &w), &ln_q_x) in rule
        .nodes()
        .iter()
        .zip(rule.weights())
        .zip(rule.ln_q_nodes())
    {
        if w == 0.0 {
            continue;
        }
        let ln_q_shift = ln_q(x - rs);
        let ln_correct = ln_q_pow_from_ln_q(ln_q_shift, ln_a);
        // ln F evaluated at the statistic sqrt(s) - x.
        let ln_f = ln_q_shift - ln_q_x + half_s - x * rs - ln_a;
        let post = logistic_neg(ln_f);
        v += w * (-ln_correct.exp_m1() + ln_correct.exp() * post);
    }
    let floor = block_error_prob_raw(ln_a, s, rule);
    v.clamp(floor, 1.0)
}

#[inline]
fn ln_q_pow_from_ln_q(ln_q_val: f64, ln_a: f64) -> f64 {
    if ln_q_val >= 0.0 {
        0.0
    } else {
        -(ln_a + (-ln_q_val).ln()).exp()
    }
}

/// Genie-aided residual fraction; identical to the block error probability.
pub fn residual_fraction_lower(code: &CodeSpec, s: EffectiveSnr, rule: &QuadratureRule) -> f64 {
    block_error_prob(code, s, rule)
}

fn check_ebno(ebno: f64) -> Result<()> {
    if ebno >= 0.0 && ebno.is_finite() {
        Ok(())
    } else {
        Err(domain(format!("Eb/N0 must be finite and >= 0, got {ebno}")))
    }
}

/// Single-user (interference-free) block error probability at linear `Eb/N0`,
/// i.e. the block error probability at `s = 2 K Eb/N0`.
pub fn single_user_pe(bits: u32, ebno: f64, rule: &QuadratureRule) -> Result<f64> {
    check_ebno(ebno)?;
    let code = CodeSpec::new(bits, 1.0)?;
    Ok(block_error_prob_raw(
        code.ln_competitors(),
        2.0 * f64::from(bits) * ebno,
        rule,
    ))
}

/// Finite-blocklength lower bound `1 - Q(Q^-1(2^-K) - sqrt(2 K Eb/N0))`.
pub fn pe_lower_bound(bits: u32, ebno: f64) -> Result<f64> {
    check_ebno(ebno)?;
    if bits > MAX_BITS {
        return Err(domain(format!("K must be at most {MAX_BITS}, got {bits}")));
    }
    if bits == 0 {
        return Ok(0.0);
    }
    let k = f64::from(bits);
    let threshold = gaussian_q_inv_neg_ln(k * LN_2)?;
    Ok(numerics::q((2.0 * k * ebno).sqrt() - threshold))
}

fn check_target(target_pe: f64) -> Result<()> {
    if target_pe > 0.0 && target_pe < 1.0 {
        Ok(())
    } else {
        Err(domain(format!(
            "target error probability must lie in (0, 1), got {target_pe}"
        )))
    }
}

/// Linear Eb/N0 at which [`single_user_pe`] equals `target_pe`.
pub fn ebno_for_single_user_pe(bits: u32, target_pe: f64, rule: &QuadratureRule) -> Result<f64> {
    check_target(target_pe)?;
    let code = CodeSpec::new(bits, 1.0)?;
    if bits == 0 {
        return Err(domain("K = 0 is error free at every Eb/N0"));
    }
    let ln_a = code.ln_competitors();
    let pe = |s: f64| block_error_prob_raw(ln_a, s, rule);
    if pe(0.0) <= target_pe {
        return Ok(0.0);
    }
    let (mut lo, mut hi) = (0.0, 1.0);
    while pe(hi) > target_pe {
        lo = hi;
        hi *= 2.0;
        if hi > 1e12 {
            return Err(domain("target error probability not reachable"));
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if pe(mid) > target_pe {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(hi / (2.0 * f64::from(bits)))
}

/// Linear Eb/N0 at which [`pe_lower_bound`] equals `target_pe`.
pub fn ebno_for_pe_lower_bound(bits: u32, target_pe: f64) -> Result<f64> {
    check_target(target_pe)?;
    if bits == 0 || bits > MAX_BITS {
        return Err(domain(format!("K must lie in 1..={MAX_BITS}, got {bits}")));
    }
    let k = f64::from(bits);
    let root = numerics::gaussian_q_inv(target_pe)? + gaussian_q_inv_neg_ln(k * LN_2)?;
    if root <= 0.0 {
        return Ok(0.0);
    }
    Ok(root * root / (2.0 * k))
}

/// Exact ensemble-averaged error probability of a user among `users` users,
/// conditioned on the norms of the received word and of the
/// interference-plus-noise vector. Validation only: relies on [`numerics::marcum_q`].
pub fn conditional_pe_finite(
    users: usize,
    code: &CodeSpec,
    power: f64,
    r_norm: f64,
    z_norm: f64,
) -> Result<f64> {
    if users == 0 {
        return Err(domain("user count must be positive"));
    }
    if !(power > 0.0) || !power.is_finite() {
        return Err(domain(format!(
            "power must be positive and finite, got {power}"
        )));
    }
    if !(r_norm >= 0.0) || !(z_norm >= 0.0) {
        return Err(domain("norms must be nonnegative"));
    }
    let dims = users as f64 * code.n;
    if (dims - dims.round()).abs() > 1e-9 || dims.round() < 1.0 {
        return Err(domain(format!(
            "M N must be a positive integer, got {dims}"
        )));
    }
    if code.bits == 0 {
        return Ok(0.0);
    }
    let sigma = (power / users as f64).sqrt();
    let (qm, pm) = numerics::marcum_pq(0.5 * dims.round(), r_norm / sigma, z_norm / sigma)?;
    let ln_qm = if pm < 0.5 { (-pm).ln_1p() } else { qm.ln() };
    Ok(-ln_q_pow_from_ln_q(ln_qm, code.ln_competitors()).exp_m1())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::gauss_hermite;

    fn snr(s: f64) -> EffectiveSnr {
        EffectiveSnr::new(s).unwrap()
    }

    #[test]
    fn code_spec_validation() {
        assert!(CodeSpec::new(1025, 1.0).is_err());
        assert!(CodeSpec::new(8, 0.0).is_err());
        assert!(CodeSpec::new(8, f64::NAN).is_err());
        assert!(EffectiveSnr::new(-1.0).is_err());
        assert_eq!(CodeSpec::new(8, 4.0).unwrap().rate(), 2.0);
    }

    #[test]
    fn zero_bits_is_error_free() {
        let rule = gauss_hermite(64).unwrap();
        let code = CodeSpec::new(0, 1.0).unwrap();
        for &s in &[0.0, 1.0, 30.0] {
            assert_eq!(block_error_prob(&code, snr(s), &rule), 0.0);
            assert_eq!(residual_fraction_lower(&code, snr(s), &rule), 0.0);
        }
        assert!(posterior_error_prob(&code, snr(1.0), 0.0).is_err());
        assert!(residual_fraction_upper(&code, snr(1.0), &rule).is_err());
    }

    #[test]
    fn posterior_without_signal_is_uniform() {
        for &bits in &[1u32, 8] {
            let code = CodeSpec::new(bits, 1.0).unwrap();
            for &x in &[-3.0, 0.0, 2.5, 10.0] {
                let p = posterior_error_prob(&code, snr(0.0), x).unwrap();
                let expected = 1.0 - 0.5f64.powi(bits as i32);
                assert!((p - expected).abs() < 1e-12, "K={bits} x={x}: {p}");
            }
        }
    }

    #[test]
    fn posterior_survives_extreme_statistics() {
        let code = CodeSpec::new(1024, 1.0).unwrap();
        for &x in &[-60.0, 0.0, 60.0, 300.0] {
            let p = posterior_error_prob(&code, snr(2500.0), x).unwrap();
            assert!((0.0..=1.0).contains(&p), "x={x}: {p}");
        }
    }

    #[test]
    fn huge_snr_uses_tail() {
        let rule = gauss_hermite(20).unwrap();
        let code = CodeSpec::new(4, 1.0).unwrap();
        let s = 4.0 * rule.max_node().powi(2) + 1.0;
        let p = block_error_prob(&code, snr(s), &rule);
        assert!((0.0..1e-20).contains(&p));
        assert_eq!(block_error_prob(&code, snr(1e6), &rule), 0.0);
    }

    #[test]
    fn conditional_pe_edge_cases() {
        let code = CodeSpec::new(2, 2.0).unwrap();
        assert_eq!(conditional_pe_finite(4, &code, 4.0, 3.0, 0.0).unwrap(), 0.0);
        let zero = CodeSpec::new(0, 2.0).unwrap();
        assert_eq!(conditional_pe_finite(4, &zero, 4.0, 3.0, 2.0).unwrap(), 0.0);
        let frac = CodeSpec::new(2, 0.3).unwrap();
        assert!(conditional_pe_finite(4, &frac, 4.0, 3.0, 2.0).is_err());
    }
}
