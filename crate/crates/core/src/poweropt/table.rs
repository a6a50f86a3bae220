//! Tabulated residual fraction `v(s)` for fast LP assembly.
//!
//! `ln v` is sampled on a uniform grid in `u = sqrt(s)` and interpolated with
//! four-point Lagrange polynomials. Beyond the last sample `v < 1e-300` and the
//! table returns zero.

use crate::asymptotic::{block_error_prob_raw, residual_upper_raw, BoundKind, CodeSpec};
use crate::error::{domain, Result};
use crate::numerics::QuadratureRule;

const STEP: f64 = 1.0 / 256.0;
const MAX_SAMPLES: usize = 1 << 17;
const LN_V_FLOOR: f64 = -690.0;

#[derive(Debug, Clone)]
pub(crate) struct ResidualTable {
    ln_v: Vec<f64>,
    u_max: f64,
}

impl ResidualTable {
    pub(crate) fn build(code: &CodeSpec, bound: BoundKind, rule: &QuadratureRule) -> Result<Self> {
        if bound == BoundKind::UpperResidual && code.bits() == 0 {
            return Err(domain("posterior-based residual needs K >= 1"));
        }
        let ln_a = code.ln_competitors();
        let eval = |s: f64| match bound {
            BoundKind::UpperResidual => residual_upper_raw(ln_a, s, rule),
            BoundKind::LowerResidual => block_error_prob_raw(ln_a, s, rule),
        };
        let mut ln_v = Vec::new();
        for i in 0..MAX_SAMPLES {
            let u = i as f64 * STEP;
            let lv = eval(u * u).ln();
            if !(lv > LN_V_FLOOR) {
                break;
            }
            ln_v.push(lv);
        }
        let u_max = if ln_v.len() < 4 {
            ln_v.clear();
            0.0
        } else {
            (ln_v.len() - 1) as f64 * STEP
        };
        Ok(Self { ln_v, u_max })
    }

    pub(crate) fn eval(&self, s: f64) -> f64 {
        let u = s.max(0.0).sqrt();
        if self.ln_v.is_empty() || u > self.u_max {
            return 0.0;
        }
        let t = u / STEP;
        let i0 = (t.floor() as usize)
            .saturating_sub(1)
            .min(self.ln_v.len() - 4);
        let x = t - i0 as f64;
        let y = &self.ln_v[i0..i0 + 4];
        // Lagrange basis on abscissae 0, 1, 2, 3.
        let l0 = -(x - 1.0) * (x - 2.0) * (x - 3.0) / 6.0;
        let l1 = x * (x - 2.0) * (x - 3.0) / 2.0;
        let l2 = -x * (x - 1.0) * (x - 3.0) / 2.0;
        let l3 = x * (x - 1.0) * (x - 2.0) / 6.0;
        (l0 * y[0] + l1 * y[1] + l2 * y[2] + l3 * y[3])
            .exp()
            .min(1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asymptotic::EffectiveSnr;
    use crate::numerics::gauss_hermite;

    #[test]
    fn matches_direct_evaluation() {
        let rule = gauss_hermite(120).unwrap();
        for bound in [BoundKind::UpperResidual, BoundKind::LowerResidual] {
            let code = CodeSpec::new(8, 1.0).unwrap();
            let table = ResidualTable::build(&code, bound, &rule).unwrap();
            for &s in &[0.0, 0.3, 7.7, 21.0, 38.2, 55.5, 120.0] {
                let exact = bound
                    .residual_fraction(&code, EffectiveSnr::new(s).unwrap(), &rule)
                    .unwrap();
                let approx = table.eval(s);
                assert!(
                    (approx - exact).abs() <= 1e-7 * exact + 1e-300,
                    "{bound:?} s={s}: {approx} vs {exact}"
                );
            }
        }
    }

    #[test]
    fn zero_bits_lower_is_zero() {
        let rule = gauss_hermite(20).unwrap();
        let code = CodeSpec::new(0, 1.0).unwrap();
        let table = ResidualTable::build(&code, BoundKind::LowerResidual, &rule).unwrap();
        assert_eq!(table.eval(3.0), 0.0);
        assert!(ResidualTable::build(&code, BoundKind::UpperResidual, &rule).is_err());
    }
}
