//! The fermionic p-adic q-integral engine.
//!
//! The level-N Riemann sum of `f` against the measure with mass
//! `(-q)^a / [p^N]_{-q}` on `a + p^N Z_p` is
//!
//! ```text
//! S_N(f) = (1 / [p^N]_{-q}) * sum_{x=0}^{p^N - 1} (-1)^x q^x f(x)
//! ```
//!
//! and the integral is the limit over N. Convergence is detected by
//! agreement of consecutive levels, plus a window-edge continuity probe
//! `f(p^N) = f(0) (mod p^(M-2))`: the finite-level shift identity makes the
//! probe residual exactly `(1+q) q^(p^N) (f(p^N) - f(0)) / (1 + q^(p^N))`,
//! so a function like `(-1)^x` whose plain sums happen to stabilise is
//! still flagged as non-integrable.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::q_bracket;
use crate::padic::{PAdic, PAdicField, PAdicRing, PrecisionBudget};
use crate::ring::CoefficientRing;

/// Outcome of an adaptive integration: the value, the absolute precision
/// certified by level agreement, and the level that achieved it.
#[derive(Debug, Clone)]
pub struct IntegralResult<R: CoefficientRing> {
    pub value: R::Elem,
    pub achieved_precision: i64,
    pub level: u32,
}

/// JSON shape for an integral result.
#[derive(Debug, Clone, Serialize)]
pub struct IntegralResultJson {
    pub value: String,
    pub prec: i64,
    pub level: u32,
}

impl<R: CoefficientRing> IntegralResult<R> {
    pub fn to_json(&self, ring: &R) -> IntegralResultJson {
        IntegralResultJson {
            value: ring.render(&self.value),
            prec: self.achieved_precision,
            level: self.level,
        }
    }
}

/// The alternating normalizer `[p^N]_{-q} = (1 + q^(p^N)) / (1 + q)`,
/// a p-adic unit for every N when q = 1 (mod p).
pub fn fermionic_normalizer(field: &PAdicField, q: &PAdic, level: u32) -> Result<PAdic> {
    let pn = (field.prime() as i64).checked_pow(level).ok_or_else(|| {
        Error::InvalidParameter(format!("level {level} overflows p^N"))
    })?;
    q_bracket(field, pn, &field.neg(q), false)
}

fn validate_q(field: &PAdicField, q: &PAdic) -> Result<()> {
    let diff = field.sub(q, &field.one());
    if diff.valuation_floor() < 1 || field.is_one(q) {
        return Err(Error::InvalidParameter(format!(
            "the fermionic measure needs q = 1 (mod {}) and q != 1",
            field.prime()
        )));
    }
    Ok(())
}

/// The exact level-N Riemann sum. The fold runs in index order; signs
/// depend on the parity of the global index.
pub fn riemann_sum<R, F>(ring: &R, f: F, q: &PAdic, level: u32) -> Result<R::Elem>
where
    R: PAdicRing,
    F: Fn(u64) -> R::Elem,
{
    let field = PAdicField::new(ring.prime(), ring.precision_cap());
    validate_q(&field, q)?;
    let count = (ring.prime() as u64)
        .checked_pow(level)
        .ok_or_else(|| Error::InvalidParameter(format!("level {level} overflows p^N")))?;
    let mut weight = field.one(); // (-1)^x q^x
    let neg_q = field.neg(q);
    let mut acc = ring.zero();
    for x in 0..count {
        let term = ring.mul(&f(x), &ring.from_padic(&weight));
        acc = ring.add(&acc, &term);
        if x + 1 < count {
            weight = field.mul(&weight, &neg_q);
        }
    }
    let norm = fermionic_normalizer(&field, q, level)?;
    let inv = ring.from_padic(&field.invert(&norm)?);
    Ok(ring.mul(&acc, &inv))
}

/// Adaptive integration: raise the level until two consecutive Riemann
/// sums agree modulo `p^target`, then certify the window-edge continuity
/// probe. A discontinuous integrand fails one of the two checks.
pub fn integrate<R, F>(ring: &R, f: F, q: &PAdic, budget: &PrecisionBudget) -> Result<IntegralResult<R>>
where
    R: PAdicRing,
    F: Fn(u64) -> R::Elem,
{
    let mut prev: Option<(u32, R::Elem)> = None;
    let mut level = 1u32;
    while level <= budget.level_cap {
        let current = riemann_sum(ring, &f, q, level)?;
        if let Some((_, before)) = &prev {
            let agreement = ring.diff_valuation_floor(&current, before);
            if agreement >= budget.target {
                let probe_level = level;
                let edge = (ring.prime() as u64).pow(probe_level);
                let probe = ring.diff_valuation_floor(&f(edge), &f(0));
                let needed = (probe_level as i64).min(budget.target) - 2;
                if probe < needed {
                    return Err(Error::NoConvergence {
                        level_cap: budget.level_cap,
                        reason: format!(
                            "continuity probe failed: val(f(p^{probe_level}) - f(0)) = {probe} < {needed}"
                        ),
                    });
                }
                return Ok(IntegralResult {
                    value: current,
                    achieved_precision: agreement.min(ring.precision_cap()),
                    level,
                });
            }
        }
        prev = Some((level, current));
        level += 1;
    }
    Err(Error::NoConvergence {
        level_cap: budget.level_cap,
        reason: format!("no agreement modulo p^{} between consecutive levels", budget.target),
    })
}

/// Residual of the n-step shift identity at a finite level:
///
/// ```text
/// q^n S_N(f_n) + (-1)^(n-1) S_N(f) - [2]_q sum_{l=0}^{n-1} (-1)^(n-1-l) q^l f(l)
/// ```
///
/// with `f_n(x) = f(x + n)`. For integrable f the residual valuation grows
/// with the level; for n = 1 this is the basic shift identity.
pub fn shift_identity_check<R, F>(ring: &R, f: F, q: &PAdic, n: u32, level: u32) -> Result<R::Elem>
where
    R: PAdicRing,
    F: Fn(u64) -> R::Elem,
{
    if n == 0 {
        return Err(Error::InvalidParameter("shift must be a positive integer".into()));
    }
    let field = PAdicField::new(ring.prime(), ring.precision_cap());
    let base = riemann_sum(ring, &f, q, level)?;
    let shifted = riemann_sum(ring, |x| f(x + n as u64), q, level)?;

    let qn = ring.from_padic(&field.pow(q, n as i64)?);
    let sign = if n % 2 == 1 { ring.one() } else { ring.neg(&ring.one()) };
    let two_q = ring.from_padic(&field.add(&field.one(), q));

    let mut boundary = ring.zero();
    for l in 0..n as u64 {
        let mut term = ring.mul(&f(l), &ring.from_padic(&field.pow(q, l as i64)?));
        if (n as u64 - 1 - l) % 2 == 1 {
            term = ring.neg(&term);
        }
        boundary = ring.add(&boundary, &term);
    }

    let lhs = ring.add(&ring.mul(&qn, &shifted), &ring.mul(&sign, &base));
    Ok(ring.sub(&lhs, &ring.mul(&two_q, &boundary)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{q_bracket_from_power, rat};
    use crate::padic::qpow_neg;

    fn setup(cap: i64) -> (PAdicField, PAdic) {
        let field = PAdicField::new(3, cap);
        let q = field.from_integer(4);
        (field, q)
    }

    #[test]
    fn constant_integrand_is_exact() {
        let (field, q) = setup(12);
        for level in [1u32, 3, 5] {
            let s = riemann_sum(&field, |_| field.one(), &q, level).unwrap();
            assert!(s.agrees_mod(&field.one(), 12));
        }
        let budget = PrecisionBudget::new(8, 12);
        let r = integrate(&field, |_| field.one(), &q, &budget).unwrap();
        assert!(r.value.agrees_mod(&field.one(), 8));
    }

    #[test]
    fn geometric_integrand_closed_form() {
        // f(x) = q^(-x) integrates to (1+q)/2; at level N the sum is
        // exactly (1+q)/(1+q^(p^N))
        let (field, q) = setup(14);
        let level = 5u32;
        let s = riemann_sum(&field, |x| qpow_neg(&field, &q, x).unwrap(), &q, level).unwrap();
        let pn = 3i64.pow(level);
        let exact = field
            .div(
                &field.add(&field.one(), &q),
                &field.add(&field.one(), &field.pow(&q, pn).unwrap()),
            )
            .unwrap();
        assert!(field.sub(&s, &exact).valuation_floor() >= 13);

        let limit = field.from_rational(&rat(5, 2)).unwrap();
        let budget = PrecisionBudget::new(5, 12);
        let r = integrate(&field, |x| qpow_neg(&field, &q, x).unwrap(), &q, &budget).unwrap();
        assert!(field.sub(&r.value, &limit).valuation_floor() >= 5);
    }

    #[test]
    fn first_moment_matches_minus_half() {
        // f(x) = q^(-x) [x]_q integrates to -1/2 for every admissible q
        let (field, q) = setup(16);
        let f = |x: u64| {
            let qx = field.pow(&q, x as i64).unwrap();
            let bracket = q_bracket_from_power(&field, &qx, &q).unwrap();
            field.mul(&qpow_neg(&field, &q, x).unwrap(), &bracket)
        };
        let s = riemann_sum(&field, f, &q, 8).unwrap();
        let minus_half = field.from_rational(&rat(-1, 2)).unwrap();
        assert!(field.sub(&s, &minus_half).valuation_floor() >= 6);
    }

    #[test]
    fn parity_integrand_is_rejected() {
        // (-1)^x is not p-adically continuous for odd p; its plain sums
        // stabilise but the continuity probe catches it
        let (field, q) = setup(12);
        let f = |x: u64| {
            if x % 2 == 0 {
                field.one()
            } else {
                field.from_integer(-1)
            }
        };
        let budget = PrecisionBudget::new(6, 12);
        let err = integrate(&field, f, &q, &budget).unwrap_err();
        assert!(matches!(err, Error::NoConvergence { .. }));
    }

    #[test]
    fn level_stability_for_polynomial_integrands() {
        let (field, q) = setup(14);
        let f = |x: u64| {
            let qx = field.pow(&q, x as i64).unwrap();
            let b = q_bracket_from_power(&field, &qx, &q).unwrap();
            field.mul(&qpow_neg(&field, &q, x).unwrap(), &field.mul(&b, &b))
        };
        let mut prev: Option<PAdic> = None;
        for level in 1..=6u32 {
            let s = riemann_sum(&field, f, &q, level).unwrap();
            if let Some(before) = prev {
                let v = field.sub(&s, &before).valuation_floor();
                assert!(v >= level as i64 - 2, "level {level}: valuation {v}");
            }
            prev = Some(s);
        }
    }

    #[test]
    fn linearity_at_fixed_level() {
        let (field, q) = setup(10);
        let f = |x: u64| field.from_integer(x as i64 % 9);
        let g = |x: u64| field.from_integer(((x * x) % 7) as i64);
        let a = field.from_integer(5);
        let b = field.from_rational(&rat(2, 7)).unwrap();
        let level = 3;
        let combo = riemann_sum(
            &field,
            |x| field.add(&field.mul(&a, &f(x)), &field.mul(&b, &g(x))),
            &q,
            level,
        )
        .unwrap();
        let separate = field.add(
            &field.mul(&a, &riemann_sum(&field, f, &q, level).unwrap()),
            &field.mul(&b, &riemann_sum(&field, g, &q, level).unwrap()),
        );
        assert!(combo.agrees_mod(&separate, 9));
    }

    #[test]
    fn shift_identity_residuals() {
        let (field, q) = setup(14);
        // f = 1, n = 1: q + 1 - [2]_q = 0 exactly at every level
        let r = shift_identity_check(&field, |_| field.one(), &q, 1, 4).unwrap();
        assert!(r.valuation_floor() >= 14);

        // f(x) = [x]_q, n = 1: residual valuation >= N - 2
        for level in 2..=6u32 {
            let r = shift_identity_check(
                &field,
                |x| {
                    let qx = field.pow(&q, x as i64).unwrap();
                    q_bracket_from_power(&field, &qx, &q).unwrap()
                },
                &q,
                1,
                level,
            )
            .unwrap();
            assert!(
                r.valuation_floor() >= level as i64 - 2,
                "level {level}: {}",
                r.valuation_floor()
            );
        }

        // even shift flips the sign pattern consistently: residual still small
        let r2 = shift_identity_check(
            &field,
            |x| {
                let qx = field.pow(&q, x as i64).unwrap();
                q_bracket_from_power(&field, &qx, &q).unwrap()
            },
            &q,
            2,
            5,
        )
        .unwrap();
        assert!(r2.valuation_floor() >= 3);
    }

    #[test]
    fn rejects_bad_measure_parameter() {
        let field = PAdicField::new(3, 8);
        let q = field.from_integer(5); // 5 = 2 mod 3
        assert!(riemann_sum(&field, |_| field.one(), &q, 2).is_err());
        let one = field.one();
        assert!(riemann_sum(&field, |_| field.one(), &one, 2).is_err());
    }
}
