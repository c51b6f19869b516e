//! The central family: modified twisted q-Euler numbers and polynomials
//! with weight alpha, their Dirichlet-twisted generalization, and the
//! finite identities relating them.
//!
//! The defining evaluator is the closed form
//!
//! ```text
//! E~_n(x|chi) = [2]_q (1-q^alpha)^(-n)
//!     sum_{l=0}^{d-1} (-1)^l w^l chi(l)
//!     sum_{k=0}^{n} C(n,k) (-1)^k q^(alpha k (x+l)) / (q^(alpha k d) w^d + 1)
//! ```
//!
//! which is the resummation of the alternating series
//! `[2]_q sum_m (-1)^m w^m chi(m) [x+m]_(q^alpha)^n`; the series itself is
//! only Abel-summable and appears as a diagnostic in the L-function module.
//! Every evaluator takes the power `q^(alpha x)` explicitly (`*_with_power`)
//! or computes it through the ring's exact fractional-power rule.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::characters::DirichletCharacter;
use crate::error::{Error, Result};
use crate::integral::riemann_sum;
use crate::numeric::{binomial_rational, q_bracket, q_bracket_from_power};
use crate::padic::{PAdic, PAdicRing, PrecisionBudget};
use crate::ring::{CoefficientRing, RootOfUnity};

/// The tuple (alpha, q, w, ring) parameterizing every family here.
///
/// Constraints checked at construction: alpha is a positive integer;
/// q satisfies the ring-specific family constraint (exact/complex:
/// 0 < |q| < 1; p-adic: q = 1 mod p) and q^alpha != 1; the twist order is
/// admissible for the ring (p-power order on the p-adic side).
#[derive(Debug, Clone)]
pub struct EulerParams<R: CoefficientRing> {
    ring: R,
    alpha: u32,
    q: R::Elem,
    w: RootOfUnity,
    w_elem: R::Elem,
}

impl<R: CoefficientRing> EulerParams<R> {
    pub fn new(ring: R, alpha: u32, q: R::Elem, w: RootOfUnity) -> Result<Self> {
        if alpha == 0 {
            return Err(Error::InvalidParameter("weight alpha must be a positive integer".into()));
        }
        ring.validate_family_q(&q)?;
        ring.validate_twist(&w)?;
        let qa = ring.pow(&q, alpha as i64)?;
        if ring.is_one(&qa) {
            return Err(Error::InvalidParameter("q^alpha must not be 1".into()));
        }
        let w_elem = ring.embed_root_of_unity(&w)?;
        Ok(EulerParams { ring, alpha, q, w, w_elem })
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }
    pub fn alpha(&self) -> u32 {
        self.alpha
    }
    pub fn q(&self) -> &R::Elem {
        &self.q
    }
    pub fn twist(&self) -> &RootOfUnity {
        &self.w
    }
    pub fn twist_elem(&self) -> &R::Elem {
        &self.w_elem
    }

    /// `q^alpha` as a ring element.
    pub fn q_alpha(&self) -> R::Elem {
        self.ring.pow(&self.q, self.alpha as i64).expect("validated at construction")
    }

    /// The derived parameter set (alpha, q^d, w^d) used by the
    /// distribution formula and the residue-class decompositions.
    pub fn base_power(&self, d: u64) -> Result<Self> {
        let qd = self.ring.pow(&self.q, d as i64)?;
        EulerParams::new(self.ring.clone(), self.alpha, qd, self.w.pow(d as i64))
    }

    /// `q^(alpha x)` for a rational argument, via the ring's exact
    /// fractional-power rule.
    pub fn power_for(&self, x: &BigRational) -> Result<R::Elem> {
        let e = BigRational::from_integer(BigInt::from(self.alpha)) * x;
        self.ring.pow_rational(&self.q, &e)
    }

    /// `[2]_q = 1 + q`.
    pub fn two_bracket(&self) -> R::Elem {
        self.ring.add(&self.ring.one(), &self.q)
    }
}

/// Closed-form evaluation of `E~_n(x|chi)` with `q^(alpha x)` supplied by
/// the caller as `power`.
pub fn twisted_gen_euler_poly_with_power<R: CoefficientRing>(
    n: u32,
    power: &R::Elem,
    chi: &DirichletCharacter,
    params: &EulerParams<R>,
) -> Result<R::Elem> {
    let ring = &params.ring;
    let d = chi.modulus();
    let qa = params.q_alpha();
    let qad = ring.pow(&qa, d as i64)?;
    let wd = ring.pow(&params.w_elem, d as i64)?;

    // denominators q^(alpha k d) w^d + 1 for k = 0..n, with pole detection
    let mut denom_invs = Vec::with_capacity(n as usize + 1);
    let mut qad_k = ring.one();
    for k in 0..=n {
        let dk = ring.add(&ring.mul(&qad_k, &wd), &ring.one());
        if ring.is_zero(&dk) {
            return Err(Error::Pole { k });
        }
        denom_invs.push(ring.invert(&dk)?);
        if k < n {
            qad_k = ring.mul(&qad_k, &qad);
        }
    }

    let binoms: Vec<R::Elem> = (0..=n)
        .map(|k| ring.from_rational(&binomial_rational(n as u64, k as u64)))
        .collect::<Result<_>>()?;

    let mut outer = ring.zero();
    let mut w_l = ring.one();
    let mut qa_l = ring.one();
    for l in 0..d {
        let chi_l = chi.value_in(ring, l as i64)?;
        if !ring.is_zero(&chi_l) {
            let b = ring.mul(power, &qa_l); // q^(alpha (x + l))
            let mut inner = ring.zero();
            let mut b_k = ring.one();
            for k in 0..=n {
                let mut term = ring.mul(&binoms[k as usize], &ring.mul(&b_k, &denom_invs[k as usize]));
                if k % 2 == 1 {
                    term = ring.neg(&term);
                }
                inner = ring.add(&inner, &term);
                if k < n {
                    b_k = ring.mul(&b_k, &b);
                }
            }
            let mut contrib = ring.mul(&chi_l, &ring.mul(&w_l, &inner));
            if l % 2 == 1 {
                contrib = ring.neg(&contrib);
            }
            outer = ring.add(&outer, &contrib);
        }
        if l + 1 < d {
            w_l = ring.mul(&w_l, &params.w_elem);
            qa_l = ring.mul(&qa_l, &qa);
        }
    }

    let one_minus_qa_inv = ring.invert(&ring.sub(&ring.one(), &qa))?;
    let prefactor = ring.mul(&params.two_bracket(), &ring.pow(&one_minus_qa_inv, n as i64)?);
    Ok(ring.mul(&prefactor, &outer))
}

/// `E~_n(x|chi)` for a rational argument.
pub fn twisted_gen_euler_poly<R: CoefficientRing>(
    n: u32,
    x: &BigRational,
    chi: &DirichletCharacter,
    params: &EulerParams<R>,
) -> Result<R::Elem> {
    let power = params.power_for(x)?;
    twisted_gen_euler_poly_with_power(n, &power, chi, params)
}

/// The untwisted polynomial `E_n(x)` with `q^(alpha x)` supplied.
pub fn euler_polynomial_with_power<R: CoefficientRing>(
    n: u32,
    power: &R::Elem,
    params: &EulerParams<R>,
) -> Result<R::Elem> {
    let trivial = DirichletCharacter::trivial(1)?;
    twisted_gen_euler_poly_with_power(n, power, &trivial, params)
}

/// The untwisted polynomial `E_n(x)` for a rational argument.
pub fn euler_polynomial<R: CoefficientRing>(
    n: u32,
    x: &BigRational,
    params: &EulerParams<R>,
) -> Result<R::Elem> {
    let power = params.power_for(x)?;
    euler_polynomial_with_power(n, &power, params)
}

/// The number `E_n = E_n(0)`.
pub fn euler_number<R: CoefficientRing>(n: u32, params: &EulerParams<R>) -> Result<R::Elem> {
    euler_polynomial_with_power(n, &params.ring.one(), params)
}

/// The numbers `E~_l(chi)` for l = 0..=n_max; the memoization vector
/// consumed by the addition formula and the l-function series.
pub fn twisted_numbers_upto<R: CoefficientRing>(
    n_max: u32,
    chi: &DirichletCharacter,
    params: &EulerParams<R>,
) -> Result<Vec<R::Elem>> {
    (0..=n_max)
        .map(|l| twisted_gen_euler_poly_with_power(l, &params.ring.one(), chi, params))
        .collect()
}

/// The untwisted numbers `E_l` for l = 0..=n_max.
pub fn euler_numbers_upto<R: CoefficientRing>(
    n_max: u32,
    params: &EulerParams<R>,
) -> Result<Vec<R::Elem>> {
    let trivial = DirichletCharacter::trivial(1)?;
    twisted_numbers_upto(n_max, &trivial, params)
}

/// Right-hand side of the addition formula:
/// `sum_l C(n,l) q^(alpha x l) E~_l(chi) [x]_(q^alpha)^(n-l)`,
/// built from cached numbers.
pub fn addition_formula<R: CoefficientRing>(
    n: u32,
    x: &BigRational,
    chi: &DirichletCharacter,
    params: &EulerParams<R>,
    numbers: &[R::Elem],
) -> Result<R::Elem> {
    assert!(numbers.len() > n as usize, "need cached numbers up to index n");
    let ring = &params.ring;
    let power = params.power_for(x)?;
    let qa = params.q_alpha();
    let bracket = q_bracket_from_power(ring, &power, &qa)?;
    let mut acc = ring.zero();
    for l in 0..=n {
        let c = ring.from_rational(&binomial_rational(n as u64, l as u64))?;
        let term = ring.mul(
            &c,
            &ring.mul(
                &ring.pow(&power, l as i64)?,
                &ring.mul(&numbers[l as usize], &ring.pow(&bracket, (n - l) as i64)?),
            ),
        );
        acc = ring.add(&acc, &term);
    }
    Ok(acc)
}

/// Residual of the n-step recurrence
/// `w^n E~_m(n|chi) + (-1)^(n-1) E~_m(chi)
///  - [2]_q sum_{l=0}^{n-1} (-1)^(n-1-l) chi(l) w^l [l]_(q^alpha)^m`;
/// zero exactly when the recurrence holds.
pub fn recurrence_check<R: CoefficientRing>(
    m: u32,
    n: u32,
    chi: &DirichletCharacter,
    params: &EulerParams<R>,
) -> Result<R::Elem> {
    if n == 0 {
        return Err(Error::InvalidParameter("recurrence shift must be positive".into()));
    }
    let ring = &params.ring;
    let qa = params.q_alpha();
    let at_n = twisted_gen_euler_poly(m, &BigRational::from_integer(BigInt::from(n)), chi, params)?;
    let at_zero = twisted_gen_euler_poly_with_power(m, &ring.one(), chi, params)?;

    let wn = ring.pow(&params.w_elem, n as i64)?;
    let mut lhs = ring.mul(&wn, &at_n);
    if n % 2 == 1 {
        lhs = ring.add(&lhs, &at_zero);
    } else {
        lhs = ring.sub(&lhs, &at_zero);
    }

    let mut boundary = ring.zero();
    for l in 0..n {
        let chi_l = chi.value_in(ring, l as i64)?;
        if ring.is_zero(&chi_l) {
            continue;
        }
        let wl = ring.pow(&params.w_elem, l as i64)?;
        let bracket = q_bracket(ring, l as i64, &qa, false)?;
        let mut term = ring.mul(&chi_l, &ring.mul(&wl, &ring.pow(&bracket, m as i64)?));
        if (n - 1 - l) % 2 == 1 {
            term = ring.neg(&term);
        }
        boundary = ring.add(&boundary, &term);
    }
    Ok(ring.sub(&lhs, &ring.mul(&params.two_bracket(), &boundary)))
}

/// The distribution (multiplication) formula: the level-1 value as a
/// weighted sum of level-d values at shifted arguments,
///
/// ```text
/// ([d]_(q^alpha)^n / [d]_{-q})
///     sum_{a=0}^{d-1} (-1)^a w^a chi(a) E_(n, q^d)^((alpha, w^d))((x+a)/d)
/// ```
///
/// with d the modulus of chi.
pub fn distribution_formula<R: CoefficientRing>(
    n: u32,
    x: &BigRational,
    chi: &DirichletCharacter,
    params: &EulerParams<R>,
) -> Result<R::Elem> {
    let ring = &params.ring;
    let d = chi.modulus();
    if d % 2 == 0 {
        return Err(Error::InvalidParameter("distribution level must be odd".into()));
    }
    let inner = params.base_power(d)?;
    let qa = params.q_alpha();
    let power = params.power_for(x)?;

    let mut acc = ring.zero();
    let mut w_a = ring.one();
    let mut qa_a = ring.one();
    for a in 0..d {
        let chi_a = chi.value_in(ring, a as i64)?;
        if !ring.is_zero(&chi_a) {
            // (q^d)^(alpha (x+a)/d) = q^(alpha x) * q^(alpha a)
            let inner_power = ring.mul(&power, &qa_a);
            let value = euler_polynomial_with_power(n, &inner_power, &inner)?;
            let mut term = ring.mul(&chi_a, &ring.mul(&w_a, &value));
            if a % 2 == 1 {
                term = ring.neg(&term);
            }
            acc = ring.add(&acc, &term);
        }
        if a + 1 < d {
            w_a = ring.mul(&w_a, &params.w_elem);
            qa_a = ring.mul(&qa_a, &qa);
        }
    }

    let d_bracket = q_bracket(ring, d as i64, &qa, false)?;
    let d_neg = q_bracket(ring, d as i64, &ring.neg(&params.q), false)?;
    let pref = ring.div(&ring.pow(&d_bracket, n as i64)?, &d_neg)?;
    Ok(ring.mul(&pref, &acc))
}

/// Closed form versus fermionic integral, on a p-adic ring.
#[derive(Debug, Clone)]
pub struct WittReport<R: CoefficientRing> {
    pub closed_form: R::Elem,
    pub integral: R::Elem,
    pub level: u32,
    pub diff_valuation: i64,
}

/// Evaluates `E~_n(x|chi)` both by the closed form and as the fermionic
/// integral of `q^(-xi) chi(xi) w^xi [x+xi]^n` at level `budget.level_cap`,
/// and reports the valuation of the difference.
///
/// The integrand must be continuous on Z_p, so the character modulus has
/// to be 1 or a power of p.
pub fn witt_verify<R: PAdicRing>(
    n: u32,
    x: i64,
    chi: &DirichletCharacter,
    params: &EulerParams<R>,
    q_scalar: &PAdic,
    budget: &PrecisionBudget,
) -> Result<WittReport<R>> {
    let ring = &params.ring;
    let p = ring.prime();
    let mut d = chi.modulus();
    while d % p == 0 {
        d /= p;
    }
    if d != 1 {
        return Err(Error::InvalidParameter(format!(
            "the fermionic integrand needs a character modulus of the form p^k, got {}",
            chi.modulus()
        )));
    }

    let closed = twisted_gen_euler_poly(n, &BigRational::from_integer(BigInt::from(x)), chi, params)?;

    let field = crate::padic::PAdicField::new(p, ring.precision_cap());
    let qa_scalar = field.pow(q_scalar, params.alpha as i64)?;
    let qa = ring.pow(&params.q, params.alpha as i64)?;
    let level = budget.level_cap;

    // per-point integrand q^(-xi) chi(xi) w^xi [x + xi]^n
    let chi_table: Vec<R::Elem> = (0..chi.modulus())
        .map(|m| chi.value_in(ring, m as i64))
        .collect::<Result<_>>()?;
    let w_period = params.w.order();
    let w_table: Vec<R::Elem> = (0..w_period)
        .map(|e| ring.pow(&params.w_elem, e as i64))
        .collect::<Result<_>>()?;

    let integrand = |xi: u64| -> R::Elem {
        let qi = field.pow(q_scalar, -(xi as i64)).expect("q is a unit");
        let power = field.pow(&qa_scalar, x + xi as i64).expect("q is a unit");
        let bracket = q_bracket_from_power(ring, &ring.from_padic(&power), &qa)
            .expect("1 - q^alpha is invertible");
        let bn = ring.pow(&bracket, n as i64).expect("integer power");
        let chi_v = &chi_table[(xi % chi.modulus()) as usize];
        let w_v = &w_table[(xi % w_period) as usize];
        ring.mul(&ring.from_padic(&qi), &ring.mul(chi_v, &ring.mul(w_v, &bn)))
    };

    let integral = riemann_sum(ring, integrand, q_scalar, level)?;
    let diff_valuation = ring.diff_valuation_floor(&closed, &integral);
    Ok(WittReport { closed_form: closed, integral, level, diff_valuation })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rat;
    use crate::numeric::cyclotomic::CycloField;
    use crate::padic::PAdicField;
    use crate::RationalField;

    fn rational_params(qn: i64, qd: i64, alpha: u32) -> EulerParams<RationalField> {
        EulerParams::new(RationalField, alpha, rat(qn, qd), RootOfUnity::one()).unwrap()
    }

    #[test]
    fn zeroth_and_first_numbers() {
        // E_0 = (1+q)/2 at w = 1
        let p = rational_params(1, 2, 1);
        assert_eq!(euler_number(0, &p).unwrap(), rat(3, 4));
        // E_1 = -(1+q)/(2(1+q^alpha)); alpha = 1 collapses to -1/2 for every q
        assert_eq!(euler_number(1, &p).unwrap(), rat(-1, 2));
        for (qn, qd) in [(2i64, 3i64), (3, 5)] {
            assert_eq!(euler_number(1, &rational_params(qn, qd, 1)).unwrap(), rat(-1, 2));
        }
        let p2 = rational_params(2, 3, 2);
        // -(1+q)/(2(1+q^2)) at q = 2/3
        assert_eq!(euler_number(1, &p2).unwrap(), rat(-15, 26));
    }

    #[test]
    fn zeroth_value_with_twist() {
        // E_0 = [2]_q / (1 + w), x-independent
        let field = CycloField::new(3);
        let q = field.from_rational(&rat(1, 2)).unwrap();
        let params = EulerParams::new(field.clone(), 1, q, RootOfUnity::new(1, 3)).unwrap();
        let e0 = euler_number(0, &params).unwrap();
        let w = field.root_power(1);
        let expect = field
            .div(&field.from_rational(&rat(3, 2)).unwrap(), &field.add(&field.one(), &w))
            .unwrap();
        assert_eq!(e0, expect);
        for x in [rat(1, 1), rat(2, 1)] {
            assert_eq!(euler_polynomial(0, &x, &params).unwrap(), expect);
        }
    }

    #[test]
    fn polynomial_at_zero_is_the_number() {
        let p = rational_params(2, 3, 2);
        for n in 0..6 {
            assert_eq!(
                euler_polynomial(n, &rat(0, 1), &p).unwrap(),
                euler_number(n, &p).unwrap()
            );
        }
    }

    #[test]
    fn classical_limit_at_q_near_one() {
        // classical Euler polynomial values at 0 from 2/(e^t + 1):
        // 2 E_n(0) = -sum_{k<n} C(n,k) E_k(0), E_0(0) = 1
        let mut classical = vec![rat(1, 1)];
        for n in 1..=4u64 {
            let mut s = rat(0, 1);
            for k in 0..n {
                s += binomial_rational(n, k) * classical[k as usize].clone();
            }
            classical.push(-s / rat(2, 1));
        }
        assert_eq!(classical[1], rat(-1, 2));
        assert_eq!(classical[3], rat(1, 4));

        let eps = rat(1, 10_000);
        let q = rat(1, 1) - eps;
        let params = EulerParams::new(RationalField, 1, q, RootOfUnity::one()).unwrap();
        for n in 0..=4u32 {
            let value = euler_number(n, &params).unwrap();
            let diff = (value - classical[n as usize].clone()).abs();
            assert!(diff < rat(1, 100), "n = {n}: diff {diff}");
        }
        // n = 1, alpha = 1 is exactly -1/2 at every q
        let p = rational_params(9_999, 10_000, 1);
        assert_eq!(euler_number(1, &p).unwrap(), rat(-1, 2));
    }

    #[test]
    fn twisted_value_quadratic_mod_three() {
        // n = 0, w = 1, chi quadratic mod 3: [2]_q (chi(0) - chi(1) + chi(2))/2 = -(1+q)
        let chars = DirichletCharacter::enumerate(3).unwrap();
        let chi = &chars[1];
        let p = rational_params(1, 2, 1);
        let v = twisted_gen_euler_poly(0, &rat(0, 1), chi, &p).unwrap();
        assert_eq!(v, rat(-3, 2));
        let p2 = rational_params(2, 3, 1);
        assert_eq!(twisted_gen_euler_poly(0, &rat(0, 1), chi, &p2).unwrap(), rat(-5, 3));
    }

    #[test]
    fn trivial_character_collapses() {
        let chi1 = DirichletCharacter::trivial(1).unwrap();
        let p = rational_params(3, 5, 2);
        for n in 0..5 {
            for x in [rat(0, 1), rat(1, 1), rat(2, 1)] {
                assert_eq!(
                    twisted_gen_euler_poly(n, &x, &chi1, &p).unwrap(),
                    euler_polynomial(n, &x, &p).unwrap()
                );
            }
        }
    }

    #[test]
    fn addition_formula_is_exact() {
        let chars = DirichletCharacter::enumerate(3).unwrap();
        let field = CycloField::new(9);
        for chi in &chars {
            for w in [RootOfUnity::one(), RootOfUnity::new(1, 9)] {
                let q = field.from_rational(&rat(1, 2)).unwrap();
                let params = EulerParams::new(field.clone(), 2, q, w).unwrap();
                let numbers = twisted_numbers_upto(8, chi, &params).unwrap();
                for n in 0..=8u32 {
                    for x in [rat(0, 1), rat(1, 1), rat(2, 1)] {
                        let direct = twisted_gen_euler_poly(n, &x, chi, &params).unwrap();
                        let via_addition = addition_formula(n, &x, chi, &params, &numbers).unwrap();
                        assert_eq!(direct, via_addition, "n={n} x={x}");
                    }
                }
            }
        }
    }

    #[test]
    fn addition_formula_symmetric_ordering() {
        // the reversed ordering sum_k C(n,k) q^(alpha(n-k)x) E_(n-k) [x]^k
        // is the same sum read backwards
        let p = rational_params(2, 3, 1);
        let chi = DirichletCharacter::trivial(1).unwrap();
        let numbers = twisted_numbers_upto(6, &chi, &p).unwrap();
        let ring = RationalField;
        for n in 0..=6u32 {
            for x in [rat(1, 1), rat(3, 1)] {
                let power = p.power_for(&x).unwrap();
                let bracket = q_bracket_from_power(&ring, &power, &p.q_alpha()).unwrap();
                let mut reversed = rat(0, 1);
                for k in 0..=n {
                    reversed += binomial_rational(n as u64, k as u64)
                        * ring.pow(&power, (n - k) as i64).unwrap()
                        * numbers[(n - k) as usize].clone()
                        * ring.pow(&bracket, k as i64).unwrap();
                }
                assert_eq!(reversed, addition_formula(n, &x, &chi, &p, &numbers).unwrap());
            }
        }
    }

    #[test]
    fn recurrence_residual_is_zero() {
        // m = 0, n = 1, trivial character, w = 1: both endpoint values are
        // (1+q)/2 and the boundary term is [2]_q
        let p = rational_params(1, 2, 1);
        let chi = DirichletCharacter::trivial(1).unwrap();
        assert_eq!(recurrence_check(0, 1, &chi, &p).unwrap(), rat(0, 1));
        assert_eq!(recurrence_check(1, 2, &chi, &p).unwrap(), rat(0, 1));

        let chars = DirichletCharacter::enumerate(3).unwrap();
        let field = CycloField::new(9);
        let q = field.from_rational(&rat(2, 3)).unwrap();
        let params = EulerParams::new(field.clone(), 1, q, RootOfUnity::new(1, 9)).unwrap();
        for chi in &chars {
            for m in 0..4 {
                for n in 1..4 {
                    let r = recurrence_check(m, n, chi, &params).unwrap();
                    assert!(field.is_zero(&r), "m={m} n={n}");
                }
            }
        }
    }

    #[test]
    fn distribution_formula_is_exact() {
        let field = CycloField::new(9);
        let q = field.from_rational(&rat(1, 2)).unwrap();
        for w in [RootOfUnity::one(), RootOfUnity::new(1, 3)] {
            let params = EulerParams::new(field.clone(), 1, q.clone(), w).unwrap();
            for d in [1u64, 3, 9] {
                for chi in DirichletCharacter::enumerate(d).unwrap() {
                    for n in 0..4u32 {
                        let lhs = twisted_gen_euler_poly(n, &rat(1, 1), &chi, &params).unwrap();
                        let rhs = distribution_formula(n, &rat(1, 1), &chi, &params).unwrap();
                        assert_eq!(lhs, rhs, "d={d} n={n}");
                    }
                }
            }
        }
    }

    #[test]
    fn witt_formula_basic() {
        // p = 3, q = 4, alpha = 1, w = 1, trivial chi, n = 1, x = 0:
        // both sides are -1/2, difference valuation >= 6 at level 8
        let ring = PAdicField::new(3, 16);
        let q = ring.from_integer(4);
        let params = EulerParams::new(ring, 1, q.clone(), RootOfUnity::one()).unwrap();
        let chi = DirichletCharacter::trivial(1).unwrap();
        let budget = PrecisionBudget::new(6, 8);
        let report = witt_verify(1, 0, &chi, &params, &q, &budget).unwrap();
        assert!(report.diff_valuation >= 6, "valuation {}", report.diff_valuation);
        let minus_half = ring.from_rational(&rat(-1, 2)).unwrap();
        assert!(report.closed_form.agrees_mod(&minus_half, 10));

        // a character of modulus coprime to p is not integrable
        let chars = DirichletCharacter::enumerate(5).unwrap();
        assert!(witt_verify(1, 0, &chars[1], &params, &q, &budget).is_err());
    }

    #[test]
    fn pole_is_detected() {
        // q^(alpha k d) w^d + 1 = 0 at k = 0 when w = -1 (order-2 twist)
        let params = EulerParams::new(RationalField, 1, rat(1, 2), RootOfUnity::new(1, 2)).unwrap();
        match euler_number(0, &params) {
            Err(Error::Pole { k: 0 }) => {}
            other => panic!("expected a pole at k = 0, got {other:?}"),
        }
    }

    #[test]
    fn parameter_validation() {
        assert!(EulerParams::new(RationalField, 0, rat(1, 2), RootOfUnity::one()).is_err());
        assert!(EulerParams::new(RationalField, 1, rat(3, 2), RootOfUnity::one()).is_err());
        assert!(EulerParams::new(RationalField, 1, rat(1, 1), RootOfUnity::one()).is_err());
        // p-adic: q must be 1 mod p
        let f = PAdicField::new(5, 8);
        assert!(EulerParams::new(f, 1, f.from_integer(7), RootOfUnity::one()).is_err());
        assert!(EulerParams::new(f, 2, f.from_integer(6), RootOfUnity::one()).is_ok());
        // nontrivial twist on the plain p-adic field is rejected
        assert!(EulerParams::new(f, 1, f.from_integer(6), RootOfUnity::new(1, 5)).is_err());
    }
}
