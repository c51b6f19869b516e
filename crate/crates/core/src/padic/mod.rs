//! Capped-precision p-adic field arithmetic.
//!
//! An element is stored as `unit * p^v` with the unit known modulo
//! `p^(abs - v)`, i.e. the element is known modulo `p^abs`. Precision
//! propagates conservatively: additions keep the minimum absolute
//! precision, multiplications the minimum relative precision, inversion
//! preserves relative precision. Exact zero (valuation infinity) is
//! representable so algebraic identities stay exact where possible.
//!
//! The prime is always odd; `p = 2` is out of scope.

pub mod cyclo;

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::numeric::{gen_binomial, int_valuation, mod_pow_u64, smallest_primitive_root};
use crate::ring::{CoefficientRing, RootOfUnity};

/// Precision targets for adaptive p-adic computations: the requested
/// absolute precision `target` and the Riemann level cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PrecisionBudget {
    pub target: i64,
    pub level_cap: u32,
}

impl PrecisionBudget {
    pub fn new(target: i64, level_cap: u32) -> Self {
        assert!(target >= 1 && level_cap >= 1);
        PrecisionBudget { target, level_cap }
    }

    /// Desk-scale default level caps: p^cap stays near half a million.
    pub fn default_level_cap(p: u64) -> u32 {
        match p {
            3 => 12,
            5 => 8,
            _ => {
                let mut cap = 1u32;
                let mut pow = p;
                while pow.saturating_mul(p) <= 500_000 {
                    pow *= p;
                    cap += 1;
                }
                cap
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum State {
    /// Valuation +infinity.
    ExactZero,
    /// Known to be divisible by p^abs, nothing more.
    ZeroMod { abs: i64 },
    /// unit * p^val with unit in [1, p^(abs-val)) coprime to p.
    Unit { val: i64, unit: BigUint, abs: i64 },
}

/// A capped-precision element of Q_p.
#[derive(Debug, Clone)]
pub struct PAdic {
    p: u64,
    state: State,
}

fn p_pow(p: u64, k: i64) -> BigUint {
    assert!(k >= 0);
    BigUint::from(p).pow(k as u32)
}

impl PAdic {
    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn exact_zero(p: u64) -> Self {
        PAdic { p, state: State::ExactZero }
    }

    pub fn zero_mod(p: u64, abs: i64) -> Self {
        PAdic { p, state: State::ZeroMod { abs } }
    }

    pub fn is_exact_zero(&self) -> bool {
        matches!(self.state, State::ExactZero)
    }

    /// True when no nonzero digit is known.
    pub fn is_zero_at_precision(&self) -> bool {
        !matches!(self.state, State::Unit { .. })
    }

    /// The valuation when a nonzero digit is known.
    pub fn known_valuation(&self) -> Option<i64> {
        match &self.state {
            State::Unit { val, .. } => Some(*val),
            _ => None,
        }
    }

    /// A certified lower bound on the valuation (`i64::MAX` for exact zero).
    pub fn valuation_floor(&self) -> i64 {
        match &self.state {
            State::ExactZero => i64::MAX,
            State::ZeroMod { abs } => *abs,
            State::Unit { val, .. } => *val,
        }
    }

    /// Absolute precision: the element is known modulo p^(this).
    pub fn abs_precision(&self) -> i64 {
        match &self.state {
            State::ExactZero => i64::MAX,
            State::ZeroMod { abs } => *abs,
            State::Unit { abs, .. } => *abs,
        }
    }

    pub fn unit_part(&self) -> Option<&BigUint> {
        match &self.state {
            State::Unit { unit, .. } => Some(unit),
            _ => None,
        }
    }

    fn normalized(p: u64, base_val: i64, residue: BigUint, abs: i64) -> Self {
        if abs <= base_val {
            return PAdic { p, state: State::ZeroMod { abs } };
        }
        let modulus = p_pow(p, abs - base_val);
        let residue = residue % &modulus;
        if residue.is_zero() {
            return PAdic { p, state: State::ZeroMod { abs } };
        }
        let extra = int_valuation(&BigInt::from(residue.clone()), p).unwrap() as i64;
        let val = base_val + extra;
        if val >= abs {
            return PAdic { p, state: State::ZeroMod { abs } };
        }
        let unit = (residue / p_pow(p, extra)) % p_pow(p, abs - val);
        PAdic { p, state: State::Unit { val, unit, abs } }
    }

    /// The element reduced to a (possibly) lower absolute precision.
    pub fn truncated(&self, abs: i64) -> Self {
        match &self.state {
            State::ExactZero => self.clone(),
            State::ZeroMod { abs: a } => PAdic::zero_mod(self.p, (*a).min(abs)),
            State::Unit { val, unit, abs: a } => {
                PAdic::normalized(self.p, *val, unit.clone(), (*a).min(abs))
            }
        }
    }

    /// True when `self - other` is divisible by `p^k` as far as both are known.
    pub fn agrees_mod(&self, other: &PAdic, k: i64) -> bool {
        let d = PAdicField::new(self.p, 1).sub(self, other);
        d.valuation_floor() >= k
    }

    /// Base-p digits of the unit part, least significant first.
    fn digits(&self) -> Vec<(i64, u64)> {
        match &self.state {
            State::Unit { val, unit, abs } => {
                let mut out = Vec::new();
                let mut u = unit.clone();
                let p = BigUint::from(self.p);
                let mut e = *val;
                while !u.is_zero() && e < *abs {
                    let (q, r) = u.div_rem(&p);
                    let d = r.to_u64().unwrap();
                    if d != 0 {
                        out.push((e, d));
                    }
                    u = q;
                    e += 1;
                }
                out
            }
            _ => Vec::new(),
        }
    }
}

impl PartialEq for PAdic {
    /// Agreement on all jointly known digits. Like any capped-precision
    /// equality this is not transitive; tests that need a margin use
    /// [`PAdic::agrees_mod`].
    fn eq(&self, other: &Self) -> bool {
        let joint = self.abs_precision().min(other.abs_precision());
        if joint == i64::MAX {
            return match (&self.state, &other.state) {
                (State::ExactZero, State::ExactZero) => true,
                _ => false,
            };
        }
        self.agrees_mod(other, joint)
    }
}

impl fmt::Display for PAdic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.state {
            State::ExactZero => write!(f, "0 (exact)"),
            State::ZeroMod { abs } => write!(f, "O({}^{})", self.p, abs),
            State::Unit { abs, .. } => {
                let digits = self.digits();
                let mut first = true;
                for (e, d) in digits {
                    if !first {
                        write!(f, " + ")?;
                    }
                    first = false;
                    match e {
                        0 => write!(f, "{d}")?,
                        1 => write!(f, "{d}*{}", self.p)?,
                        _ => write!(f, "{d}*{}^{}", self.p, e)?,
                    }
                }
                write!(f, " (mod {}^{})", self.p, abs)
            }
        }
    }
}

impl Serialize for PAdic {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("PAdic", 4)?;
        s.serialize_field("p", &self.p)?;
        match &self.state {
            State::ExactZero => {
                s.serialize_field("v", &Option::<i64>::None)?;
                s.serialize_field("unit", "0")?;
                s.serialize_field("prec", &Option::<i64>::None)?;
            }
            State::ZeroMod { abs } => {
                s.serialize_field("v", &Option::<i64>::None)?;
                s.serialize_field("unit", "0")?;
                s.serialize_field("prec", &Some(*abs))?;
            }
            State::Unit { val, unit, abs } => {
                s.serialize_field("v", &Some(*val))?;
                s.serialize_field("unit", &unit.to_string())?;
                s.serialize_field("prec", &Some(*abs))?;
            }
        }
        s.end()
    }
}

/// The field Q_p at a fixed working precision (relative digits per element).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PAdicField {
    p: u64,
    cap: i64,
}

impl PAdicField {
    pub fn new(p: u64, cap: i64) -> Self {
        assert!(p >= 3 && p % 2 == 1, "the prime must be odd");
        assert!(cap >= 1);
        PAdicField { p, cap }
    }

    pub fn cap(&self) -> i64 {
        self.cap
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn from_integer(&self, n: i64) -> PAdic {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> PAdic {
        if n.is_zero() {
            return PAdic::exact_zero(self.p);
        }
        let v = int_valuation(n, self.p).unwrap() as i64;
        let unit_int = n.abs() / BigInt::from(p_pow(self.p, v));
        let modulus = p_pow(self.p, self.cap);
        let mut unit = unit_int.to_biguint().unwrap() % &modulus;
        if n.is_negative() {
            unit = (&modulus - unit) % &modulus;
        }
        PAdic::normalized(self.p, v, unit, v + self.cap)
    }

    fn mod_inverse(&self, a: &BigUint, rel: i64) -> Result<BigUint> {
        let modulus = BigInt::from(p_pow(self.p, rel));
        let a = BigInt::from(a.clone());
        let ext = a.extended_gcd(&modulus);
        if !ext.gcd.is_one() {
            return Err(Error::DivisionByZero(format!(
                "no inverse modulo {}^{rel}",
                self.p
            )));
        }
        Ok(ext.x.mod_floor(&modulus).to_biguint().unwrap())
    }

    /// The v-th root of a one-unit by its binomial series, certified by
    /// term-valuation bounds. Requires `val(t - 1) >= val_p(v) + 1`.
    fn one_unit_root(&self, t: &PAdic, v: u64) -> Result<PAdic> {
        let u = self.sub(t, &self.one());
        let vu = u.valuation_floor();
        let j = int_valuation(&BigInt::from(v), self.p).unwrap_or(0) as i64;
        if vu < j + 1 {
            return Err(Error::InexactPower(format!(
                "{v}-th root needs valuation(t - 1) >= {}, got {vu}",
                j + 1
            )));
        }
        let s = self.div(&self.one(), &self.from_integer(v as i64))?;
        let mut acc = self.one();
        let mut u_pow = self.one();
        let mut k: u64 = 1;
        loop {
            u_pow = self.mul(&u_pow, &u);
            let coeff = gen_binomial(self, &s, k)?;
            acc = self.add(&acc, &self.mul(&coeff, &u_pow));
            // certified: val(term_k) >= k (vu - j) - legendre(k)
            let legendre = legendre_factorial_valuation(k, self.p);
            let bound = (k as i64) * (vu - j) - legendre;
            if bound >= self.cap + 1 {
                break;
            }
            k += 1;
            if k > 4 * (self.cap as u64) + 16 {
                return Err(Error::NoConvergence {
                    level_cap: k as u32,
                    reason: "root series failed its certified bound".into(),
                });
            }
        }
        Ok(acc)
    }
}

/// Valuation of k! at p (Legendre's formula).
fn legendre_factorial_valuation(k: u64, p: u64) -> i64 {
    let mut v = 0i64;
    let mut q = p;
    while q <= k {
        v += (k / q) as i64;
        match q.checked_mul(p) {
            Some(next) => q = next,
            None => break,
        }
    }
    v
}

impl CoefficientRing for PAdicField {
    type Elem = PAdic;

    fn zero(&self) -> PAdic {
        PAdic::exact_zero(self.p)
    }

    fn one(&self) -> PAdic {
        self.from_integer(1)
    }

    fn add(&self, a: &PAdic, b: &PAdic) -> PAdic {
        debug_assert_eq!(a.p, b.p);
        match (&a.state, &b.state) {
            (State::ExactZero, _) => b.clone(),
            (_, State::ExactZero) => a.clone(),
            (State::ZeroMod { abs }, State::ZeroMod { abs: abs2 }) => {
                PAdic::zero_mod(a.p, (*abs).min(*abs2))
            }
            (State::ZeroMod { abs }, State::Unit { val, unit, abs: abs2 })
            | (State::Unit { val, unit, abs: abs2 }, State::ZeroMod { abs }) => {
                PAdic::normalized(a.p, *val, unit.clone(), (*abs).min(*abs2))
            }
            (
                State::Unit { val: va, unit: ua, abs: aa },
                State::Unit { val: vb, unit: ub, abs: ab },
            ) => {
                let abs = (*aa).min(*ab);
                let m = (*va).min(*vb);
                if abs <= m {
                    return PAdic::zero_mod(a.p, abs);
                }
                let modulus = p_pow(a.p, abs - m);
                let ra = ua * p_pow(a.p, va - m) % &modulus;
                let rb = ub * p_pow(a.p, vb - m) % &modulus;
                PAdic::normalized(a.p, m, (ra + rb) % &modulus, abs)
            }
        }
    }

    fn sub(&self, a: &PAdic, b: &PAdic) -> PAdic {
        self.add(a, &self.neg(b))
    }

    fn mul(&self, a: &PAdic, b: &PAdic) -> PAdic {
        debug_assert_eq!(a.p, b.p);
        match (&a.state, &b.state) {
            (State::ExactZero, _) | (_, State::ExactZero) => PAdic::exact_zero(a.p),
            (State::ZeroMod { abs }, State::ZeroMod { abs: abs2 }) => {
                PAdic::zero_mod(a.p, abs.saturating_add(*abs2))
            }
            (State::ZeroMod { abs }, State::Unit { val, .. })
            | (State::Unit { val, .. }, State::ZeroMod { abs }) => {
                PAdic::zero_mod(a.p, abs.saturating_add(*val))
            }
            (
                State::Unit { val: va, unit: ua, abs: aa },
                State::Unit { val: vb, unit: ub, abs: ab },
            ) => {
                let rel = (aa - va).min(ab - vb).min(self.cap);
                let val = va + vb;
                let unit = ua * ub % p_pow(a.p, rel);
                PAdic { p: a.p, state: State::Unit { val, unit, abs: val + rel } }
            }
        }
    }

    fn neg(&self, a: &PAdic) -> PAdic {
        match &a.state {
            State::Unit { val, unit, abs } => {
                let m = p_pow(a.p, abs - val);
                PAdic { p: a.p, state: State::Unit { val: *val, unit: (&m - unit) % &m, abs: *abs } }
            }
            _ => a.clone(),
        }
    }

    fn invert(&self, a: &PAdic) -> Result<PAdic> {
        match &a.state {
            State::ExactZero => Err(Error::DivisionByZero("inverse of exact zero in Q_p".into())),
            State::ZeroMod { abs } => Err(Error::DivisionByZero(format!(
                "inverse of an element only known to be O({}^{abs})",
                a.p
            ))),
            State::Unit { val, unit, abs } => {
                let rel = abs - val;
                let inv = self.mod_inverse(unit, rel)?;
                Ok(PAdic { p: a.p, state: State::Unit { val: -val, unit: inv, abs: -val + rel } })
            }
        }
    }

    fn is_zero(&self, a: &PAdic) -> bool {
        a.is_zero_at_precision()
    }

    fn from_rational(&self, r: &BigRational) -> Result<PAdic> {
        if r.is_zero() {
            return Ok(PAdic::exact_zero(self.p));
        }
        let num = self.from_bigint(r.numer());
        let den = self.from_bigint(r.denom());
        self.div(&num, &den)
    }

    fn embed_root_of_unity(&self, r: &RootOfUnity) -> Result<PAdic> {
        let n = r.order();
        if n == 1 {
            return Ok(self.one());
        }
        if (self.p - 1) % n != 0 {
            return Err(Error::UnsupportedEmbedding {
                order: n,
                ring: format!("Q_{}", self.p),
            });
        }
        // canonical choice: zeta_(p-1) maps to the Teichmueller lift of the
        // smallest primitive root mod p
        let g = smallest_primitive_root(self.p, 1);
        let e = (r.numerator() % (self.p - 1)) * ((self.p - 1) / n);
        let a = mod_pow_u64(g, e, self.p);
        teichmuller(a as i64, self)
    }

    fn pow_rational(&self, a: &PAdic, e: &BigRational) -> Result<PAdic> {
        let u = e
            .numer()
            .to_i64()
            .ok_or_else(|| Error::InexactPower("exponent numerator too large".into()))?;
        let v = e
            .denom()
            .to_u64()
            .ok_or_else(|| Error::InexactPower("exponent denominator too large".into()))?;
        let powered = self.pow(a, u)?;
        if v == 1 {
            return Ok(powered);
        }
        self.one_unit_root(&powered, v)
    }

    fn render(&self, a: &PAdic) -> String {
        a.to_string()
    }

    fn validate_family_q(&self, q: &PAdic) -> Result<()> {
        if self.is_one(q) {
            return Err(Error::InvalidParameter("family evaluators require q != 1".into()));
        }
        let diff = self.sub(q, &self.one());
        if diff.valuation_floor() < 1 {
            return Err(Error::InvalidParameter(format!(
                "p-adic family evaluators require q = 1 (mod {}), got {q}",
                self.p
            )));
        }
        Ok(())
    }

    fn validate_twist(&self, w: &RootOfUnity) -> Result<()> {
        if w.is_one() {
            Ok(())
        } else {
            Err(Error::UnsupportedEmbedding {
                order: w.order(),
                ring: format!("Q_{} (nontrivial twists need the cyclotomic ring)", self.p),
            })
        }
    }
}

/// Rings whose elements have p-adic size: Q_p itself and its p^r-th
/// cyclotomic extension. The fermionic integral and the interpolating
/// l-function are generic over this.
pub trait PAdicRing: CoefficientRing {
    fn prime(&self) -> u64;
    fn precision_cap(&self) -> i64;
    fn from_padic(&self, x: &PAdic) -> Self::Elem;
    /// Certified lower bound on the valuation of `a - b`
    /// (`i64::MAX` when they are exactly equal).
    fn diff_valuation_floor(&self, a: &Self::Elem, b: &Self::Elem) -> i64;
    /// The scalar this element equals, if it is a constant.
    fn scalar_part(&self, a: &Self::Elem) -> Option<PAdic>;
}

impl PAdicRing for PAdicField {
    fn prime(&self) -> u64 {
        self.p
    }
    fn precision_cap(&self) -> i64 {
        self.cap
    }
    fn from_padic(&self, x: &PAdic) -> PAdic {
        x.clone()
    }
    fn diff_valuation_floor(&self, a: &PAdic, b: &PAdic) -> i64 {
        self.sub(a, b).valuation_floor()
    }
    fn scalar_part(&self, a: &PAdic) -> Option<PAdic> {
        Some(a.clone())
    }
}

/// The Teichmueller lift: the unique (p-1)-st root of unity in Z_p
/// congruent to `a` mod p, computed as `a^(p^(cap-1)) mod p^cap`.
pub fn teichmuller(a: i64, field: &PAdicField) -> Result<PAdic> {
    let p = field.p;
    if a.rem_euclid(p as i64) == 0 {
        return Err(Error::InvalidParameter(format!(
            "Teichmueller lift needs gcd(a, {p}) = 1, got a = {a}"
        )));
    }
    let modulus = p_pow(p, field.cap);
    let base = BigInt::from(a).mod_floor(&BigInt::from(modulus.clone())).to_biguint().unwrap();
    let exponent = p_pow(p, field.cap - 1);
    let unit = base.modpow(&exponent, &modulus);
    Ok(PAdic::normalized(p, 0, unit, field.cap))
}

/// `q^(-x)` for a p-adic unit `q` and a non-negative integer sample point.
pub fn qpow_neg(field: &PAdicField, q: &PAdic, x: u64) -> Result<PAdic> {
    field.pow(q, -(x as i64))
}
