//! Exact arithmetic foundations: arbitrary-precision rationals, complex
//! floats, q-brackets and generalized binomial coefficients.
//!
//! The q-bracket `[x]_q = (1 - q^x)/(1 - q)` is the q-extension of the
//! integer `x`; it tends to `x` as `q -> 1`. Fractional powers of `q` are
//! never computed implicitly: callers that hold `q^x` exactly go through
//! [`q_bracket_from_power`], which keeps one code path for all rings.

pub mod cyclotomic;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::ring::{check_series_q, CoefficientRing, RootOfUnity};

/// Shorthand for a small rational.
pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Exact `n`-th root of a rational, when one exists.
///
/// Even roots of negative numbers and roots of zero with `n = 0` are
/// rejected; otherwise the root is checked by re-powering.
pub fn rational_nth_root(r: &BigRational, n: u32) -> Option<BigRational> {
    assert!(n > 0);
    if n == 1 {
        return Some(r.clone());
    }
    if r.is_zero() {
        return Some(BigRational::zero());
    }
    let negative = r.is_negative();
    if negative && n % 2 == 0 {
        return None;
    }
    let mag = r.abs();
    let num = mag.numer().to_biguint()?;
    let den = mag.denom().to_biguint()?;
    let num_root = num.nth_root(n);
    let den_root = den.nth_root(n);
    if num_root.pow(n) != num || den_root.pow(n) != den {
        return None;
    }
    let mut root = BigRational::new(num_root.into(), den_root.into());
    if negative {
        root = -root;
    }
    Some(root)
}

/// Exact rational power `base^(u/v)`, when representable.
pub fn rational_pow(base: &BigRational, e: &BigRational) -> Result<BigRational> {
    let u = e.numer();
    let v = e.denom().to_u32().ok_or_else(|| {
        Error::InexactPower(format!("exponent denominator {} too large", e.denom()))
    })?;
    if base.is_zero() {
        if e.is_positive() {
            return Ok(BigRational::zero());
        }
        return Err(Error::DivisionByZero("0 raised to a non-positive power".into()));
    }
    let iu = u
        .to_i64()
        .ok_or_else(|| Error::InexactPower(format!("exponent numerator {u} too large")))?;
    let powered = if iu >= 0 {
        num_traits::pow::pow(base.clone(), iu as usize)
    } else {
        num_traits::pow::pow(base.recip(), (-iu) as usize)
    };
    rational_nth_root(&powered, v)
        .ok_or_else(|| Error::InexactPower(format!("{base}^{e} is not rational")))
}

/// The q-bracket `[x]_q = (1 - q^x)/(1 - q)`.
///
/// With `limit_at_one` set, `q = 1` evaluates by the limit rule `[x]_1 = x`;
/// otherwise `q = 1` is a division-by-zero error. Negative `x` requires an
/// invertible `q`.
pub fn q_bracket<R: CoefficientRing>(
    ring: &R,
    x: i64,
    q: &R::Elem,
    limit_at_one: bool,
) -> Result<R::Elem> {
    if ring.is_one(q) {
        if limit_at_one {
            return Ok(ring.from_i64(x));
        }
        return Err(Error::DivisionByZero("q-bracket at q = 1 without the limit rule".into()));
    }
    let qx = ring.pow(q, x)?;
    q_bracket_from_power(ring, &qx, q)
}

/// The q-bracket with the power `q^x` supplied by the caller:
/// `(1 - qx)/(1 - q)`. This is how fractional arguments such as
/// `[a/F]` to base `q^F` are evaluated exactly.
pub fn q_bracket_from_power<R: CoefficientRing>(
    ring: &R,
    qx: &R::Elem,
    q: &R::Elem,
) -> Result<R::Elem> {
    let denom = ring.sub(&ring.one(), q);
    if ring.is_zero(&denom) {
        return Err(Error::DivisionByZero("q-bracket denominator 1 - q vanishes".into()));
    }
    ring.div(&ring.sub(&ring.one(), qx), &denom)
}

/// Generalized binomial coefficient `C(s, l) = s(s-1)...(s-l+1)/l!`
/// for a ring element `s` and a non-negative integer `l`.
pub fn gen_binomial<R: CoefficientRing>(ring: &R, s: &R::Elem, l: u64) -> Result<R::Elem> {
    let mut acc = ring.one();
    let mut factor = s.clone();
    let mut factorial = BigInt::one();
    for j in 0..l {
        acc = ring.mul(&acc, &factor);
        factor = ring.sub(&factor, &ring.one());
        factorial *= BigInt::from(j + 1);
    }
    let fact = ring.from_rational(&BigRational::from_integer(factorial))?;
    ring.div(&acc, &fact)
}

/// Ordinary binomial coefficient as an exact rational.
pub fn binomial_rational(n: u64, k: u64) -> BigRational {
    if k > n {
        return BigRational::zero();
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for j in 0..k {
        num *= BigInt::from(n - j);
        den *= BigInt::from(j + 1);
    }
    BigRational::new(num, den)
}

/// The field of arbitrary-precision rationals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RationalField;

impl CoefficientRing for RationalField {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn invert(&self, a: &BigRational) -> Result<BigRational> {
        if a.is_zero() {
            return Err(Error::DivisionByZero("inverse of 0 in Q".into()));
        }
        Ok(a.recip())
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        Zero::is_zero(a)
    }
    fn from_rational(&self, r: &BigRational) -> Result<BigRational> {
        Ok(r.clone())
    }
    fn embed_root_of_unity(&self, r: &RootOfUnity) -> Result<BigRational> {
        match r.order() {
            1 => Ok(BigRational::one()),
            2 => Ok(-BigRational::one()),
            n => Err(Error::UnsupportedEmbedding { order: n, ring: "Q".into() }),
        }
    }
    fn pow_rational(&self, a: &BigRational, e: &BigRational) -> Result<BigRational> {
        rational_pow(a, e)
    }
    fn render(&self, a: &BigRational) -> String {
        a.to_string()
    }
    fn validate_family_q(&self, q: &BigRational) -> Result<()> {
        check_series_q(q)
    }
    fn validate_twist(&self, w: &RootOfUnity) -> Result<()> {
        if w.order() <= 2 {
            Ok(())
        } else {
            Err(Error::UnsupportedEmbedding { order: w.order(), ring: "Q".into() })
        }
    }
}

/// Double-precision complex numbers, used for the analytic side.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ComplexField;

impl ComplexField {
    pub fn embed_rational(&self, r: &BigRational) -> Complex64 {
        Complex64::new(rational_to_f64(r), 0.0)
    }
}

/// Lossless-enough conversion of a big rational to `f64`.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // fall back on a quotient of truncated parts for huge operands
        let n = r.numer().to_f64().unwrap_or(f64::MAX);
        let d = r.denom().to_f64().unwrap_or(f64::MAX);
        n / d
    })
}

impl CoefficientRing for ComplexField {
    type Elem = Complex64;

    fn zero(&self) -> Complex64 {
        Complex64::new(0.0, 0.0)
    }
    fn one(&self) -> Complex64 {
        Complex64::new(1.0, 0.0)
    }
    fn add(&self, a: &Complex64, b: &Complex64) -> Complex64 {
        a + b
    }
    fn sub(&self, a: &Complex64, b: &Complex64) -> Complex64 {
        a - b
    }
    fn mul(&self, a: &Complex64, b: &Complex64) -> Complex64 {
        a * b
    }
    fn neg(&self, a: &Complex64) -> Complex64 {
        -a
    }
    fn invert(&self, a: &Complex64) -> Result<Complex64> {
        if a.norm() == 0.0 {
            return Err(Error::DivisionByZero("inverse of 0 in C".into()));
        }
        Ok(a.inv())
    }
    fn is_zero(&self, a: &Complex64) -> bool {
        a.re == 0.0 && a.im == 0.0
    }
    fn from_rational(&self, r: &BigRational) -> Result<Complex64> {
        Ok(self.embed_rational(r))
    }
    fn embed_root_of_unity(&self, r: &RootOfUnity) -> Result<Complex64> {
        let theta = 2.0 * std::f64::consts::PI * (r.numerator() as f64) / (r.order() as f64);
        Ok(Complex64::new(theta.cos(), theta.sin()))
    }
    fn pow_rational(&self, a: &Complex64, e: &BigRational) -> Result<Complex64> {
        let ef = rational_to_f64(e);
        if a.im == 0.0 && a.re > 0.0 {
            return Ok(Complex64::new(a.re.powf(ef), 0.0));
        }
        Ok(a.powf(ef))
    }
    fn render(&self, a: &Complex64) -> String {
        format!("{:+.12e}{:+.12e}i", a.re, a.im)
    }
    fn validate_family_q(&self, q: &Complex64) -> Result<()> {
        if q.im == 0.0 && q.re > 0.0 && q.re < 1.0 {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!(
                "complex family evaluators require real q in (0,1), got {q}"
            )))
        }
    }
    fn validate_twist(&self, _w: &RootOfUnity) -> Result<()> {
        Ok(())
    }
}

/// p-adic valuation of a big integer: largest `e` with `p^e | n`.
pub fn int_valuation(n: &BigInt, p: u64) -> Option<u64> {
    if n.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut v = 0u64;
    let mut m = n.abs();
    loop {
        let (q, r) = m.div_rem(&p);
        if !r.is_zero() {
            return Some(v);
        }
        v += 1;
        m = q;
    }
}

/// Euler's totient by trial-division factoring (arguments stay small here).
pub fn euler_phi(n: u64) -> u64 {
    let mut n = n;
    let mut phi = 1u64;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut pe = 1u64;
            n /= p;
            while n % p == 0 {
                pe *= p;
                n /= p;
            }
            phi *= pe * (p - 1);
        }
        p += 1;
    }
    if n > 1 {
        phi *= n - 1;
    }
    phi
}

/// Prime factorization with multiplicities, ascending.
pub fn factorize(n: u64) -> Vec<(u64, u32)> {
    let mut n = n;
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0u32;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Complex embedding used when comparing exact results against the
/// floating-point evaluators.
pub fn root_to_complex(r: &RootOfUnity) -> Complex64 {
    ComplexField.embed_root_of_unity(r).expect("complex embeds every root")
}

/// `base^exp mod m` on machine words, via 128-bit intermediates.
pub fn mod_pow_u64(base: u64, mut exp: u64, m: u64) -> u64 {
    assert!(m > 0);
    let mut base = (base % m) as u128;
    let m128 = m as u128;
    let mut acc: u128 = 1 % m128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m128;
        }
        base = base * base % m128;
        exp >>= 1;
    }
    acc as u64
}

/// Smallest primitive root modulo an odd prime power `p^e` (also valid for
/// `e = 1`). For odd p, a primitive root mod `p^2` is primitive mod every
/// `p^e`.
pub fn smallest_primitive_root(p: u64, e: u32) -> u64 {
    assert!(p >= 3, "primitive roots are only needed for odd prime powers");
    let phi_p = p - 1;
    let prime_factors: Vec<u64> = factorize(phi_p).into_iter().map(|(q, _)| q).collect();
    let mut g = 2u64;
    loop {
        let primitive_mod_p = prime_factors.iter().all(|q| mod_pow_u64(g, phi_p / q, p) != 1);
        if primitive_mod_p {
            if e == 1 || mod_pow_u64(g, phi_p, p * p) != 1 {
                return g;
            }
            // g lifts badly; g + p is then primitive mod p^2
            return g + p;
        }
        g += 1;
    }
}

/// Discrete logarithm of `a` to base `g` in the unit group mod `m`,
/// by direct enumeration (unit groups here stay small).
pub fn discrete_log(g: u64, a: u64, m: u64, group_order: u64) -> Option<u64> {
    let a = a % m;
    let mut acc = 1u64 % m;
    for t in 0..group_order {
        if acc == a {
            return Some(t);
        }
        acc = ((acc as u128) * (g as u128) % (m as u128)) as u64;
    }
    None
}
