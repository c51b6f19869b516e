//! The coefficient-ring contract.
//!
//! Every family evaluator in this crate is generic over [`CoefficientRing`]:
//! exact rationals, exact cyclotomic fields, complex floats, the p-adic
//! field, and the p-adic cyclotomic ring all implement it. Roots of unity
//! are passed around abstractly as [`RootOfUnity`] and embedded into a
//! concrete ring on demand, so a single code path serves the exact, complex
//! and p-adic sides.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// An abstract root of unity `zeta_den^num = e^(2*pi*i*num/den)`,
/// kept in lowest terms with `0 <= num < den`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct RootOfUnity {
    num: u64,
    den: u64,
}

impl RootOfUnity {
    /// `zeta_den^num`, reduced to lowest terms.
    pub fn new(num: i64, den: u64) -> Self {
        assert!(den > 0, "root of unity needs a positive order");
        let d = den as i64;
        let mut k = num.rem_euclid(d) as u64;
        let mut n = den;
        let g = k.gcd(&n);
        if g > 1 {
            k /= g;
            n /= g;
        }
        if k == 0 {
            n = 1;
        }
        RootOfUnity { num: k, den: n }
    }

    pub fn one() -> Self {
        RootOfUnity { num: 0, den: 1 }
    }

    pub fn is_one(&self) -> bool {
        self.den == 1
    }

    /// Multiplicative order (the reduced denominator).
    pub fn order(&self) -> u64 {
        self.den
    }

    /// Numerator of the reduced exponent `num/den`.
    pub fn numerator(&self) -> u64 {
        self.num
    }

    pub fn mul(&self, other: &RootOfUnity) -> RootOfUnity {
        // num1/den1 + num2/den2 mod 1
        let den = (self.den / self.den.gcd(&other.den)) * other.den;
        let num = (self.num * (den / self.den) + other.num * (den / other.den)) % den;
        RootOfUnity::new(num as i64, den)
    }

    pub fn pow(&self, e: i64) -> RootOfUnity {
        let d = self.den as i64;
        let k = ((self.num as i64) % d * (e % d)).rem_euclid(d);
        RootOfUnity::new(k, self.den)
    }

    pub fn inv(&self) -> RootOfUnity {
        self.pow(-1)
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            write!(f, "1")
        } else if self.num == 1 {
            write!(f, "zeta_{}", self.den)
        } else {
            write!(f, "zeta_{}^{}", self.den, self.num)
        }
    }
}

/// Ring operations shared by all coefficient domains.
///
/// Implementations are value types describing the domain (a prime and a
/// precision cap, a cyclotomic order, ...); elements are plain data. All
/// operations are pure, so rings and elements are safe to share across
/// threads.
pub trait CoefficientRing: Clone + fmt::Debug {
    type Elem: Clone + fmt::Debug + PartialEq;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn invert(&self, a: &Self::Elem) -> Result<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    /// Exact embedding of a rational number.
    fn from_rational(&self, r: &BigRational) -> Result<Self::Elem>;

    /// Canonical embedding of an abstract root of unity, or an
    /// `UnsupportedEmbedding` error when the ring has no such root.
    fn embed_root_of_unity(&self, r: &RootOfUnity) -> Result<Self::Elem>;

    /// Exact fractional power where the ring supports one;
    /// `InexactPower` otherwise. `pow_rational(a, n/1)` equals `pow(a, n)`.
    fn pow_rational(&self, a: &Self::Elem, e: &BigRational) -> Result<Self::Elem>;

    /// Short human-readable rendering used in tables and reports.
    fn render(&self, a: &Self::Elem) -> String;

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_rational(&BigRational::from_integer(BigInt::from(n)))
            .expect("integers embed into every coefficient ring")
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        self.is_zero(&self.sub(a, &self.one()))
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.mul(a, &self.invert(b)?))
    }

    /// Integer power by square-and-multiply; negative exponents invert.
    fn pow(&self, a: &Self::Elem, e: i64) -> Result<Self::Elem> {
        let base = if e < 0 { self.invert(a)? } else { a.clone() };
        let mut exp = e.unsigned_abs();
        let mut acc = self.one();
        let mut sq = base;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &sq);
            }
            exp >>= 1;
            if exp > 0 {
                sq = self.mul(&sq, &sq);
            }
        }
        Ok(acc)
    }

    /// Constraint on `q` for the Euler-family evaluators in this ring.
    fn validate_family_q(&self, q: &Self::Elem) -> Result<()>;

    /// Constraint on the twist for the Euler-family evaluators in this ring.
    fn validate_twist(&self, w: &RootOfUnity) -> Result<()>;
}

/// Checks that a rational is strictly between 0 and 1 in absolute value
/// (the constraint shared by the exact and complex family evaluators).
pub(crate) fn check_series_q(r: &BigRational) -> Result<()> {
    if r.is_zero() || r.abs() >= BigRational::one() {
        return Err(Error::InvalidParameter(format!(
            "family evaluators on this ring need 0 < |q| < 1, got {r}"
        )));
    }
    Ok(())
}
