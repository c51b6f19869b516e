//! The p^r-th cyclotomic ring over the p-adic integers.
//!
//! This is the arithmetic home for twists of p-power order. The extension
//! is totally ramified, so the augmentation map (substitute zeta -> 1)
//! detects units: an element is invertible exactly when its augmentation
//! is a p-adic unit.

use std::fmt;

use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::padic::{PAdic, PAdicField, PAdicRing};
use crate::ring::{CoefficientRing, RootOfUnity};

/// An element of Z_p[zeta_(p^r)], reduced modulo the p^r-th cyclotomic
/// polynomial: coefficients in the power basis 1, zeta, ..., zeta^(phi-1)
/// with phi = p^(r-1) * (p - 1).
#[derive(Clone, PartialEq)]
pub struct CycloPAdic {
    p: u64,
    level: u32,
    coeffs: Vec<PAdic>,
}

impl CycloPAdic {
    pub fn coeffs(&self) -> &[PAdic] {
        &self.coeffs
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// Substitute zeta -> 1: the image in Z_p under the augmentation map.
    pub fn augment(&self, field: &PAdicField) -> PAdic {
        let mut acc = PAdic::exact_zero(self.p);
        for c in &self.coeffs {
            acc = field.add(&acc, c);
        }
        acc
    }

    /// Minimum absolute precision across coefficients.
    pub fn abs_precision(&self) -> i64 {
        self.coeffs.iter().map(|c| c.abs_precision()).min().unwrap_or(i64::MAX)
    }
}

impl fmt::Debug for CycloPAdic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloPAdic(p={}, r={}, {:?})", self.p, self.level, self.coeffs)
    }
}

/// The ring Z_p[zeta_(p^r)] at a fixed working precision.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CycloPAdicRing {
    p: u64,
    level: u32,
    cap: i64,
}

impl CycloPAdicRing {
    pub fn new(p: u64, level: u32, cap: i64) -> Self {
        assert!(p >= 3 && p % 2 == 1, "the prime must be odd");
        assert!(level >= 1);
        CycloPAdicRing { p, level, cap }
    }

    pub fn scalar_field(&self) -> PAdicField {
        PAdicField::new(self.p, self.cap)
    }

    pub fn degree(&self) -> usize {
        (self.p.pow(self.level - 1) * (self.p - 1)) as usize
    }

    fn stride(&self) -> usize {
        self.p.pow(self.level - 1) as usize
    }

    fn from_coeff_vec(&self, mut coeffs: Vec<PAdic>) -> CycloPAdic {
        let phi = self.degree();
        let field = self.scalar_field();
        // reduce degree >= phi via zeta^phi = -(1 + zeta^m + ... + zeta^((p-2)m)),
        // m = p^(r-1), applied from the top down
        let mut deg = coeffs.len();
        while deg > phi {
            let c = coeffs[deg - 1].clone();
            coeffs[deg - 1] = PAdic::exact_zero(self.p);
            if !c.is_exact_zero() {
                let shift = deg - 1 - phi;
                for j in 0..(self.p - 1) as usize {
                    let idx = j * self.stride() + shift;
                    coeffs[idx] = field.sub(&coeffs[idx], &c);
                }
            }
            deg -= 1;
        }
        coeffs.resize(phi, PAdic::exact_zero(self.p));
        CycloPAdic { p: self.p, level: self.level, coeffs }
    }

    /// zeta^e as a ring element (e taken mod p^r).
    pub fn root_power(&self, e: i64) -> CycloPAdic {
        let n = self.p.pow(self.level) as i64;
        let e = e.rem_euclid(n) as usize;
        let mut coeffs = vec![PAdic::exact_zero(self.p); e + 1];
        coeffs[e] = self.scalar_field().one();
        self.from_coeff_vec(coeffs)
    }

    pub fn augment(&self, a: &CycloPAdic) -> PAdic {
        a.augment(&self.scalar_field())
    }

    fn scale(&self, a: &CycloPAdic, s: &PAdic) -> CycloPAdic {
        let field = self.scalar_field();
        CycloPAdic {
            p: self.p,
            level: self.level,
            coeffs: a.coeffs.iter().map(|c| field.mul(c, s)).collect(),
        }
    }
}

impl CoefficientRing for CycloPAdicRing {
    type Elem = CycloPAdic;

    fn zero(&self) -> CycloPAdic {
        CycloPAdic {
            p: self.p,
            level: self.level,
            coeffs: vec![PAdic::exact_zero(self.p); self.degree()],
        }
    }

    fn one(&self) -> CycloPAdic {
        let mut z = self.zero();
        z.coeffs[0] = self.scalar_field().one();
        z
    }

    fn add(&self, a: &CycloPAdic, b: &CycloPAdic) -> CycloPAdic {
        let field = self.scalar_field();
        CycloPAdic {
            p: self.p,
            level: self.level,
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| field.add(x, y)).collect(),
        }
    }

    fn sub(&self, a: &CycloPAdic, b: &CycloPAdic) -> CycloPAdic {
        let field = self.scalar_field();
        CycloPAdic {
            p: self.p,
            level: self.level,
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| field.sub(x, y)).collect(),
        }
    }

    fn mul(&self, a: &CycloPAdic, b: &CycloPAdic) -> CycloPAdic {
        let field = self.scalar_field();
        let phi = self.degree();
        let mut conv = vec![PAdic::exact_zero(self.p); 2 * phi - 1];
        for (i, ca) in a.coeffs.iter().enumerate() {
            if ca.is_exact_zero() {
                continue;
            }
            for (j, cb) in b.coeffs.iter().enumerate() {
                if cb.is_exact_zero() {
                    continue;
                }
                conv[i + j] = field.add(&conv[i + j], &field.mul(ca, cb));
            }
        }
        self.from_coeff_vec(conv)
    }

    fn neg(&self, a: &CycloPAdic) -> CycloPAdic {
        let field = self.scalar_field();
        CycloPAdic {
            p: self.p,
            level: self.level,
            coeffs: a.coeffs.iter().map(|c| field.neg(c)).collect(),
        }
    }

    fn invert(&self, a: &CycloPAdic) -> Result<CycloPAdic> {
        let field = self.scalar_field();
        let aug = self.augment(a);
        if aug.valuation_floor() > 0 || aug.is_zero_at_precision() {
            return Err(Error::DivisionByZero(format!(
                "non-invertible cyclotomic element: augmentation has valuation >= {}",
                aug.valuation_floor().min(1)
            )));
        }
        // Newton iteration x <- x (2 - a x); the augmentation inverse is a
        // seed correct modulo the ramified maximal ideal, and the error
        // ideal-valuation doubles each step.
        let mut x = self.from_padic(&field.invert(&aug)?);
        let two = self.from_padic(&field.from_integer(2));
        let max_iter = 2 * (64 - (self.cap as u64 * self.degree() as u64).leading_zeros()) + 8;
        for _ in 0..max_iter {
            let residual = self.sub(&self.mul(a, &x), &self.one());
            if self.diff_valuation_floor(&self.mul(a, &x), &self.one()) >= self.cap {
                return Ok(x);
            }
            let _ = residual;
            x = self.mul(&x, &self.sub(&two, &self.mul(a, &x)));
        }
        Err(Error::NoConvergence {
            level_cap: max_iter,
            reason: "cyclotomic inversion did not stabilise".into(),
        })
    }

    fn is_zero(&self, a: &CycloPAdic) -> bool {
        a.coeffs.iter().all(|c| c.is_zero_at_precision())
    }

    fn from_rational(&self, r: &BigRational) -> Result<CycloPAdic> {
        Ok(self.from_padic(&self.scalar_field().from_rational(r)?))
    }

    fn embed_root_of_unity(&self, r: &RootOfUnity) -> Result<CycloPAdic> {
        let n = r.order();
        if n == 1 {
            return Ok(self.one());
        }
        // split the order as p^j * m with m | p - 1
        let mut m = n;
        let mut j = 0u32;
        while m % self.p == 0 {
            m /= self.p;
            j += 1;
        }
        if j > self.level || (self.p - 1) % m != 0 {
            return Err(Error::UnsupportedEmbedding {
                order: n,
                ring: format!("Z_{}[zeta_{}^{}]", self.p, self.p, self.level),
            });
        }
        // zeta_n = zeta_(p^j)^alpha * zeta_m^beta with alpha m + beta p^j = 1
        let pj = self.p.pow(j);
        let (alpha, beta) = bezout(m as i64, pj as i64);
        let k = r.numerator() as i64;
        let mut acc = self.one();
        if pj > 1 {
            let e = (k * alpha).rem_euclid(pj as i64) * (self.p.pow(self.level - j) as i64);
            acc = self.root_power(e);
        }
        if m > 1 {
            let scalar = self
                .scalar_field()
                .embed_root_of_unity(&RootOfUnity::new(k * beta, m))?;
            acc = self.scale(&acc, &scalar);
        }
        Ok(acc)
    }

    fn pow_rational(&self, a: &CycloPAdic, e: &BigRational) -> Result<CycloPAdic> {
        if let Some(s) = self.scalar_part(a) {
            return Ok(self.from_padic(&self.scalar_field().pow_rational(&s, e)?));
        }
        if e.is_integer() {
            let n = e.to_integer().to_i64().ok_or_else(|| {
                Error::InexactPower("integer exponent too large".into())
            })?;
            return self.pow(a, n);
        }
        Err(Error::InexactPower(
            "fractional power of a non-scalar cyclotomic p-adic element".into(),
        ))
    }

    fn render(&self, a: &CycloPAdic) -> String {
        if let Some(s) = self.scalar_part(a) {
            return s.to_string();
        }
        let parts: Vec<String> = a.coeffs.iter().map(|c| c.to_string()).collect();
        format!("zeta_{}^{}:[{}]", self.p, self.level, parts.join("; "))
    }

    fn validate_family_q(&self, q: &CycloPAdic) -> Result<()> {
        match self.scalar_part(q) {
            Some(s) => self.scalar_field().validate_family_q(&s),
            None => Err(Error::InvalidParameter(
                "the family parameter q must be a scalar of the cyclotomic p-adic ring".into(),
            )),
        }
    }

    fn validate_twist(&self, w: &RootOfUnity) -> Result<()> {
        if w.is_one() {
            return Ok(());
        }
        let mut m = w.order();
        let mut j = 0u32;
        while m % self.p == 0 {
            m /= self.p;
            j += 1;
        }
        if m == 1 && j <= self.level {
            Ok(())
        } else {
            // twists of order coprime to p are not continuous in the exponent
            Err(Error::UnsupportedEmbedding {
                order: w.order(),
                ring: format!("twist group of Z_{}[zeta_{}^{}]", self.p, self.p, self.level),
            })
        }
    }
}

impl PAdicRing for CycloPAdicRing {
    fn prime(&self) -> u64 {
        self.p
    }
    fn precision_cap(&self) -> i64 {
        self.cap
    }
    fn from_padic(&self, x: &PAdic) -> CycloPAdic {
        let mut z = self.zero();
        z.coeffs[0] = x.clone();
        z
    }
    fn diff_valuation_floor(&self, a: &CycloPAdic, b: &CycloPAdic) -> i64 {
        a.coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(x, y)| self.scalar_field().sub(x, y).valuation_floor())
            .min()
            .unwrap_or(i64::MAX)
    }
    fn scalar_part(&self, a: &CycloPAdic) -> Option<PAdic> {
        if a.coeffs.iter().skip(1).all(|c| c.is_zero_at_precision()) {
            Some(a.coeffs[0].clone())
        } else {
            None
        }
    }
}

/// (x, y) with x*a + y*b = gcd(a, b) = 1 for coprime inputs.
fn bezout(a: i64, b: i64) -> (i64, i64) {
    if b == 0 {
        return (1, 0);
    }
    let (x, y) = bezout(b, a % b);
    (y, x - (a / b) * y)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defining_relation() {
        for (p, r) in [(3u64, 1u32), (3, 2), (5, 1)] {
            let ring = CycloPAdicRing::new(p, r, 12);
            let z = ring.root_power(1);
            let zn = ring.pow(&z, p.pow(r) as i64).unwrap();
            assert!(ring.is_one(&zn));
        }
    }

    #[test]
    fn augmentation_of_cyclotomic_sum() {
        // 1 + zeta + zeta^2 for p = 3, r = 1 is the reduction polynomial:
        // the element is zero, its augmentation has valuation >= 1, and the
        // raw substitution zeta -> 1 gives Phi_3(1) = 3.
        let ring = CycloPAdicRing::new(3, 1, 10);
        let sum = ring.add(&ring.add(&ring.one(), &ring.root_power(1)), &ring.root_power(2));
        assert!(ring.is_zero(&sum));
        let aug = ring.augment(&sum);
        assert!(aug.valuation_floor() >= 1);
        assert!(ring.invert(&sum).is_err());

        let phi3 = crate::numeric::cyclotomic::cyclotomic_polynomial(3);
        let at_one: num_rational::BigRational = phi3.iter().cloned().sum();
        assert_eq!(at_one, crate::numeric::rat(3, 1));
    }

    #[test]
    fn newton_inverse_of_unit() {
        // 1 + zeta has augmentation 2, a unit mod 3
        let ring = CycloPAdicRing::new(3, 1, 16);
        let a = ring.add(&ring.one(), &ring.root_power(1));
        let inv = ring.invert(&a).unwrap();
        assert!(ring.diff_valuation_floor(&ring.mul(&a, &inv), &ring.one()) >= 16);

        // 2 + (zeta - 1) in the 5-adic ring
        let ring5 = CycloPAdicRing::new(5, 1, 12);
        let a5 = ring5.add(&ring5.one(), &ring5.root_power(1));
        let inv5 = ring5.invert(&a5).unwrap();
        assert!(ring5.diff_valuation_floor(&ring5.mul(&a5, &inv5), &ring5.one()) >= 12);

        // zeta itself: inverse is zeta^(p^r - 1)
        let z = ring.root_power(1);
        let zi = ring.invert(&z).unwrap();
        assert!(ring.diff_valuation_floor(&zi, &ring.root_power(2)) >= 16);
    }

    #[test]
    fn embeds_mixed_order_roots() {
        let ring = CycloPAdicRing::new(3, 2, 10);
        // order 9: the ring generator itself
        let z9 = ring.embed_root_of_unity(&RootOfUnity::new(1, 9)).unwrap();
        assert!(ring.diff_valuation_floor(&z9, &ring.root_power(1)) >= 10);
        // order 2: the scalar -1
        let m1 = ring.embed_root_of_unity(&RootOfUnity::new(1, 2)).unwrap();
        assert!(ring.scalar_part(&m1).is_some());
        // order 18 = 2 * 9: product splits; check it powers to 1 at 18 and not at 9
        let z18 = ring.embed_root_of_unity(&RootOfUnity::new(1, 18)).unwrap();
        assert!(ring.is_one(&ring.pow(&z18, 18).unwrap()));
        assert!(!ring.is_one(&ring.pow(&z18, 9).unwrap()));
        // order 4 does not divide p - 1 = 2
        assert!(ring.embed_root_of_unity(&RootOfUnity::new(1, 4)).is_err());
    }

    #[test]
    fn twist_validation() {
        let ring = CycloPAdicRing::new(3, 1, 8);
        assert!(ring.validate_twist(&RootOfUnity::one()).is_ok());
        assert!(ring.validate_twist(&RootOfUnity::new(1, 3)).is_ok());
        assert!(ring.validate_twist(&RootOfUnity::new(1, 9)).is_err()); // level too high
        assert!(ring.validate_twist(&RootOfUnity::new(1, 2)).is_err()); // coprime order
    }
}
