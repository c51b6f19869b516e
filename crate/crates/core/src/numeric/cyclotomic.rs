//! Exact arithmetic in the n-th cyclotomic field Q(zeta_n).
//!
//! Elements are coefficient vectors of length phi(n) over the rationals,
//! eagerly reduced modulo the n-th cyclotomic polynomial so that equality
//! is plain coefficient comparison.

use std::fmt;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numeric::{euler_phi, rational_pow, rational_to_f64};
use crate::ring::{check_series_q, CoefficientRing, RootOfUnity};

type Poly = Vec<BigRational>;

fn poly_trim(p: &mut Poly) {
    while p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            if !cb.is_zero() {
                out[i + j] += ca * cb;
            }
        }
    }
    poly_trim(&mut out);
    out
}

/// Quotient and remainder of `a / b` for monic-leading `b`.
fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Poly, Poly) {
    assert!(!b.is_empty());
    let mut rem: Poly = a.to_vec();
    poly_trim(&mut rem);
    let db = b.len() - 1;
    let lead = b[db].clone();
    let mut quot = vec![BigRational::zero(); rem.len().saturating_sub(db)];
    while rem.len() > db {
        let dr = rem.len() - 1;
        let factor = &rem[dr] / &lead;
        quot[dr - db] = factor.clone();
        for (i, cb) in b.iter().enumerate() {
            let t = &factor * cb;
            rem[dr - db + i] -= t;
        }
        poly_trim(&mut rem);
    }
    poly_trim(&mut quot);
    (quot, rem)
}

/// Divisors of n, ascending.
fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut i = 1u64;
    while i * i <= n {
        if n % i == 0 {
            out.push(i);
            if i != n / i {
                out.push(n / i);
            }
        }
        i += 1;
    }
    out.sort_unstable();
    out
}

/// The n-th cyclotomic polynomial by recursive division:
/// Phi_n(x) = (x^n - 1) / prod_{d | n, d < n} Phi_d(x).
pub fn cyclotomic_polynomial(n: u64) -> Vec<BigRational> {
    assert!(n > 0);
    if n == 1 {
        return vec![-BigRational::one(), BigRational::one()];
    }
    let mut num = vec![BigRational::zero(); n as usize + 1];
    num[0] = -BigRational::one();
    num[n as usize] = BigRational::one();
    for d in divisors(n) {
        if d == n {
            continue;
        }
        let phi_d = cyclotomic_polynomial(d);
        let (q, r) = poly_divmod(&num, &phi_d);
        debug_assert!(r.is_empty());
        num = q;
    }
    num
}

/// The field Q(zeta_n), carrying the reduction polynomial.
#[derive(Clone)]
pub struct CycloField {
    order: u64,
    phi: usize,
    modulus: Poly,
}

impl fmt::Debug for CycloField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloField(order={})", self.order)
    }
}

impl PartialEq for CycloField {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order
    }
}

/// An element of Q(zeta_n): a polynomial in zeta_n of degree < phi(n).
#[derive(Clone, PartialEq)]
pub struct CycloExact {
    order: u64,
    coeffs: Vec<BigRational>,
}

impl CycloExact {
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// The rational constant this element equals, if it lies in Q.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs.iter().skip(1).all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }
}

impl fmt::Debug for CycloExact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclo{}{:?}", self.order, self.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>())
    }
}

impl CycloField {
    pub fn new(order: u64) -> Self {
        assert!(order > 0, "cyclotomic order must be positive");
        let modulus = cyclotomic_polynomial(order);
        let phi = euler_phi(order) as usize;
        debug_assert_eq!(modulus.len(), phi + 1);
        CycloField { order, phi, modulus }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn degree(&self) -> usize {
        self.phi
    }

    fn element(&self, mut coeffs: Poly) -> CycloExact {
        if coeffs.len() > self.phi {
            let (_, rem) = poly_divmod(&coeffs, &self.modulus);
            coeffs = rem;
        }
        coeffs.resize(self.phi, BigRational::zero());
        CycloExact { order: self.order, coeffs }
    }

    /// zeta_order^e as a field element.
    pub fn root_power(&self, e: i64) -> CycloExact {
        let e = e.rem_euclid(self.order as i64) as usize;
        let mut coeffs = vec![BigRational::zero(); e + 1];
        coeffs[e] = BigRational::one();
        self.element(coeffs)
    }

    pub fn from_coeffs(&self, coeffs: Vec<BigRational>) -> CycloExact {
        self.element(coeffs)
    }

    /// Numerical embedding zeta_n -> e^(2*pi*i/n).
    pub fn embed_complex(&self, a: &CycloExact) -> Complex64 {
        debug_assert_eq!(a.order, self.order);
        let theta = 2.0 * std::f64::consts::PI / (self.order as f64);
        let zeta = Complex64::new(theta.cos(), theta.sin());
        let mut acc = Complex64::new(0.0, 0.0);
        for c in a.coeffs.iter().rev() {
            acc = acc * zeta + Complex64::new(rational_to_f64(c), 0.0);
        }
        acc
    }
}

impl CoefficientRing for CycloField {
    type Elem = CycloExact;

    fn zero(&self) -> CycloExact {
        self.element(Vec::new())
    }

    fn one(&self) -> CycloExact {
        self.element(vec![BigRational::one()])
    }

    fn add(&self, a: &CycloExact, b: &CycloExact) -> CycloExact {
        debug_assert_eq!(a.order, b.order);
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(x, y)| x + y)
            .collect();
        CycloExact { order: self.order, coeffs }
    }

    fn sub(&self, a: &CycloExact, b: &CycloExact) -> CycloExact {
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(x, y)| x - y)
            .collect();
        CycloExact { order: self.order, coeffs }
    }

    fn mul(&self, a: &CycloExact, b: &CycloExact) -> CycloExact {
        self.element(poly_mul(&a.coeffs, &b.coeffs))
    }

    fn neg(&self, a: &CycloExact) -> CycloExact {
        CycloExact {
            order: self.order,
            coeffs: a.coeffs.iter().map(|c| -c).collect(),
        }
    }

    fn invert(&self, a: &CycloExact) -> Result<CycloExact> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero(format!(
                "inverse of 0 in Q(zeta_{})",
                self.order
            )));
        }
        // extended Euclid in Q[x]: the cyclotomic polynomial is irreducible,
        // so gcd(a, Phi_n) = 1 and u*a + v*Phi_n = 1 yields the inverse u.
        let mut r0: Poly = self.modulus.clone();
        let mut r1: Poly = a.coeffs.clone();
        poly_trim(&mut r1);
        let mut s0: Poly = Vec::new();
        let mut s1: Poly = vec![BigRational::one()];
        while !r1.is_empty() {
            let (q, r) = poly_divmod(&r0, &r1);
            let qs = poly_mul(&q, &s1);
            let mut s = s0.clone();
            s.resize(s.len().max(qs.len()), BigRational::zero());
            for (i, c) in qs.iter().enumerate() {
                s[i] -= c;
            }
            poly_trim(&mut s);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        debug_assert_eq!(r0.len(), 1, "cyclotomic modulus must be coprime to the element");
        let scale = r0[0].recip();
        let coeffs = s0.iter().map(|c| c * &scale).collect();
        Ok(self.element(coeffs))
    }

    fn is_zero(&self, a: &CycloExact) -> bool {
        a.coeffs.iter().all(|c| c.is_zero())
    }

    fn from_rational(&self, r: &BigRational) -> Result<CycloExact> {
        Ok(self.element(vec![r.clone()]))
    }

    fn embed_root_of_unity(&self, r: &RootOfUnity) -> Result<CycloExact> {
        if self.order % r.order() != 0 {
            return Err(Error::UnsupportedEmbedding {
                order: r.order(),
                ring: format!("Q(zeta_{})", self.order),
            });
        }
        let e = (r.numerator() * (self.order / r.order())) as i64;
        Ok(self.root_power(e))
    }

    fn pow_rational(&self, a: &CycloExact, e: &BigRational) -> Result<CycloExact> {
        // only rational-valued elements support fractional powers
        match a.as_rational() {
            Some(r) => self.from_rational(&rational_pow(&r, e)?),
            None => Err(Error::InexactPower(format!(
                "fractional power of a non-rational element of Q(zeta_{})",
                self.order
            ))),
        }
    }

    fn render(&self, a: &CycloExact) -> String {
        match a.as_rational() {
            Some(r) => r.to_string(),
            None => {
                let parts: Vec<String> = a.coeffs.iter().map(|c| c.to_string()).collect();
                format!("zeta_{}:[{}]", self.order, parts.join(", "))
            }
        }
    }

    fn validate_family_q(&self, q: &CycloExact) -> Result<()> {
        match q.as_rational() {
            Some(r) => check_series_q(&r),
            None => Err(Error::InvalidParameter(
                "family parameter q must be a rational element of the cyclotomic field".into(),
            )),
        }
    }

    fn validate_twist(&self, w: &RootOfUnity) -> Result<()> {
        if self.order % w.order() == 0 {
            Ok(())
        } else {
            Err(Error::UnsupportedEmbedding {
                order: w.order(),
                ring: format!("Q(zeta_{})", self.order),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rat;
    use proptest::prelude::*;

    #[test]
    fn cyclotomic_polynomials() {
        let as_i64 = |p: &[BigRational]| -> Vec<i64> {
            p.iter()
                .map(|c| {
                    assert!(c.is_integer());
                    num_traits::ToPrimitive::to_i64(&c.to_integer()).unwrap()
                })
                .collect()
        };
        assert_eq!(as_i64(&cyclotomic_polynomial(1)), vec![-1, 1]);
        assert_eq!(as_i64(&cyclotomic_polynomial(2)), vec![1, 1]);
        assert_eq!(as_i64(&cyclotomic_polynomial(3)), vec![1, 1, 1]);
        assert_eq!(as_i64(&cyclotomic_polynomial(4)), vec![1, 0, 1]);
        assert_eq!(as_i64(&cyclotomic_polynomial(9)), vec![1, 0, 0, 1, 0, 0, 1]);
        assert_eq!(as_i64(&cyclotomic_polynomial(12)), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn root_of_unity_relations() {
        let f = CycloField::new(3);
        let z = f.root_power(1);
        let prod = f.mul(&f.mul(&z, &z), &z);
        assert!(f.is_one(&prod));

        let f9 = CycloField::new(9);
        let z9 = f9.root_power(1);
        assert_eq!(f9.invert(&z9).unwrap(), f9.root_power(8));
        assert!(f9.is_one(&f9.pow(&z9, 9).unwrap()));
    }

    #[test]
    fn embed_fourth_root_is_i() {
        let f = CycloField::new(4);
        let z = f.root_power(1);
        let c = f.embed_complex(&z);
        assert!((c.re - 0.0).abs() < 1e-15);
        assert!((c.im - 1.0).abs() < 1e-15);
    }

    #[test]
    fn inverse_times_self_is_one() {
        let f = CycloField::new(9);
        let mut a = f.root_power(2);
        a = f.add(&a, &f.from_rational(&rat(3, 7)).unwrap());
        let inv = f.invert(&a).unwrap();
        assert!(f.is_one(&f.mul(&a, &inv)));
        assert!(f.invert(&f.zero()).is_err());
    }

    #[test]
    fn embedding_of_lower_order_roots() {
        let f = CycloField::new(18);
        let z3 = f.embed_root_of_unity(&RootOfUnity::new(1, 3)).unwrap();
        assert_eq!(z3, f.root_power(6));
        let m1 = f.embed_root_of_unity(&RootOfUnity::new(1, 2)).unwrap();
        assert_eq!(m1, f.from_rational(&rat(-1, 1)).unwrap());
        assert!(f.embed_root_of_unity(&RootOfUnity::new(1, 5)).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        // embed_complex is a ring homomorphism within float tolerance
        #[test]
        fn embedding_is_homomorphic(
            a0 in -50i64..50, a1 in -50i64..50, a2 in -50i64..50,
            b0 in -50i64..50, b1 in -50i64..50, b2 in -50i64..50,
        ) {
            let f = CycloField::new(9);
            let a = f.from_coeffs(vec![rat(a0, 3), rat(a1, 5), rat(a2, 7)]);
            let b = f.from_coeffs(vec![rat(b0, 7), rat(b1, 2), rat(b2, 3)]);
            let prod = f.embed_complex(&f.mul(&a, &b));
            let direct = f.embed_complex(&a) * f.embed_complex(&b);
            prop_assert!((prod - direct).norm() < 1e-12);
            let sum = f.embed_complex(&f.add(&a, &b));
            let dsum = f.embed_complex(&a) + f.embed_complex(&b);
            prop_assert!((sum - dsum).norm() < 1e-12);
        }
    }
}
