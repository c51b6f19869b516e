//! Dirichlet characters of odd modulus with exact root-of-unity values.
//!
//! Characters are fully tabulated (moduli in scope stay small). The unit
//! group of an odd modulus decomposes as a product of cyclic groups, one
//! per odd prime power, each generated by its smallest primitive root;
//! enumeration order is mixed-radix over the per-factor exponents with
//! factors sorted by prime.

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::{discrete_log, euler_phi, factorize, smallest_primitive_root};
use crate::padic::{PAdic, PAdicField};
use crate::ring::{CoefficientRing, RootOfUnity};

/// A character value: zero off the units, a root of unity on them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CharValue {
    Zero,
    Root(RootOfUnity),
}

impl CharValue {
    pub fn is_zero(&self) -> bool {
        matches!(self, CharValue::Zero)
    }

    pub fn root(&self) -> Option<&RootOfUnity> {
        match self {
            CharValue::Zero => None,
            CharValue::Root(r) => Some(r),
        }
    }
}

/// A Dirichlet character of odd modulus, completely multiplicative on
/// units and zero elsewhere. The modulus-one character is identically 1,
/// including at 0; this makes the trivial-character L-series coincide
/// with the Hurwitz series without special-casing.
#[derive(Debug, Clone, PartialEq)]
pub struct DirichletCharacter {
    modulus: u64,
    values: Vec<CharValue>,
    order: u64,
    conductor: u64,
    index: Option<u64>,
}

impl DirichletCharacter {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// Position in enumeration order, when the character came from
    /// [`DirichletCharacter::enumerate`].
    pub fn index(&self) -> Option<u64> {
        self.index
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    /// The character value at any integer (periodic; zero off units).
    pub fn eval(&self, m: i64) -> CharValue {
        if self.modulus == 1 {
            return CharValue::Root(RootOfUnity::one());
        }
        let r = m.rem_euclid(self.modulus as i64) as usize;
        self.values[r]
    }

    /// The value embedded into a coefficient ring.
    pub fn value_in<R: CoefficientRing>(&self, ring: &R, m: i64) -> Result<R::Elem> {
        match self.eval(m) {
            CharValue::Zero => Ok(ring.zero()),
            CharValue::Root(r) => ring.embed_root_of_unity(&r),
        }
    }

    fn from_values(modulus: u64, values: Vec<CharValue>, index: Option<u64>) -> Self {
        let order = values
            .iter()
            .filter_map(|v| v.root().map(|r| r.order()))
            .fold(1u64, |acc, o| acc.lcm(&o));
        let conductor = conductor_of(modulus, &values);
        DirichletCharacter { modulus, values, order, conductor, index }
    }

    /// The trivial (principal) character of the given odd modulus.
    pub fn trivial(modulus: u64) -> Result<Self> {
        if modulus == 0 || modulus % 2 == 0 {
            return Err(Error::InvalidParameter(format!(
                "character modulus must be odd and positive, got {modulus}"
            )));
        }
        let values = (0..modulus)
            .map(|m| {
                if m.gcd(&modulus) == 1 || modulus == 1 {
                    CharValue::Root(RootOfUnity::one())
                } else {
                    CharValue::Zero
                }
            })
            .collect();
        Ok(Self::from_values(modulus, values, Some(0)))
    }

    /// All phi(d) characters of odd modulus d, in a fixed enumeration
    /// order (mixed-radix over per-prime-power exponents).
    pub fn enumerate(modulus: u64) -> Result<Vec<Self>> {
        if modulus == 0 || modulus % 2 == 0 {
            return Err(Error::InvalidParameter(format!(
                "character modulus must be odd and positive, got {modulus}"
            )));
        }
        if modulus == 1 {
            return Ok(vec![Self::trivial(1)?]);
        }
        let factors = factorize(modulus);
        // per factor: cyclic group order and discrete logs to its generator
        struct Factor {
            phi: u64,
            logs: Vec<Option<u64>>,
        }
        let mut parts = Vec::new();
        for &(p, e) in &factors {
            let pe = p.pow(e);
            let phi = euler_phi(pe);
            let g = smallest_primitive_root(p, e);
            let logs = (0..modulus)
                .map(|m| {
                    if m.gcd(&modulus) == 1 {
                        Some(discrete_log(g, m % pe, pe, phi).expect("primitive root"))
                    } else {
                        None
                    }
                })
                .collect();
            parts.push(Factor { phi, logs });
        }
        let total = euler_phi(modulus);
        let mut out = Vec::with_capacity(total as usize);
        for index in 0..total {
            // mixed-radix digits of the index are the per-factor exponents
            let mut rest = index;
            let exps: Vec<u64> = parts
                .iter()
                .map(|f| {
                    let j = rest % f.phi;
                    rest /= f.phi;
                    j
                })
                .collect();
            let values: Vec<CharValue> = (0..modulus)
                .map(|m| {
                    if m.gcd(&modulus) != 1 {
                        return CharValue::Zero;
                    }
                    let mut root = RootOfUnity::one();
                    for (f, &j) in parts.iter().zip(&exps) {
                        let t = f.logs[m as usize].expect("unit has a discrete log");
                        let k = ((j as u128 * t as u128) % f.phi as u128) as i64;
                        root = root.mul(&RootOfUnity::new(k, f.phi));
                    }
                    CharValue::Root(root)
                })
                .collect();
            out.push(Self::from_values(modulus, values, Some(index)));
        }
        Ok(out)
    }

    /// The Teichmueller character: modulus p, order p - 1, with the exact
    /// generator value zeta_(p-1) at the smallest primitive root, so its
    /// p-adic embedding agrees with the Teichmueller lift.
    pub fn teichmuller(p: u64) -> Result<Self> {
        if p < 3 || p % 2 == 0 {
            return Err(Error::InvalidParameter(format!("odd prime required, got {p}")));
        }
        let g = smallest_primitive_root(p, 1);
        let phi = p - 1;
        let values = (0..p)
            .map(|m| {
                if m == 0 {
                    CharValue::Zero
                } else {
                    let t = discrete_log(g, m, p, phi).expect("primitive root");
                    CharValue::Root(RootOfUnity::new(t as i64, phi))
                }
            })
            .collect();
        Ok(Self::from_values(p, values, None))
    }

    /// Pointwise product, extended to modulus lcm(d1, d2).
    pub fn product(&self, other: &Self) -> Self {
        let modulus = self.modulus.lcm(&other.modulus);
        let values = (0..modulus)
            .map(|m| match (self.eval(m as i64), other.eval(m as i64)) {
                (CharValue::Root(a), CharValue::Root(b)) => CharValue::Root(a.mul(&b)),
                _ => CharValue::Zero,
            })
            .collect();
        Self::from_values(modulus, values, None)
    }

    /// The character raised to an integer power (same modulus).
    pub fn power(&self, e: i64) -> Self {
        let values = self
            .values
            .iter()
            .map(|v| match v {
                CharValue::Zero => CharValue::Zero,
                CharValue::Root(r) => CharValue::Root(r.pow(e)),
            })
            .collect();
        Self::from_values(self.modulus, values, None)
    }

    /// The table of p-adic values under the canonical embedding; requires
    /// the character order to divide p - 1.
    pub fn embed_padic(&self, field: &PAdicField) -> Result<Vec<PAdic>> {
        if (field.prime() - 1) % self.order != 0 {
            return Err(Error::UnsupportedEmbedding {
                order: self.order,
                ring: format!("Q_{}", field.prime()),
            });
        }
        (0..self.modulus.max(1))
            .map(|m| self.value_in(field, m as i64))
            .collect()
    }

    /// JSON-friendly description: values as (numerator, order) pairs.
    pub fn describe(&self) -> CharacterDescription {
        CharacterDescription {
            modulus: self.modulus,
            index: self.index,
            conductor: self.conductor,
            order: self.order,
            values: self
                .values
                .iter()
                .map(|v| v.root().map(|r| (r.numerator(), r.order())))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CharacterDescription {
    pub modulus: u64,
    pub index: Option<u64>,
    pub conductor: u64,
    pub order: u64,
    pub values: Vec<Option<(u64, u64)>>,
}

/// The twisted family chi_n = chi * omega^(-n), a character of modulus
/// lcm(d, p).
pub fn chi_n(chi: &DirichletCharacter, n: i64, p: u64) -> Result<DirichletCharacter> {
    let omega = DirichletCharacter::teichmuller(p)?;
    Ok(chi.product(&omega.power(-n)))
}

/// Smallest f dividing the modulus such that the character factors
/// through the units mod f (brute force; moduli here are small).
fn conductor_of(modulus: u64, values: &[CharValue]) -> u64 {
    if modulus == 1 {
        return 1;
    }
    let divisors: Vec<u64> = (1..=modulus).filter(|f| modulus % f == 0).collect();
    'outer: for &f in &divisors {
        for a in 0..modulus {
            for b in 0..modulus {
                if a.gcd(&modulus) == 1 && b.gcd(&modulus) == 1 && a % f == b % f {
                    if values[a as usize] != values[b as usize] {
                        continue 'outer;
                    }
                }
            }
        }
        return f;
    }
    modulus
}
