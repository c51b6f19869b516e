//! Exact, complex and p-adic arithmetic for the weighted twisted q-Euler
//! families: the fermionic p-adic q-integral, the closed-form polynomial
//! families and their finite identities, the complex twisted zeta and
//! L-functions with analytic continuation, and the p-adic interpolating
//! l-function.
//!
//! Every evaluator is generic over [`ring::CoefficientRing`]; concrete
//! domains are exact rationals, exact cyclotomic fields, complex floats,
//! the p-adic field and the p-adic cyclotomic ring. All values are
//! immutable and all operations pure, so everything here is safe to use
//! concurrently.

pub mod error;
pub mod ring;
pub mod numeric;
pub mod padic;
pub mod characters;
pub mod integral;

pub use error::{Error, Result};
pub use ring::{CoefficientRing, RootOfUnity};
pub use numeric::{ComplexField, RationalField};
pub use characters::{CharValue, DirichletCharacter};
pub use numeric::cyclotomic::{CycloExact, CycloField};
pub use padic::cyclo::{CycloPAdic, CycloPAdicRing};
pub use integral::IntegralResult;
pub use padic::{PAdic, PAdicField, PAdicRing, PrecisionBudget};
