//! Exact univariate polynomial arithmetic over the integers and over
//! prime fields, plus resultants, discriminants, Sturm sequences and
//! Dickson polynomials.

mod int_poly;
pub(crate) mod mod_poly;
mod resultant;
mod sturm;

pub use int_poly::{dickson, expand_reduced, IntPolynomial};
pub use mod_poly::{FactorizationPattern, ModPolynomial, MAX_MODULUS};
pub use resultant::{discriminant, resultant};
pub use sturm::sturm_root_count;
