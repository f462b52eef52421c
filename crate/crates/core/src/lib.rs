//! Cartier operators, Artin-Schreier covers of the projective line and
//! level-graph strata of degree-p covers in characteristic p.

pub mod ffield;
pub mod ratfunc;
pub mod expr;
pub mod linalg;
pub mod cartier;
pub mod ascover;
pub mod dual;
pub mod loci;
pub mod strata;

pub use ffield::{FieldElement, FieldError, FieldSpec, Fq, GaloisField};
pub use ratfunc::{Degree, Divisor, Mobius, Place, Polynomial, RatError, RationalFunction};
