//! Exact commutative algebra engine and residual intersection laboratory.

pub mod canonical;
pub mod catalog;
pub mod error;
pub mod experiment;
pub mod field;
pub mod fitting;
pub mod groebner;
pub mod hom;
pub mod ideal;
pub mod jacobian;
pub mod linalg;
pub mod minors;
pub mod module;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod residual;
pub mod resolution;
pub mod ring;
pub mod rng;

pub use error::{AlgebraError, Result};
pub use field::{CoefficientField, Field, Fp, Rationals, DEFAULT_PRIME};
pub use linalg::{Echelon, Matrix, PolySpan};
pub use monomial::{Monomial, MonomialOrder, MAX_VARS};
pub use poly::Polynomial;
pub use ring::{PolynomialRing, Ring, RingExt};
