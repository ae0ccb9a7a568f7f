//! Multiplicative characters, Jacobi sums and Greene's hypergeometric
//! functions over finite fields of odd characteristic, together with the
//! character matrices `M_q = (A(ij) conj(A)B(1 - ij))` indexed by `F_q^x`.
//!
//! Exact values live in `Z[zeta_{q-1}]` and are generic over the integer
//! coefficient type (see [`scalar::Coeff`]); the aliases below fix the
//! common choices. Floating-point cross-checks are generic over
//! [`scalar::Real`].

pub mod characters;
pub mod cyclotomic;
pub mod field;
pub mod float;
pub mod hypergeometric;
pub mod poly;
pub mod sample;
pub mod scalar;
pub mod specmat;
pub mod sums;

pub use characters::Character;
pub use cyclotomic::{CycError, Cyclotomic, RationalCyclotomic};
pub use field::{FieldElement, FieldError, FieldTable, PrimePower};
pub use scalar::{Coeff, Real};

pub type CycInt = Cyclotomic<i64>;
pub type WideCycInt = Cyclotomic<i128>;
pub type BigCycInt = Cyclotomic<num_bigint::BigInt>;
pub type RationalCyc = RationalCyclotomic<i64>;
pub type IntPoly = poly::IntPoly<i128>;
pub type CycPoly = poly::CycPoly<i64>;
pub type Complex64 = num_complex::Complex<f64>;
