//! Scalar traits for the exact and floating-point backends.
//!
//! Exact arithmetic is carried out over an integer coefficient type `T:
//! Coeff`, so the same code serves `i64`, `i128` and `BigInt`. Fixed-width
//! types advertise their usable magnitude through [`Coeff::BITS`]; callers
//! check growth bounds against it before starting a computation, and every
//! coefficient operation is checked so an overflow that slips past a bound
//! panics instead of producing a wrong answer.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{
    CheckedAdd, CheckedMul, CheckedSub, Float, FloatConst, FromPrimitive, Signed, ToPrimitive,
};

pub trait Coeff:
    Clone
    + Debug
    + Display
    + Eq
    + Ord
    + Integer
    + Signed
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
    + 'static
{
    /// Bits of magnitude available, `None` for arbitrary precision.
    const BITS: Option<u32>;

    fn int(v: i64) -> Self {
        <Self as FromPrimitive>::from_i64(v).expect("i64 fits every coefficient type")
    }

    fn add_c(&self, other: &Self) -> Self {
        self.checked_add(other)
            .unwrap_or_else(|| overflow("addition"))
    }

    fn sub_c(&self, other: &Self) -> Self {
        self.checked_sub(other)
            .unwrap_or_else(|| overflow("subtraction"))
    }

    fn mul_c(&self, other: &Self) -> Self {
        self.checked_mul(other)
            .unwrap_or_else(|| overflow("multiplication"))
    }

    /// True when a value of magnitude up to `2^bits` is representable.
    fn holds_bits(bits: f64) -> bool {
        match Self::BITS {
            Some(cap) => bits < cap as f64,
            None => true,
        }
    }

    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

#[cold]
fn overflow(op: &str) -> ! {
    panic!("coefficient overflow in {op}; the caller's growth bound is wrong")
}

impl Coeff for i64 {
    const BITS: Option<u32> = Some(62);
}

impl Coeff for i128 {
    const BITS: Option<u32> = Some(126);
}

impl Coeff for BigInt {
    const BITS: Option<u32> = None;
}

/// Floating-point scalar for the complex embedding.
pub trait Real: Float + FloatConst + Debug + Display + Send + Sync + 'static {}

impl<F> Real for F where F: Float + FloatConst + Debug + Display + Send + Sync + 'static {}
