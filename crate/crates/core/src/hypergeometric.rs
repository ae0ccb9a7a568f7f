//! Greene's finite-field hypergeometric functions.
//!
//! `nF_{n-1}(A_1..A_n; B_2..B_n | x) = q/(q-1) sum_chi (A_1 chi over chi)
//! (A_2 chi over B_2 chi) ... (A_n chi over B_n chi) chi(x)`, evaluated as an
//! exact `RationalCyclotomic` with denominator `q^{n-1} (q-1)`.

use thiserror::Error;

use crate::characters::Character;
use crate::cyclotomic::{Cyclotomic, RationalCyclotomic};
use crate::field::{FieldElement, FieldTable};
use crate::scalar::Coeff;
use crate::sums::{jacobi, JacobiTable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HypError {
    #[error("need n >= {min} top parameters and n - 1 bottom parameters, got {top} and {bottom}")]
    Arity {
        top: usize,
        bottom: usize,
        min: usize,
    },
    #[error("coefficients of a {n}F{m} over F_{q} may exceed the coefficient type", m = .n - 1)]
    Overflow { n: usize, q: u32 },
    #[error("lambda must avoid 0 and 1 (singular curve)")]
    SingularCurve,
}

/// Character indices `A_1..A_n` and `B_2..B_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypParams {
    pub top: Vec<i64>,
    pub bottom: Vec<i64>,
}

impl HypParams {
    pub fn new(top: Vec<i64>, bottom: Vec<i64>) -> Result<Self, HypError> {
        Self::checked(top, bottom, 1)
    }

    fn checked(top: Vec<i64>, bottom: Vec<i64>, min: usize) -> Result<Self, HypError> {
        if top.len() < min || bottom.len() + 1 != top.len() {
            return Err(HypError::Arity {
                top: top.len(),
                bottom: bottom.len(),
                min,
            });
        }
        Ok(Self { top, bottom })
    }

    pub fn n(&self) -> usize {
        self.top.len()
    }

    // `B_1 = epsilon` completes the bottom row.
    fn pairs(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.top
            .iter()
            .copied()
            .zip(std::iter::once(0).chain(self.bottom.iter().copied()))
    }
}

/// Supplies `B(-1) J(A, conj B)`, the numerator of `(A over B)` over `q`.
pub trait BinomSource<T> {
    fn binom_numerator(&self, a: i64, b: i64) -> Cyclotomic<T>;
}

impl<T: Coeff> BinomSource<T> for JacobiTable<T> {
    fn binom_numerator(&self, a: i64, b: i64) -> Cyclotomic<T> {
        JacobiTable::binom_numerator(self, a, b)
    }
}

/// Computes each Jacobi sum on demand; for fields past the table cap.
pub struct DirectSums<'f>(pub &'f FieldTable);

impl<T: Coeff> BinomSource<T> for DirectSums<'_> {
    fn binom_numerator(&self, a: i64, b: i64) -> Cyclotomic<T> {
        let j = jacobi::<T>(Character::new(self.0, a), Character::new(self.0, -b));
        if b.rem_euclid(2) == 0 {
            j
        } else {
            -j
        }
    }
}

/// Evaluator bound to one field and one source of Jacobi sums.
pub struct Hypergeometric<'a, T, S> {
    field: &'a FieldTable,
    sums: &'a S,
    _coeff: std::marker::PhantomData<T>,
}

impl<'a, T: Coeff, S: BinomSource<T>> Hypergeometric<'a, T, S> {
    pub fn new(field: &'a FieldTable, sums: &'a S) -> Self {
        Self {
            field,
            sums,
            _coeff: std::marker::PhantomData,
        }
    }

    pub fn field(&self) -> &'a FieldTable {
        self.field
    }

    /// `q^{n-1} (q-1)`
    pub fn denominator(&self, n: usize) -> T {
        let q = T::int(self.field.q() as i64);
        (1..n).fold(q.clone() - T::one(), |acc, _| acc.mul_c(&q))
    }

    fn check_growth(&self, n: usize) -> Result<(), HypError> {
        let q = self.field.q() as f64;
        if T::holds_bits(n as f64 * q.log2() + q.log2() + 1.0) {
            Ok(())
        } else {
            Err(HypError::Overflow {
                n,
                q: self.field.q(),
            })
        }
    }

    /// Per-character coefficients `c_chi` with `F(x) = sum_chi c_chi chi(x) /
    /// (q^{n-1}(q-1))`.
    pub fn coefficients(&self, params: &HypParams) -> Result<Vec<Cyclotomic<T>>, HypError> {
        self.check_growth(params.n())?;
        let order = self.field.order() as i64;
        Ok((0..order)
            .map(|chi| {
                params
                    .pairs()
                    .map(|(a, b)| self.sums.binom_numerator(a + chi, b + chi))
                    .reduce(|acc, t| (&acc * &t).reduced())
                    .expect("at least one parameter")
            })
            .collect())
    }

    fn value_at(&self, coeffs: &[Cyclotomic<T>], x: FieldElement) -> Cyclotomic<T> {
        let n = self.field.order() as usize;
        let mut acc = Cyclotomic::zero(n);
        if x.is_zero() {
            return acc;
        }
        let lx = self.field.log_unchecked(x) as usize;
        for (chi, c) in coeffs.iter().enumerate() {
            acc.add_rotated(c, chi * lx % n);
        }
        acc
    }

    pub fn eval(
        &self,
        params: &HypParams,
        x: FieldElement,
    ) -> Result<RationalCyclotomic<T>, HypError> {
        let coeffs = self.coefficients(params)?;
        let den = self.denominator(params.n());
        Ok(RationalCyclotomic::new(self.value_at(&coeffs, x), den).unwrap())
    }

    /// Values at every element of `F_q`, in canonical order.
    pub fn eval_all(&self, params: &HypParams) -> Result<Vec<RationalCyclotomic<T>>, HypError> {
        let coeffs = self.coefficients(params)?;
        let den = self.denominator(params.n());
        Ok(self
            .field
            .elements()
            .map(|x| RationalCyclotomic::new(self.value_at(&coeffs, x), den.clone()).unwrap())
            .collect())
    }

    /// Both sides of the Euler integral transform for `n+1 F_n`, with
    /// `A_{n+1}, B_{n+1}` the last entries of `params`.
    pub fn euler_transform(
        &self,
        params: &HypParams,
        x: FieldElement,
    ) -> Result<EulerCheck<T>, HypError> {
        let top_n = params.top.len();
        let params = HypParams::checked(params.top.clone(), params.bottom.clone(), 2)?;
        let lhs = self.eval(&params, x)?;

        let a_last = Character::new(self.field, params.top[top_n - 1]);
        let b_last = Character::new(self.field, params.bottom[top_n - 2]);
        let inner = HypParams::new(
            params.top[..top_n - 1].to_vec(),
            params.bottom[..top_n - 2].to_vec(),
        )?;
        let inner_coeffs = self.coefficients(&inner)?;
        let weight = a_last.conj().mul(b_last);
        let n = self.field.order() as usize;
        let mut sum = Cyclotomic::zero(n);
        for y in self.field.units() {
            let (Some(ea), Some(ew)) =
                (a_last.exponent(y), weight.exponent(self.field.one_minus(y)))
            else {
                continue;
            };
            let inner_val = self.value_at(&inner_coeffs, self.field.mul(x, y));
            sum.add_rotated(&inner_val, (ea + ew) as usize);
        }
        if a_last.mul(b_last).sign() < 0 {
            sum = -sum;
        }
        let q = T::int(self.field.q() as i64);
        let rhs = RationalCyclotomic::new(sum, self.denominator(inner.n()).mul_c(&q)).unwrap();
        let equal = lhs == rhs;
        Ok(EulerCheck { lhs, rhs, equal })
    }

    /// `2F1(phi, phi; epsilon | lambda)`
    pub fn legendre_2f1(&self, lambda: FieldElement) -> Result<RationalCyclotomic<T>, HypError> {
        let h = self.field.order() as i64 / 2;
        self.eval(&HypParams::new(vec![h, h], vec![0])?, lambda)
    }

    /// Compares the point count on `y^2 = x(x-1)(x-lambda)` with
    /// `1 + q + q phi(-1) 2F1(phi, phi; epsilon | lambda)`.
    pub fn ec_identity(&self, lambda: FieldElement) -> Result<EcCheck<T>, HypError> {
        let count = ec_count(self.field, lambda)?;
        let hyp = self.legendre_2f1(lambda)?;
        let q = self.field.q() as i64;
        let phi_m1 = Character::legendre(self.field).sign();
        let trace_term = hyp.scale(&T::int(q * phi_m1)).as_integer();
        let expected = count as i64 - 1 - q;
        let equal = trace_term.as_ref().is_some_and(|t| *t == T::int(expected));
        Ok(EcCheck {
            count,
            hyp,
            trace_term,
            equal,
        })
    }
}

#[derive(Debug, Clone)]
pub struct EulerCheck<T> {
    pub lhs: RationalCyclotomic<T>,
    pub rhs: RationalCyclotomic<T>,
    pub equal: bool,
}

#[derive(Debug, Clone)]
pub struct EcCheck<T> {
    pub count: u64,
    pub hyp: RationalCyclotomic<T>,
    /// `q phi(-1) 2F1(...)`, when it is a rational integer.
    pub trace_term: Option<T>,
    pub equal: bool,
}

/// Points on `y^2 = x(x-1)(x-lambda)` over `F_q`, including infinity.
pub fn ec_count(field: &FieldTable, lambda: FieldElement) -> Result<u64, HypError> {
    if lambda.is_zero() || lambda == FieldElement::ONE {
        return Err(HypError::SingularCurve);
    }
    let phi = Character::legendre(field);
    let mut count = 1u64;
    for x in field.elements() {
        let rhs = field.mul(
            field.mul(x, field.sub(x, FieldElement::ONE)),
            field.sub(x, lambda),
        );
        count += match phi.exponent(rhs) {
            None => 1,
            Some(0) => 2,
            Some(_) => 0,
        };
    }
    Ok(count)
}

/// `|count - (q + 1)| <= 2 sqrt(q)`, compared in integers.
pub fn within_hasse_bound(q: u32, count: u64) -> bool {
    let t = count as i64 - q as i64 - 1;
    t * t <= 4 * q as i64
}
