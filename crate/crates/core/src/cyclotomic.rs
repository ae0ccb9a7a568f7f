//! Exact arithmetic in `Z[zeta_n]`.
//!
//! Values are stored as full group-ring vectors of length `n` with
//! `zeta^n = 1`. Multiplication is cyclic convolution and needs no
//! reduction; equality, integrality and exact division go through the
//! canonical form, the remainder modulo the cyclotomic polynomial `Phi_n`.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_complex::Complex;
use thiserror::Error;

use crate::poly::IntPoly;
use crate::scalar::{Coeff, Real};

/// Largest `n` for which `Phi_n` is built.
pub const CYCLOTOMIC_CAP: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycError {
    #[error("mismatched root-of-unity orders {0} and {1}")]
    OrderMismatch(usize, usize),
    #[error("{value} is not divisible by {divisor} in Z[zeta_{n}]")]
    NotDivisible {
        n: usize,
        value: String,
        divisor: String,
    },
    #[error("denominator must be positive")]
    BadDenominator,
    #[error("cyclotomic order {0} outside 1..={CYCLOTOMIC_CAP}")]
    OrderOutOfRange(usize),
}

type PhiCache = RwLock<HashMap<usize, Arc<[i64]>>>;

fn phi_cache() -> &'static PhiCache {
    static CACHE: OnceLock<PhiCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `Phi_n`, by dividing `x^n - 1` by `Phi_d` for every proper divisor `d`.
pub fn cyclotomic_polynomial(n: usize) -> Result<IntPoly<i64>, CycError> {
    Ok(IntPoly::from_i64(&phi_coeffs(n)?))
}

fn phi_coeffs(n: usize) -> Result<Arc<[i64]>, CycError> {
    if n == 0 || n > CYCLOTOMIC_CAP {
        return Err(CycError::OrderOutOfRange(n));
    }
    if let Some(c) = phi_cache().read().unwrap().get(&n) {
        return Ok(c.clone());
    }
    let mut num = vec![0i64; n + 1];
    num[0] = -1;
    num[n] = 1;
    let mut poly = IntPoly::<i64>::new(num);
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        let phi_d = IntPoly::from_i64(&phi_coeffs(d)?);
        poly = poly.div_exact_monic(&phi_d).expect("Phi_d divides x^n - 1");
    }
    let coeffs: Arc<[i64]> = poly.coeffs().into();
    phi_cache().write().unwrap().insert(n, coeffs.clone());
    Ok(coeffs)
}

/// Euler's totient, the degree of `Phi_n`.
pub fn totient(n: usize) -> usize {
    let mut result = n;
    let mut m = n;
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            while m.is_multiple_of(d) {
                m /= d;
            }
            result -= result / d;
        }
        d += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// An element of `Z[zeta_n]` in group-ring form.
#[derive(Debug, Clone)]
pub struct Cyclotomic<T> {
    n: usize,
    coeffs: Vec<T>,
}

impl<T: Coeff> Cyclotomic<T> {
    pub fn zero(n: usize) -> Self {
        assert!(n >= 1, "cyclotomic order must be positive");
        Self {
            n,
            coeffs: vec![T::zero(); n],
        }
    }

    pub fn one(n: usize) -> Self {
        Self::from_int(n, T::one())
    }

    pub fn from_int(n: usize, c: T) -> Self {
        let mut z = Self::zero(n);
        z.coeffs[0] = c;
        z
    }

    /// `zeta_n^e`
    pub fn root(n: usize, e: i64) -> Self {
        let mut z = Self::zero(n);
        z.coeffs[e.rem_euclid(n as i64) as usize] = T::one();
        z
    }

    /// From an arbitrary-length coefficient list; indices are taken mod `n`.
    pub fn from_coeffs(n: usize, coeffs: Vec<T>) -> Self {
        let mut z = Self::zero(n);
        for (e, c) in coeffs.into_iter().enumerate() {
            let slot = &mut z.coeffs[e % n];
            *slot = slot.add_c(&c);
        }
        z
    }

    /// Builds `sum_e counts[e] zeta^e` from exponent tallies.
    pub fn from_counts(counts: &[i64]) -> Self {
        Self {
            n: counts.len(),
            coeffs: counts.iter().map(|&c| T::int(c)).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Raw group-ring coefficients (not canonical).
    pub fn raw(&self) -> &[T] {
        &self.coeffs
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, CycError> {
        self.same_order(other)?;
        Ok(self.zip_with(other, T::add_c))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, CycError> {
        self.same_order(other)?;
        Ok(self.zip_with(other, T::sub_c))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, CycError> {
        self.same_order(other)?;
        let n = self.n;
        let mut out = vec![T::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let k = (i + j) % n;
                out[k] = out[k].add_c(&a.mul_c(b));
            }
        }
        Ok(Self { n, coeffs: out })
    }

    fn same_order(&self, other: &Self) -> Result<(), CycError> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(CycError::OrderMismatch(self.n, other.n))
        }
    }

    fn zip_with(&self, other: &Self, op: impl Fn(&T, &T) -> T) -> Self {
        Self {
            n: self.n,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| op(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, k: &T) -> Self {
        Self {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| c.mul_c(k)).collect(),
        }
    }

    /// Multiplication by `zeta^e`.
    pub fn rotate(&self, e: i64) -> Self {
        let n = self.n;
        let s = e.rem_euclid(n as i64) as usize;
        let mut coeffs = vec![T::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[(i + s) % n] = c.clone();
        }
        Self { n, coeffs }
    }

    /// `self += zeta^e * other` in place.
    pub fn add_rotated(&mut self, other: &Self, e: usize) {
        assert_eq!(self.n, other.n, "mismatched root-of-unity orders");
        let n = self.n;
        let s = e % n;
        for (i, c) in other.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let k = if i + s >= n { i + s - n } else { i + s };
            self.coeffs[k] = self.coeffs[k].add_c(c);
        }
    }

    /// `self += c * zeta^e` in place.
    pub fn add_term(&mut self, c: &T, e: usize) {
        let k = e % self.n;
        self.coeffs[k] = self.coeffs[k].add_c(c);
    }

    /// Complex conjugation, `zeta^e -> zeta^{-e}`.
    pub fn conj(&self) -> Self {
        let n = self.n;
        let mut coeffs = vec![T::zero(); n];
        for (e, c) in self.coeffs.iter().enumerate() {
            coeffs[(n - e) % n] = c.clone();
        }
        Self { n, coeffs }
    }

    /// Remainder modulo `Phi_n`: a vector of length `phi(n)` that decides
    /// equality.
    pub fn canonical(&self) -> Vec<T> {
        let phi = phi_coeffs(self.n).expect("order within the cyclotomic cap");
        let d = phi.len() - 1;
        let mut a = self.coeffs.clone();
        let terms: Vec<(usize, T)> = phi[..d]
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(j, &c)| (j, T::int(c)))
            .collect();
        for k in (d..a.len()).rev() {
            if a[k].is_zero() {
                continue;
            }
            let c = std::mem::replace(&mut a[k], T::zero());
            for (j, pc) in &terms {
                let idx = k - d + j;
                a[idx] = a[idx].sub_c(&c.mul_c(pc));
            }
        }
        a.truncate(d);
        a
    }

    /// The same element with its raw vector replaced by the canonical form.
    pub fn reduced(&self) -> Self {
        let mut coeffs = self.canonical();
        coeffs.resize(self.n, T::zero());
        Self { n: self.n, coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.canonical().iter().all(|c| c.is_zero())
    }

    /// `Some(c)` when the element is the rational integer `c`.
    pub fn as_integer(&self) -> Option<T> {
        let c = self.canonical();
        if c[1..].iter().all(|x| x.is_zero()) {
            Some(c[0].clone())
        } else {
            None
        }
    }

    /// `Some((c, e))` when the raw vector is the single term `c zeta^e`.
    pub fn as_monomial(&self) -> Option<(T, usize)> {
        let mut found = None;
        for (e, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                if found.is_some() {
                    return None;
                }
                found = Some((c.clone(), e));
            }
        }
        found
    }

    /// Division by a rational integer that must divide every canonical
    /// coefficient.
    pub fn exact_div_int(&self, k: &T) -> Result<Self, CycError> {
        let canon = self.canonical();
        if k.is_zero() || canon.iter().any(|c| !c.is_multiple_of(k)) {
            return Err(CycError::NotDivisible {
                n: self.n,
                value: self.to_string(),
                divisor: k.to_string(),
            });
        }
        let mut coeffs: Vec<T> = canon.iter().map(|c| c.div_floor(k)).collect();
        coeffs.resize(self.n, T::zero());
        Ok(Self { n: self.n, coeffs })
    }

    /// Evaluation at `zeta_n = exp(2 pi i / n)`.
    pub fn embed<F: Real>(&self) -> Complex<F> {
        let n = F::from(self.n).unwrap();
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .fold(Complex::new(F::zero(), F::zero()), |acc, (e, c)| {
                let theta = F::TAU() * F::from(e).unwrap() / n;
                let c = F::from(c.to_f64_lossy()).unwrap();
                acc + Complex::from_polar(c, theta)
            })
    }

    pub fn embed_f64(&self) -> Complex<f64> {
        self.embed()
    }

    pub fn convert<U: Coeff>(&self) -> Cyclotomic<U> {
        Cyclotomic {
            n: self.n,
            coeffs: self
                .coeffs
                .iter()
                .map(|c| U::from_i128(c.to_i128().expect("coefficient fits i128")).unwrap())
                .collect(),
        }
    }
}

impl<T: Coeff> PartialEq for Cyclotomic<T> {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.canonical() == other.canonical()
    }
}

impl<T: Coeff> Eq for Cyclotomic<T> {}

impl<T: Coeff> fmt::Display for Cyclotomic<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let canon = self.canonical();
        let mut first = true;
        for (e, c) in canon.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match (e, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "z")?,
                (1, false) => write!(f, "{mag}z")?,
                (_, true) => write!(f, "z^{e}")?,
                (_, false) => write!(f, "{mag}z^{e}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $try:ident) => {
        impl<T: Coeff> $tr<&Cyclotomic<T>> for &Cyclotomic<T> {
            type Output = Cyclotomic<T>;
            fn $method(self, rhs: &Cyclotomic<T>) -> Cyclotomic<T> {
                self.$try(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl<T: Coeff> $tr for Cyclotomic<T> {
            type Output = Cyclotomic<T>;
            fn $method(self, rhs: Cyclotomic<T>) -> Cyclotomic<T> {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl<T: Coeff> Neg for &Cyclotomic<T> {
    type Output = Cyclotomic<T>;
    fn neg(self) -> Cyclotomic<T> {
        Cyclotomic {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

impl<T: Coeff> Neg for Cyclotomic<T> {
    type Output = Cyclotomic<T>;
    fn neg(self) -> Cyclotomic<T> {
        -&self
    }
}

/// `num / den` with `den > 0`, never reduced to lowest terms.
#[derive(Debug, Clone)]
pub struct RationalCyclotomic<T> {
    num: Cyclotomic<T>,
    den: T,
}

impl<T: Coeff> RationalCyclotomic<T> {
    pub fn new(num: Cyclotomic<T>, den: T) -> Result<Self, CycError> {
        if !den.is_positive() {
            return Err(CycError::BadDenominator);
        }
        Ok(Self { num, den })
    }

    pub fn integral(num: Cyclotomic<T>) -> Self {
        Self { num, den: T::one() }
    }

    pub fn zero(n: usize) -> Self {
        Self::integral(Cyclotomic::zero(n))
    }

    pub fn num(&self) -> &Cyclotomic<T> {
        &self.num
    }

    pub fn den(&self) -> &T {
        &self.den
    }

    pub fn n(&self) -> usize {
        self.num.n()
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self {
            num: &self.num * &other.num,
            den: self.den.mul_c(&other.den),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.den == other.den {
            return Self {
                num: &self.num + &other.num,
                den: self.den.clone(),
            };
        }
        Self {
            num: &self.num.scale(&other.den) + &other.num.scale(&self.den),
            den: self.den.mul_c(&other.den),
        }
    }

    pub fn scale(&self, k: &T) -> Self {
        Self {
            num: self.num.scale(k),
            den: self.den.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// `Some(c)` when the value is the rational integer `c`.
    pub fn as_integer(&self) -> Option<T> {
        let c = self.num.as_integer()?;
        c.is_multiple_of(&self.den).then(|| c.div_floor(&self.den))
    }

    /// `Some((a, b))` when the value is the rational number `a/b`.
    pub fn as_rational(&self) -> Option<(T, T)> {
        let c = self.num.as_integer()?;
        let g = c.gcd(&self.den);
        Some((c.div_floor(&g), self.den.div_floor(&g)))
    }

    pub fn embed<F: Real>(&self) -> Complex<F> {
        self.num.embed::<F>() / F::from(self.den.to_f64_lossy()).unwrap()
    }

    pub fn embed_f64(&self) -> Complex<f64> {
        self.embed()
    }
}

impl<T: Coeff> PartialEq for RationalCyclotomic<T> {
    fn eq(&self, other: &Self) -> bool {
        self.num.scale(&other.den) == other.num.scale(&self.den)
    }
}

impl<T: Coeff> fmt::Display for RationalCyclotomic<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some((a, b)) = self.as_rational() {
            return if b.is_one() {
                write!(f, "{a}")
            } else {
                write!(f, "{a}/{b}")
            };
        }
        write!(f, "({})/{}", self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type Z = Cyclotomic<i64>;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1).unwrap().coeffs(), &[-1, 1]);
        assert_eq!(cyclotomic_polynomial(4).unwrap().coeffs(), &[1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6).unwrap().coeffs(), &[1, -1, 1]);
        assert_eq!(
            cyclotomic_polynomial(12).unwrap().coeffs(),
            &[1, 0, -1, 0, 1]
        );
        assert!(cyclotomic_polynomial(0).is_err());
        assert_eq!(totient(12), 4);
        assert_eq!(totient(342), 108);
    }

    #[test]
    fn twelfth_by_hand() {
        // (x^12 - 1) / (Phi_1 Phi_2 Phi_3 Phi_4 Phi_6)
        let mut p = IntPoly::<i64>::from_i64(&[-1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]);
        for d in [
            vec![-1, 1],
            vec![1, 1],
            vec![1, 1, 1],
            vec![1, 0, 1],
            vec![1, -1, 1],
        ] {
            p = p.div_exact_monic(&IntPoly::from_i64(&d)).unwrap();
        }
        assert_eq!(p, cyclotomic_polynomial(12).unwrap());
    }

    #[test]
    fn ring_basics() {
        let i = Z::root(4, 1);
        assert_eq!(&i * &i, Z::from_int(4, -1));
        assert_eq!(&i * &i, Z::root(4, 2));
        let x = &Z::root(4, 3) + &Z::from_int(4, 5);
        assert_eq!(&x + &Z::zero(4), x);
        let one = Z::one(4);
        assert_eq!(&(&one + &i) * &(&one - &i), Z::from_int(4, 2));
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(Z::root(4, 2).canonical(), vec![-1, 0]);
        assert_eq!(Z::root(4, 3).canonical(), vec![0, -1]);
        let geo = Z::from_coeffs(6, vec![1; 6]);
        assert_eq!(geo.canonical(), vec![0, 0]);
        assert!(geo.is_zero());
    }

    #[test]
    fn conjugation() {
        let z = Z::root(7, 1);
        assert_eq!(z.conj(), Z::root(7, 6));
        assert_eq!(Z::from_int(7, 3).conj(), Z::from_int(7, 3));
        let a = Z::from_coeffs(7, vec![1, -2, 0, 5]);
        assert_eq!(a.conj().conj(), a);
    }

    #[test]
    fn integer_division() {
        assert_eq!(
            Z::from_int(5, 6).exact_div_int(&3).unwrap(),
            Z::from_int(5, 2)
        );
        assert_eq!(
            Z::root(5, 1).scale(&2).exact_div_int(&2).unwrap(),
            Z::root(5, 1)
        );
        assert!(matches!(
            Z::root(5, 1).exact_div_int(&2),
            Err(CycError::NotDivisible { .. })
        ));
        // 2 + 2z + 2z^2 + 2z^3 + 3z^4 = -2z^4 + 3z^4 = z^4 in canonical form: not divisible by 2
        let raw = Z::from_coeffs(5, vec![2, 2, 2, 2, 3]);
        assert!(raw.exact_div_int(&2).is_err());
        // 3 + 3z + ... + 3z^4 = 0, divisible by anything
        assert!(Z::from_coeffs(5, vec![3; 5])
            .exact_div_int(&7)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn embedding() {
        let one: Complex<f64> = Z::one(9).embed();
        assert!((one - Complex::new(1.0, 0.0)).norm() < 1e-12);
        let i: Complex<f64> = Z::root(4, 1).embed();
        assert!((i - Complex::new(0.0, 1.0)).norm() < 1e-12);
        let f: Complex<f32> = Z::root(4, 1).embed();
        assert!((f - Complex::new(0.0, 1.0)).norm() < 1e-6);
    }

    #[test]
    fn phi_vanishes_at_primitive_root() {
        for n in 1..=400 {
            let phi = cyclotomic_polynomial(n).unwrap();
            let z = Complex::from_polar(1.0, std::f64::consts::TAU / n as f64);
            let v = phi
                .coeffs()
                .iter()
                .rev()
                .fold(Complex::new(0.0, 0.0), |acc, &c| acc * z + c as f64);
            assert!(v.norm() < 1e-9, "n = {n}: |Phi_n(zeta)| = {}", v.norm());
        }
    }

    #[test]
    fn mismatched_orders() {
        let a = Z::one(4);
        let b = Z::one(6);
        assert_eq!(a.try_mul(&b).unwrap_err(), CycError::OrderMismatch(4, 6));
        assert!(a.try_add(&b).is_err());
    }

    #[test]
    fn rationals() {
        let half = RationalCyclotomic::new(Z::from_int(4, 2), 4).unwrap();
        let other = RationalCyclotomic::new(Z::from_int(4, 1), 2).unwrap();
        assert_eq!(half, other);
        assert_eq!(half.as_rational(), Some((1, 2)));
        assert_eq!(half.add(&other).as_integer(), Some(1));
        assert!(RationalCyclotomic::new(Z::one(4), 0).is_err());
        assert_eq!(half.to_string(), "1/2");
    }
}
