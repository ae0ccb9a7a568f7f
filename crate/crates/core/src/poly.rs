//! Dense univariate polynomials, low degree first.

use std::fmt;

use crate::cyclotomic::Cyclotomic;
use crate::scalar::Coeff;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPoly<T> {
    coeffs: Vec<T>,
}

impl<T: Coeff> IntPoly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| T::int(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::new(vec![T::one()])
    }

    /// `x - c`
    pub fn linear(c: T) -> Self {
        Self::new(vec![-c, T::one()])
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add_c(&a.mul_c(b));
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Exact quotient by a monic divisor; `None` if the remainder is nonzero.
    pub fn div_exact_monic(&self, divisor: &Self) -> Option<Self> {
        let d = divisor.degree()?;
        assert!(divisor.coeffs[d].is_one(), "divisor must be monic");
        let Some(deg) = self.degree() else {
            return Some(Self::zero());
        };
        if deg < d {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![T::zero(); deg - d + 1];
        for k in (d..=deg).rev() {
            let c = rem[k].clone();
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k - d + j] = rem[k - d + j].sub_c(&c.mul_c(dc));
            }
            quot[k - d] = c;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::new(quot))
    }

    pub fn convert<U: Coeff>(&self) -> IntPoly<U> {
        IntPoly::new(
            self.coeffs
                .iter()
                .map(|c| U::from_i128(c.to_i128().expect("coefficient fits i128")).unwrap())
                .collect(),
        )
    }
}

impl<T: Coeff> fmt::Display for IntPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, self.coeffs.iter().map(|c| c.to_string()).collect(), "x")
    }
}

fn write_poly(f: &mut fmt::Formatter<'_>, coeffs: Vec<String>, var: &str) -> fmt::Result {
    let mut first = true;
    for (k, c) in coeffs.into_iter().enumerate().rev() {
        if c == "0" {
            continue;
        }
        let (neg, body) = match c.strip_prefix('-') {
            Some(rest) if !rest.contains(['+', '-']) => (true, rest.to_string()),
            _ => (false, c),
        };
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { '-' } else { '+' })?;
        }
        first = false;
        let body = if body.contains(['+', '-']) {
            format!("({body})")
        } else {
            body
        };
        if k == 0 {
            write!(f, "{body}")?;
            continue;
        }
        if body != "1" {
            write!(f, "{body}*")?;
        }
        if k == 1 {
            write!(f, "{var}")?;
        } else {
            write!(f, "{var}^{k}")?;
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

/// Polynomial with coefficients in `Z[zeta_n]`.
#[derive(Debug, Clone)]
pub struct CycPoly<T> {
    n: usize,
    coeffs: Vec<Cyclotomic<T>>,
}

impl<T: Coeff> CycPoly<T> {
    pub fn new(n: usize, mut coeffs: Vec<Cyclotomic<T>>) -> Self {
        assert!(coeffs.iter().all(|c| c.n() == n), "mixed cyclotomic orders");
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { n, coeffs }
    }

    pub fn one(n: usize) -> Self {
        Self::new(n, vec![Cyclotomic::one(n)])
    }

    /// `x - c`
    pub fn linear(c: &Cyclotomic<T>) -> Self {
        Self::new(c.n(), vec![-c, Cyclotomic::one(c.n())])
    }

    /// `x^2 - c`
    pub fn quadratic(c: &Cyclotomic<T>) -> Self {
        let n = c.n();
        Self::new(n, vec![-c, Cyclotomic::zero(n), Cyclotomic::one(n)])
    }

    pub fn from_int_poly(n: usize, p: &IntPoly<T>) -> Self {
        Self::new(
            n,
            p.coeffs()
                .iter()
                .map(|c| Cyclotomic::from_int(n, c.clone()))
                .collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[Cyclotomic<T>] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "mixed cyclotomic orders");
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::new(self.n, Vec::new());
        }
        let mut out = vec![Cyclotomic::zero(self.n); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        let out = out.into_iter().map(|c| c.reduced()).collect();
        Self::new(self.n, out)
    }

    /// Integer polynomial, if every coefficient is a rational integer.
    pub fn to_int_poly(&self) -> Option<IntPoly<T>> {
        self.coeffs
            .iter()
            .map(|c| c.as_integer())
            .collect::<Option<Vec<_>>>()
            .map(IntPoly::new)
    }
}

impl<T: Coeff> PartialEq for CycPoly<T> {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.coeffs.len() == other.coeffs.len()
            && self.coeffs.iter().zip(&other.coeffs).all(|(a, b)| a == b)
    }
}

impl<T: Coeff> fmt::Display for CycPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, self.coeffs.iter().map(|c| c.to_string()).collect(), "x")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_division() {
        let p = IntPoly::<i64>::from_i64(&[-1, 0, 0, 1]);
        let d = IntPoly::from_i64(&[-1, 1]);
        assert_eq!(
            p.div_exact_monic(&d).unwrap(),
            IntPoly::from_i64(&[1, 1, 1])
        );
        assert!(IntPoly::<i64>::from_i64(&[1, 0, 1])
            .div_exact_monic(&d)
            .is_none());
    }

    #[test]
    fn display() {
        let p = IntPoly::<i64>::from_i64(&[-2, -1, 2, 1]);
        assert_eq!(p.to_string(), "x^3 + 2*x^2 - x - 2");
        assert_eq!(IntPoly::<i64>::zero().to_string(), "0");
    }
}
