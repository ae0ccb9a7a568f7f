//! Floating-point backend.
//!
//! Every routine here evaluates directly from the definitions with complex
//! floats, independently of the exact `Z[zeta]` path, so the two backends can
//! cross-check each other.

use num_complex::Complex;

use crate::characters::Character;
use crate::field::{FieldElement, FieldTable};
use crate::hypergeometric::HypParams;
use crate::scalar::Real;

/// `zeta_n^e` for `e` in `0..n`.
pub fn roots_of_unity<F: Real>(n: usize) -> Vec<Complex<F>> {
    let nf = F::from(n).unwrap();
    (0..n)
        .map(|e| Complex::from_polar(F::one(), F::TAU() * F::from(e).unwrap() / nf))
        .collect()
}

/// Character values as complex floats.
pub struct FloatCharacters<'f, F> {
    field: &'f FieldTable,
    roots: Vec<Complex<F>>,
}

impl<'f, F: Real> FloatCharacters<'f, F> {
    pub fn new(field: &'f FieldTable) -> Self {
        Self {
            field,
            roots: roots_of_unity(field.order() as usize),
        }
    }

    pub fn field(&self) -> &'f FieldTable {
        self.field
    }

    pub fn value(&self, l: i64, x: FieldElement) -> Complex<F> {
        match Character::new(self.field, l).exponent(x) {
            None => Complex::new(F::zero(), F::zero()),
            Some(e) => self.roots[e as usize],
        }
    }

    pub fn root(&self, e: usize) -> Complex<F> {
        self.roots[e % self.roots.len()]
    }

    pub fn jacobi(&self, a: i64, b: i64) -> Complex<F> {
        self.field
            .elements()
            .map(|x| self.value(a, x) * self.value(b, self.field.one_minus(x)))
            .fold(Complex::new(F::zero(), F::zero()), |acc, t| acc + t)
    }

    pub fn binom(&self, a: i64, b: i64) -> Complex<F> {
        let sign = self.value(b, self.field.neg_one());
        sign * self.jacobi(a, -b) / F::from(self.field.q()).unwrap()
    }

    pub fn hyp(&self, params: &HypParams, x: FieldElement) -> Complex<F> {
        let q = F::from(self.field.q()).unwrap();
        let mut sum = Complex::new(F::zero(), F::zero());
        for chi in 0..self.field.order() as i64 {
            let mut term = self.binom(params.top[0] + chi, chi);
            for (a, b) in params.top[1..].iter().zip(&params.bottom) {
                term = term * self.binom(a + chi, b + chi);
            }
            sum = sum + term * self.value(chi, x);
        }
        sum * q / (q - F::one())
    }

    /// Right-hand side of the Euler transform, from float `nF_{n-1}` values.
    pub fn euler_rhs(&self, params: &HypParams, x: FieldElement) -> Complex<F> {
        let k = params.top.len();
        let (a, b) = (params.top[k - 1], params.bottom[k - 2]);
        let inner = HypParams {
            top: params.top[..k - 1].to_vec(),
            bottom: params.bottom[..k - 2].to_vec(),
        };
        let f = self.field;
        let mut sum = Complex::new(F::zero(), F::zero());
        for y in f.elements() {
            sum = sum
                + self.hyp(&inner, f.mul(x, y))
                    * self.value(a, y)
                    * self.value(b - a, f.one_minus(y));
        }
        sum * self.value(a + b, f.neg_one()) / F::from(f.q()).unwrap()
    }

    /// `A(ij) conj(A)B(1 - ij)` over `F_q^x`.
    pub fn char_matrix(&self, a: i64, b: i64) -> CMatrix<F> {
        let f = self.field;
        let dim = f.order() as usize;
        let mut m = CMatrix::zeros(dim);
        for (r, i) in f.units().enumerate() {
            for (c, j) in f.units().enumerate() {
                let ij = f.mul(i, j);
                m[(r, c)] = self.value(a, ij) * self.value(b - a, f.one_minus(ij));
            }
        }
        m
    }

    /// `w^l` as a float vector.
    pub fn w_vector(&self, l: i64) -> Vec<Complex<F>> {
        self.field.units().map(|i| self.value(l, i)).collect()
    }
}

/// Dense square complex matrix, row major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix<F> {
    dim: usize,
    data: Vec<Complex<F>>,
}

impl<F: Real> CMatrix<F> {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Complex::new(F::zero(), F::zero()); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex::new(F::one(), F::zero());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Complex<F>>>) -> Self {
        let dim = rows.len();
        assert!(rows.iter().all(|r| r.len() == dim), "matrix must be square");
        Self {
            dim,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn row(&self, i: usize) -> &[Complex<F>] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn mul(&self, other: &Self) -> Self {
        let d = self.dim;
        let mut out = Self::zeros(d);
        for i in 0..d {
            for k in 0..d {
                let a = self.data[i * d + k];
                if a.re == F::zero() && a.im == F::zero() {
                    continue;
                }
                for j in 0..d {
                    out.data[i * d + j] = out.data[i * d + j] + a * other.data[k * d + j];
                }
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::identity(self.dim);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    pub fn apply(&self, v: &[Complex<F>]) -> Vec<Complex<F>> {
        (0..self.dim)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(Complex::new(F::zero(), F::zero()), |acc, (a, b)| {
                        acc + *a * *b
                    })
            })
            .collect()
    }

    pub fn trace(&self) -> Complex<F> {
        (0..self.dim).fold(Complex::new(F::zero(), F::zero()), |acc, i| {
            acc + self.data[i * self.dim + i]
        })
    }

    /// Characteristic polynomial coefficients, low degree first, by the
    /// Faddeev-LeVerrier recurrence.
    pub fn charpoly(&self) -> Vec<Complex<F>> {
        let d = self.dim;
        let mut coeffs = vec![Complex::new(F::zero(), F::zero()); d + 1];
        coeffs[d] = Complex::new(F::one(), F::zero());
        let mut aux = Self::identity(d);
        for k in 1..=d {
            let am = self.mul(&aux);
            let c = -am.trace() / F::from(k).unwrap();
            coeffs[d - k] = c;
            aux = am;
            for i in 0..d {
                aux.data[i * d + i] = aux.data[i * d + i] + c;
            }
        }
        coeffs
    }
}

impl<F> std::ops::Index<(usize, usize)> for CMatrix<F> {
    type Output = Complex<F>;
    fn index(&self, (i, j): (usize, usize)) -> &Complex<F> {
        &self.data[i * self.dim + j]
    }
}

impl<F> std::ops::IndexMut<(usize, usize)> for CMatrix<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<F> {
        &mut self.data[i * self.dim + j]
    }
}

/// Largest `|a_i - b_i|`.
pub fn max_distance<F: Real>(a: &[Complex<F>], b: &[Complex<F>]) -> F {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (*x - *y).norm())
        .fold(F::zero(), F::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn charpoly_of_small_matrix() {
        let c = |re: f64| Complex::new(re, 0.0);
        let m = CMatrix::from_rows(vec![vec![c(0.0), c(2.0)], vec![c(3.0), c(0.0)]]);
        let p = m.charpoly();
        assert!((p[0] - c(-6.0)).norm() < 1e-12);
        assert!(p[1].norm() < 1e-12);
        assert!((p[2] - c(1.0)).norm() < 1e-12);
    }

    #[test]
    fn float_jacobi_modulus() {
        let f = FieldTable::new(7, 1).unwrap();
        let fc = FloatCharacters::<f64>::new(&f);
        let j = fc.jacobi(1, 2);
        assert!((j.norm_sqr() - 7.0).abs() < 1e-9);
        let j32 = FloatCharacters::<f32>::new(&f).jacobi(1, 2);
        assert!((j32.norm_sqr() - 7.0).abs() < 1e-4);
    }

    #[test]
    fn power_by_squaring() {
        let f = FieldTable::new(5, 1).unwrap();
        let m = FloatCharacters::<f64>::new(&f).char_matrix(2, 0);
        let direct = m.mul(&m).mul(&m).mul(&m).mul(&m);
        let fast = m.pow(5);
        for i in 0..4 {
            assert!(max_distance(direct.row(i), fast.row(i)) < 1e-9);
        }
    }
}
