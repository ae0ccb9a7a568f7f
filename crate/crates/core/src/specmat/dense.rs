use crate::cyclotomic::Cyclotomic;
use crate::scalar::Coeff;

use super::CharMatrix;

/// Dense square matrix over `Z[zeta_n]`.
#[derive(Debug, Clone)]
pub struct CycMatrix<T> {
    dim: usize,
    n: usize,
    entries: Vec<Cyclotomic<T>>,
}

impl<T: Coeff> CycMatrix<T> {
    pub fn zeros(dim: usize, n: usize) -> Self {
        Self {
            dim,
            n,
            entries: vec![Cyclotomic::zero(n); dim * dim],
        }
    }

    pub fn identity(dim: usize, n: usize) -> Self {
        let mut m = Self::zeros(dim, n);
        for i in 0..dim {
            m.entries[i * dim + i] = Cyclotomic::one(n);
        }
        m
    }

    pub fn from_rows(n: usize, rows: Vec<Vec<Cyclotomic<T>>>) -> Self {
        let dim = rows.len();
        assert!(rows.iter().all(|r| r.len() == dim), "matrix must be square");
        let entries: Vec<_> = rows.into_iter().flatten().collect();
        assert!(
            entries.iter().all(|e| e.n() == n),
            "mixed cyclotomic orders"
        );
        Self { dim, n, entries }
    }

    pub fn from_char_matrix(m: &CharMatrix<'_>) -> Self {
        let dim = m.dim();
        let n = m.field().order() as usize;
        let entries = (0..dim * dim).map(|k| m.entry(k / dim, k % dim)).collect();
        Self { dim, n, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Cyclotomic<T> {
        &self.entries[i * self.dim + j]
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        assert_eq!(self.n, other.n);
        let d = self.dim;
        // Monomial entries (roots of unity times integers) multiply by rotation.
        let left: Vec<Option<(T, usize)>> = self.entries.iter().map(|e| e.as_monomial()).collect();
        let mut out = Self::zeros(d, self.n);
        for i in 0..d {
            for k in 0..d {
                let a = &self.entries[i * d + k];
                let mono = &left[i * d + k];
                if mono.is_none() && a.raw().iter().all(|c| c.is_zero()) {
                    continue;
                }
                for j in 0..d {
                    let b = &other.entries[k * d + j];
                    let slot = &mut out.entries[i * d + j];
                    match mono {
                        Some((c, e)) if c.is_one() => slot.add_rotated(b, *e),
                        Some((c, e)) => slot.add_rotated(&b.scale(c), *e),
                        None => *slot = &*slot + &(a * b),
                    }
                }
            }
        }
        out.reduce();
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        assert!(k >= 1);
        let mut result: Option<Self> = None;
        let mut base = self.clone();
        let mut e = k;
        loop {
            if e & 1 == 1 {
                result = Some(match result {
                    None => base.clone(),
                    Some(r) => r.mul(&base),
                });
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            base = base.mul(&base);
        }
        result.unwrap()
    }

    pub fn trace(&self) -> Cyclotomic<T> {
        let mut acc = Cyclotomic::zero(self.n);
        for i in 0..self.dim {
            acc = &acc + &self.entries[i * self.dim + i];
        }
        acc
    }

    pub fn add_scalar_diagonal(&mut self, c: &Cyclotomic<T>) {
        for i in 0..self.dim {
            let idx = i * self.dim + i;
            self.entries[idx] = &self.entries[idx] + c;
        }
    }

    /// Replaces every entry by its canonical form.
    pub fn reduce(&mut self) {
        for e in &mut self.entries {
            *e = e.reduced();
        }
    }
}

impl<T: Coeff> PartialEq for CycMatrix<T> {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim
            && self.n == other.n
            && self.entries.iter().zip(&other.entries).all(|(a, b)| a == b)
    }
}
