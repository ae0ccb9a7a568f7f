use num_complex::Complex;

use crate::characters::Character;
use crate::cyclotomic::Cyclotomic;
use crate::field::{FieldElement, FieldTable};
use crate::float::CMatrix;
use crate::scalar::{Coeff, Real};
use crate::sums::jacobi;

const ZERO_ENTRY: u32 = u32::MAX;

/// `(M_q)_{ij} = A(ij) conj(A)B(1 - ij)`, stored as root-of-unity exponents.
#[derive(Debug, Clone)]
pub struct CharMatrix<'f> {
    field: &'f FieldTable,
    a: u32,
    b: u32,
    entries: Vec<u32>,
}

pub fn build_matrix(field: &FieldTable, a: i64, b: i64) -> CharMatrix<'_> {
    let ca = Character::new(field, a);
    let cb = Character::new(field, b);
    let weight = ca.conj().mul(cb);
    let dim = field.order() as usize;
    let n = field.order();
    let mut entries = Vec::with_capacity(dim * dim);
    for i in field.units() {
        for j in field.units() {
            let ij = field.mul(i, j);
            let e = match (ca.exponent(ij), weight.exponent(field.one_minus(ij))) {
                (Some(x), Some(y)) => (x + y) % n,
                _ => ZERO_ENTRY,
            };
            entries.push(e);
        }
    }
    CharMatrix {
        field,
        a: ca.index(),
        b: cb.index(),
        entries,
    }
}

impl<'f> CharMatrix<'f> {
    pub fn field(&self) -> &'f FieldTable {
        self.field
    }

    pub fn a(&self) -> Character<'f> {
        Character::new(self.field, self.a as i64)
    }

    pub fn b(&self) -> Character<'f> {
        Character::new(self.field, self.b as i64)
    }

    pub fn dim(&self) -> usize {
        self.field.order() as usize
    }

    /// Exponent of the entry at matrix position `(r, c)`, `None` for zero.
    pub fn exponent(&self, r: usize, c: usize) -> Option<u32> {
        match self.entries[r * self.dim() + c] {
            ZERO_ENTRY => None,
            e => Some(e),
        }
    }

    /// Entry at the field elements `(i, j)`, both nonzero.
    pub fn at(&self, i: FieldElement, j: FieldElement) -> Option<u32> {
        self.exponent(i.index() as usize - 1, j.index() as usize - 1)
    }

    pub fn entry<T: Coeff>(&self, r: usize, c: usize) -> Cyclotomic<T> {
        let n = self.field.order() as usize;
        match self.exponent(r, c) {
            None => Cyclotomic::zero(n),
            Some(e) => Cyclotomic::root(n, e as i64),
        }
    }

    /// Exponent rows, `None` for zero entries; the matrix file payload.
    pub fn exponent_rows(&self) -> Vec<Vec<Option<u32>>> {
        let d = self.dim();
        (0..d)
            .map(|r| (0..d).map(|c| self.exponent(r, c)).collect())
            .collect()
    }

    /// Exact matrix-vector product.
    pub fn apply<T: Coeff>(&self, v: &[Cyclotomic<T>]) -> Vec<Cyclotomic<T>> {
        let d = self.dim();
        let n = self.field.order() as usize;
        assert_eq!(v.len(), d);
        (0..d)
            .map(|r| {
                let mut acc = Cyclotomic::zero(n);
                for (c, vc) in v.iter().enumerate() {
                    if let Some(e) = self.exponent(r, c) {
                        acc.add_rotated(vc, e as usize);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn embed<F: Real>(&self) -> CMatrix<F> {
        let d = self.dim();
        let roots = crate::float::roots_of_unity::<F>(self.field.order() as usize);
        let mut m = CMatrix::zeros(d);
        for r in 0..d {
            for c in 0..d {
                if let Some(e) = self.exponent(r, c) {
                    m[(r, c)] = roots[e as usize];
                }
            }
        }
        m
    }

    /// Float `M w^l`, computed from exponents without materialising `M`.
    pub fn apply_w_float<F: Real>(&self, roots: &[Complex<F>], l: i64) -> Vec<Complex<F>> {
        let d = self.dim();
        let n = self.field.order() as usize;
        let w = Character::new(self.field, l);
        let w_exp: Vec<usize> = self
            .field
            .units()
            .map(|j| w.exponent(j).unwrap() as usize)
            .collect();
        (0..d)
            .map(|r| {
                let row = &self.entries[r * d..(r + 1) * d];
                let mut acc = Complex::new(F::zero(), F::zero());
                for (&e, &we) in row.iter().zip(&w_exp) {
                    if e != ZERO_ENTRY {
                        let k = e as usize + we;
                        acc = acc + roots[if k >= n { k - n } else { k }];
                    }
                }
                acc
            })
            .collect()
    }
}

/// `w^l_i = omega^l(i)` for `i` in `F_q^x`.
#[derive(Debug, Clone)]
pub struct WVector<T> {
    pub l: u32,
    pub components: Vec<Cyclotomic<T>>,
}

pub fn w_vector<T: Coeff>(field: &FieldTable, l: i64) -> WVector<T> {
    let chi = Character::new(field, l);
    WVector {
        l: chi.index(),
        components: field.units().map(|i| chi.value(i)).collect(),
    }
}

#[derive(Debug, Clone)]
pub struct Lemma21Check<T> {
    pub l: u32,
    pub jacobi: Cyclotomic<T>,
    pub lhs: Vec<Cyclotomic<T>>,
    pub rhs: Vec<Cyclotomic<T>>,
    pub holds: bool,
}

/// `M w^l = J(conj(A)B, A omega^l) w^{q-1-l}`, componentwise and exactly.
pub fn lemma21_check<T: Coeff>(m: &CharMatrix<'_>, l: i64) -> Lemma21Check<T> {
    let field = m.field();
    let w = w_vector::<T>(field, l);
    let lhs = m.apply(&w.components);
    let psi = m.a().conj().mul(m.b());
    let j = jacobi::<T>(psi, m.a().mul(Character::new(field, l)));
    let partner = w_vector::<T>(field, field.order() as i64 - l);
    let rhs: Vec<_> = partner.components.iter().map(|c| &j * c).collect();
    let holds = lhs.iter().zip(&rhs).all(|(x, y)| x == y);
    Lemma21Check {
        l: w.l,
        jacobi: j,
        lhs,
        rhs,
        holds,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type Z = Cyclotomic<i64>;

    #[test]
    fn zero_pattern() {
        let f = FieldTable::new(11, 1).unwrap();
        for (a, b) in [(0, 0), (3, 7), (5, 5)] {
            let m = build_matrix(&f, a, b);
            for i in f.units() {
                for j in f.units() {
                    let is_inverse = f.mul(i, j) == FieldElement::ONE;
                    assert_eq!(m.at(i, j).is_none(), is_inverse);
                }
            }
        }
        let eps = build_matrix(&f, 0, 0);
        for r in 0..10 {
            for c in 0..10 {
                assert!(matches!(eps.exponent(r, c), None | Some(0)));
            }
        }
    }

    #[test]
    fn row_of_one_over_five() {
        let f = FieldTable::new(5, 1).unwrap();
        let m = build_matrix(&f, 2, 0);
        let row: Vec<_> = (0..4).map(|c| m.entry::<i64>(0, c).as_integer()).collect();
        assert_eq!(row, vec![Some(0), Some(-1), Some(1), Some(-1)]);
    }

    #[test]
    fn w_vectors() {
        let f = FieldTable::new(5, 1).unwrap();
        let w1 = w_vector::<i64>(&f, 1);
        let expect = [0, 1, 3, 2].map(|e| Z::root(4, e));
        assert_eq!(w1.components, expect);
        let ones = w_vector::<i64>(&f, 4);
        assert_eq!(ones.l, 0);
        assert!(ones.components.iter().all(|c| c.as_integer() == Some(1)));
        let phi = w_vector::<i64>(&f, 2);
        assert!(phi
            .components
            .iter()
            .all(|c| matches!(c.as_integer(), Some(1 | -1))));
    }

    #[test]
    fn lemma_over_five() {
        let f = FieldTable::new(5, 1).unwrap();
        let m = build_matrix(&f, 2, 0);
        for l in 1..=4 {
            assert!(lemma21_check::<i64>(&m, l).holds, "l = {l}");
        }
    }

    #[test]
    fn lemma_when_weight_trivial() {
        let f = FieldTable::new(7, 1).unwrap();
        for a in 1..6 {
            let m = build_matrix(&f, a, a);
            for l in 1..=6i64 {
                let check = lemma21_check::<i64>(&m, l);
                assert!(check.holds);
                if (a + l) % 6 != 0 {
                    assert_eq!(check.jacobi.as_integer(), Some(-1));
                }
            }
        }
    }

    #[test]
    fn float_apply_matches_exact() {
        let f = FieldTable::new(3, 2).unwrap();
        let m = build_matrix(&f, 3, 5);
        let roots = crate::float::roots_of_unity::<f64>(8);
        for l in 0..8 {
            let exact = m.apply(&w_vector::<i64>(&f, l).components);
            let float = m.apply_w_float(&roots, l);
            for (e, x) in exact.iter().zip(&float) {
                assert!((e.embed_f64() - x).norm() < 1e-12);
            }
        }
    }
}
