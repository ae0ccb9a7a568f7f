use crate::characters::Character;
use crate::field::FieldTable;
use crate::poly::IntPoly;
use crate::scalar::Coeff;

use super::{faddeev_leverrier_int, SpecmatError};

/// `M_{ij} = phi(1 - ij) phi(ij)` for `i, j` in `F_q \ {0, 1}`, canonical
/// order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrMatrix {
    q: u32,
    entries: Vec<i64>,
}

impl GrMatrix {
    pub fn dim(&self) -> usize {
        self.q as usize - 2
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.entries[r * self.dim() + c]
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn is_symmetric(&self) -> bool {
        let d = self.dim();
        (0..d).all(|r| (0..r).all(|c| self.get(r, c) == self.get(c, r)))
    }

    pub fn trace(&self) -> i64 {
        (0..self.dim()).map(|i| self.get(i, i)).sum()
    }

    pub fn charpoly<T: Coeff>(&self) -> IntPoly<T> {
        let entries: Vec<T> = self.entries.iter().map(|&e| T::int(e)).collect();
        faddeev_leverrier_int(self.dim(), &entries)
    }
}

pub fn gf_matrix(field: &FieldTable) -> Result<GrMatrix, SpecmatError> {
    if field.q() < 5 {
        return Err(SpecmatError::TooSmall(field.q()));
    }
    let phi = Character::legendre(field);
    let sign = |x| match phi.exponent(x) {
        None => 0,
        Some(0) => 1,
        Some(_) => -1,
    };
    let mut entries = Vec::new();
    for i in field.exceptional_free() {
        for j in field.exceptional_free() {
            let ij = field.mul(i, j);
            entries.push(sign(field.one_minus(ij)) * sign(ij));
        }
    }
    Ok(GrMatrix {
        q: field.q(),
        entries,
    })
}

/// `sum_{i in F_q \ {0,1}} phi(1 - i^2) phi(i^2)`
pub fn gf_trace_oracle(field: &FieldTable) -> i64 {
    let phi = Character::legendre(field);
    field
        .exceptional_free()
        .map(|i| {
            let sq = field.mul(i, i);
            let s = |x| match phi.exponent(x) {
                None => 0,
                Some(0) => 1,
                Some(_) => -1,
            };
            s(field.one_minus(sq)) * s(sq)
        })
        .sum()
}

/// `(x+1)(x-1)(x+2)(x^2-q)^{(q-5)/2}` when `phi(-1) = 1`, otherwise
/// `x(x^2-3)(x^2-q)^{(q-5)/2}`.
pub fn gf_formula<T: Coeff>(q: u32) -> IntPoly<T> {
    let quad = IntPoly::new(vec![T::int(-(q as i64)), T::zero(), T::one()]);
    let tail = quad.pow((q - 5) / 2);
    let head = if q % 4 == 1 {
        IntPoly::from_i64(&[1, 1])
            .mul(&IntPoly::from_i64(&[-1, 1]))
            .mul(&IntPoly::from_i64(&[2, 1]))
    } else {
        IntPoly::from_i64(&[0, 1]).mul(&IntPoly::from_i64(&[-3, 0, 1]))
    };
    head.mul(&tail)
}

#[derive(Debug, Clone)]
pub struct GfCheck<T> {
    pub charpoly: IntPoly<T>,
    pub formula: IntPoly<T>,
    pub symmetric: bool,
    pub trace_matches: bool,
}

impl<T> GfCheck<T>
where
    T: PartialEq,
{
    pub fn holds(&self) -> bool {
        self.charpoly == self.formula && self.symmetric && self.trace_matches
    }
}

/// Roots of the closed form, with multiplicity.
pub fn gf_formula_roots(q: u32) -> Vec<f64> {
    let mut roots = if q % 4 == 1 {
        vec![-1.0, 1.0, -2.0]
    } else {
        vec![0.0, 3f64.sqrt(), -(3f64.sqrt())]
    };
    let s = (q as f64).sqrt();
    for _ in 0..(q - 5) / 2 {
        roots.push(s);
        roots.push(-s);
    }
    roots.sort_by(f64::total_cmp);
    roots
}

/// Eigenvalues of the symmetric integer matrix, ascending.
pub fn gf_eigen_float(m: &GrMatrix) -> Vec<f64> {
    let d = m.dim();
    let dm = nalgebra::DMatrix::from_fn(d, d, |i, j| m.get(i, j) as f64);
    let mut eig: Vec<f64> = dm.symmetric_eigenvalues().iter().copied().collect();
    eig.sort_by(f64::total_cmp);
    eig
}

pub fn gf_verify<T: Coeff>(field: &FieldTable) -> Result<GfCheck<T>, SpecmatError> {
    let m = gf_matrix(field)?;
    let q = field.q();
    // Principal-minor sums of a {-1,0,1} matrix of size d stay below
    // 2^d * d^{d/2}.
    let d = m.dim() as f64;
    if !T::holds_bits(d + d / 2.0 * d.log2() + 2.0) {
        return Err(SpecmatError::Growth {
            what: "quadratic character matrix",
            q,
        });
    }
    Ok(GfCheck {
        charpoly: m.charpoly(),
        formula: gf_formula(q),
        symmetric: m.is_symmetric(),
        trace_matches: m.trace() == gf_trace_oracle(field),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms() {
        assert_eq!(gf_formula::<i64>(5).coeffs(), &[-2, -1, 2, 1]);
        // x (x^2 - 3)(x^2 - 7) = x^5 - 10 x^3 + 21 x
        assert_eq!(gf_formula::<i64>(7).coeffs(), &[0, 21, 0, -10, 0, 1]);
        assert_eq!(gf_formula::<i64>(13).degree(), Some(11));
    }

    #[test]
    fn five_and_seven() {
        for q in [5, 7] {
            let f = FieldTable::new(q, 1).unwrap();
            let check = gf_verify::<i128>(&f).unwrap();
            assert!(check.holds(), "q = {q}: {}", check.charpoly);
        }
    }

    #[test]
    fn float_spectrum() {
        for q in [5, 7, 9, 11, 13] {
            let f = FieldTable::from_order(q).unwrap();
            let eig = gf_eigen_float(&gf_matrix(&f).unwrap());
            let roots = gf_formula_roots(q as u32);
            assert_eq!(eig.len(), roots.len());
            assert!(
                eig.iter().zip(&roots).all(|(a, b)| (a - b).abs() < 1e-9),
                "q = {q}"
            );
        }
    }

    #[test]
    fn too_small() {
        let f = FieldTable::new(3, 1).unwrap();
        assert_eq!(gf_matrix(&f), Err(SpecmatError::TooSmall(3)));
    }
}
