use num_complex::Complex;

use crate::characters::Character;
use crate::cyclotomic::Cyclotomic;
use crate::field::FieldTable;
use crate::float::CMatrix;
use crate::scalar::{Coeff, Real};
use crate::sums::jacobi;

use super::{w_vector, CharMatrix, SpecmatError};

#[derive(Debug, Clone)]
pub struct EigenPair<F> {
    pub vector: Vec<Complex<F>>,
    pub value: Complex<F>,
    /// `max_i |(M v - value v)_i|`
    pub residual: F,
}

/// Given `M v1 = lam1 v2` and `M v2 = lam2 v1`, returns the eigenpairs
/// `(v1 + s v2, t)` and `(v1 - s v2, -t)` with `s = sqrt(lam1 / lam2)` and
/// `t = sqrt(lam1 lam2)` on the principal branch. The residual of each pair
/// against `m` is measured, so a wrong branch shows up there.
pub fn combine_eigenpair<F: Real>(
    m: &CMatrix<F>,
    v1: &[Complex<F>],
    v2: &[Complex<F>],
    lam1: Complex<F>,
    lam2: Complex<F>,
) -> Result<[EigenPair<F>; 2], SpecmatError> {
    if lam2.norm() == F::zero() {
        return Err(SpecmatError::ZeroEigenvalue);
    }
    let tiny = F::epsilon() * F::from(1e3).unwrap();
    let same = |sign: F| {
        v1.iter()
            .zip(v2)
            .all(|(a, b)| (*a - *b * sign).norm() <= tiny)
    };
    if same(F::one()) || same(-F::one()) {
        return Err(SpecmatError::DependentVectors);
    }
    let s = (lam1 / lam2).sqrt();
    let t = (lam1 * lam2).sqrt();
    let pair = |sign: F| {
        let vector: Vec<_> = v1.iter().zip(v2).map(|(a, b)| *a + *b * s * sign).collect();
        let value = t * sign;
        let mv = m.apply(&vector);
        let residual = mv
            .iter()
            .zip(&vector)
            .map(|(x, v)| (*x - *v * value).norm())
            .fold(F::zero(), F::max);
        EigenPair {
            vector,
            value,
            residual,
        }
    };
    Ok([pair(F::one()), pair(-F::one())])
}

/// `M^2 w^l = J(conj(A)B, A omega^l) J(conj(A)B, A omega^{-l}) w^l`, exactly.
pub fn square_eigen_check<T: Coeff>(m: &CharMatrix<'_>, l: i64) -> (Cyclotomic<T>, bool) {
    let field = m.field();
    let w = w_vector::<T>(field, l);
    let lhs = m.apply(&m.apply(&w.components));
    let psi = m.a().conj().mul(m.b());
    let value = &jacobi::<T>(psi, m.a().mul(Character::new(field, l)))
        * &jacobi::<T>(psi, m.a().mul(Character::new(field, -l)));
    let holds = lhs
        .iter()
        .zip(&w.components)
        .all(|(x, wi)| *x == &value * wi);
    (value, holds)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PInverseCheck {
    pub pq_is_scaled_identity: bool,
    pub qp_is_scaled_identity: bool,
    /// Diagonal entry of `(q-1) P Q`, which should be `q - 1`.
    pub diagonal: i64,
}

impl PInverseCheck {
    pub fn holds(&self) -> bool {
        self.pq_is_scaled_identity && self.qp_is_scaled_identity && self.diagonal > 0
    }
}

/// `P_{ij} = omega^j(i)` and `(q-1) Q_{ij} = conj(omega^i(j))`, for
/// `i in F_q^x`, `1 <= j <= q-1`. Checks `P Q = Q P = I` after clearing the
/// denominator.
pub fn p_inverse_check(field: &FieldTable) -> PInverseCheck {
    let n = field.order() as usize;
    let logs: Vec<usize> = field
        .units()
        .map(|x| field.dlog(x).unwrap() as usize)
        .collect();
    // Column j of P (j = 1..=n) in position j-1; index l = j mod n.
    let char_index = |j: usize| (j + 1) % n;
    let mut pq_ok = true;
    let mut diagonal = 0;
    // (P Q)_{ik} = sum_j omega^j(i) conj(omega^j(k))
    for (ri, &li) in logs.iter().enumerate() {
        for (rk, &lk) in logs.iter().enumerate() {
            let mut counts = vec![0i64; n];
            for j in 0..n {
                let l = char_index(j);
                counts[(l * li + n * n - l * lk) % n] += 1;
            }
            let v = Cyclotomic::<i64>::from_counts(&counts);
            let expect = if ri == rk { n as i64 } else { 0 };
            if ri == rk && ri == 0 {
                diagonal = v.as_integer().unwrap_or(0);
            }
            pq_ok &= v.as_integer() == Some(expect);
        }
    }
    // (Q P)_{jm} = sum_{x in F_q^x} conj(omega^j(x)) omega^m(x)
    let mut qp_ok = true;
    for j in 0..n {
        for m in 0..n {
            let (lj, lm) = (char_index(j), char_index(m));
            let mut counts = vec![0i64; n];
            for &lx in &logs {
                counts[(lm * lx + n * n - lj * lx) % n] += 1;
            }
            let v = Cyclotomic::<i64>::from_counts(&counts);
            let expect = if j == m { n as i64 } else { 0 };
            qp_ok &= v.as_integer() == Some(expect);
        }
    }
    PInverseCheck {
        pq_is_scaled_identity: pq_ok,
        qp_is_scaled_identity: qp_ok,
        diagonal,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::float::FloatCharacters;
    use crate::specmat::{build_matrix, lemma21_check};

    #[test]
    fn two_by_two() {
        let c = |x: f64| Complex::new(x, 0.0);
        let m = CMatrix::from_rows(vec![vec![c(0.0), c(2.0)], vec![c(3.0), c(0.0)]]);
        // M e1 = 3 e2, M e2 = 2 e1
        let [p, n] =
            combine_eigenpair(&m, &[c(1.0), c(0.0)], &[c(0.0), c(1.0)], c(3.0), c(2.0)).unwrap();
        assert!((p.value - c(6f64.sqrt())).norm() < 1e-12);
        assert!((n.value + c(6f64.sqrt())).norm() < 1e-12);
        assert!(p.residual < 1e-12 && n.residual < 1e-12);
    }

    #[test]
    fn equal_scalings() {
        let c = |x: f64| Complex::new(x, 0.0);
        let m = CMatrix::from_rows(vec![vec![c(0.0), c(5.0)], vec![c(5.0), c(0.0)]]);
        let [p, n] =
            combine_eigenpair(&m, &[c(1.0), c(0.0)], &[c(0.0), c(1.0)], c(5.0), c(5.0)).unwrap();
        assert_eq!(p.vector, vec![c(1.0), c(1.0)]);
        assert_eq!(n.vector, vec![c(1.0), c(-1.0)]);
        assert!((p.value - c(5.0)).norm() < 1e-12);
    }

    #[test]
    fn guards() {
        let c = |x: f64| Complex::new(x, 0.0);
        let m = CMatrix::<f64>::identity(2);
        let v = [c(1.0), c(2.0)];
        assert!(matches!(
            combine_eigenpair(&m, &v, &[c(0.0), c(1.0)], c(1.0), c(0.0)),
            Err(SpecmatError::ZeroEigenvalue)
        ));
        assert!(matches!(
            combine_eigenpair(&m, &v, &v, c(1.0), c(1.0)),
            Err(SpecmatError::DependentVectors)
        ));
    }

    #[test]
    fn lemma_pairs_over_five() {
        let f = FieldTable::new(5, 1).unwrap();
        let m = build_matrix(&f, 2, 0);
        let fm = m.embed::<f64>();
        let fc = FloatCharacters::<f64>::new(&f);
        let lam1 = lemma21_check::<i64>(&m, 1).jacobi.embed_f64();
        let lam2 = lemma21_check::<i64>(&m, 3).jacobi.embed_f64();
        let pairs = combine_eigenpair(&fm, &fc.w_vector(1), &fc.w_vector(3), lam1, lam2).unwrap();
        for p in pairs {
            assert!(p.residual < 1e-9, "residual {}", p.residual);
        }
    }

    #[test]
    fn squares() {
        let f = FieldTable::new(5, 1).unwrap();
        let m = build_matrix(&f, 2, 0);
        for l in 0..4 {
            assert!(square_eigen_check::<i64>(&m, l).1);
        }
    }

    #[test]
    fn inverse_of_character_table() {
        for q in [5, 9] {
            let f = FieldTable::from_order(q).unwrap();
            let c = p_inverse_check(&f);
            assert!(c.holds());
            assert_eq!(c.diagonal, q as i64 - 1);
        }
    }
}
