//! Jacobi sums and Greene's binomial coefficients.

use thiserror::Error;

use crate::characters::Character;
use crate::cyclotomic::{Cyclotomic, RationalCyclotomic};
use crate::field::{FieldElement, FieldTable};
use crate::scalar::Coeff;

/// Largest field for which the full `(q-1)^2` table is materialised.
pub const JACOBI_TABLE_CAP: u32 = 128;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SumsError {
    #[error("Jacobi table for q = {q} exceeds the cap {cap}")]
    TableTooLarge { q: u32, cap: u32 },
    #[error("Jacobi table has wrong shape: {0}")]
    Shape(String),
}

/// `(dlog x, dlog(1 - x))` for every `x` outside `{0, 1}`.
fn log_pairs(field: &FieldTable) -> impl Iterator<Item = (u64, u64)> + '_ {
    field.exceptional_free().map(move |x| {
        (
            field.log_unchecked(x) as u64,
            field.log_unchecked(field.one_minus(x)) as u64,
        )
    })
}

/// `J(A, B) = sum_{x in F_q} A(x) B(1 - x)`
pub fn jacobi<T: Coeff>(a: Character<'_>, b: Character<'_>) -> Cyclotomic<T> {
    let field = a.field();
    let n = field.order() as u64;
    let (la, lb) = (a.index() as u64, b.index() as u64);
    let mut counts = vec![0i64; n as usize];
    for (lx, l1x) in log_pairs(field) {
        counts[((la * lx + lb * l1x) % n) as usize] += 1;
    }
    Cyclotomic::from_counts(&counts)
}

/// `J(psi, chi omega^l)` for every `l` in `0..q-1`, in one pass over the
/// field.
pub fn jacobi_batch<T: Coeff>(psi: Character<'_>, chi: Character<'_>) -> Vec<Cyclotomic<T>> {
    let field = psi.field();
    let n = field.order() as usize;
    let (lp, lc) = (psi.index() as usize, chi.index() as usize);
    let mut counts = vec![0i64; n * n];
    for (lx, l1x) in log_pairs(field) {
        let (lx, l1x) = (lx as usize, l1x as usize);
        let mut e = (lp * lx + lc * l1x) % n;
        for row in counts.chunks_exact_mut(n) {
            row[e] += 1;
            e += l1x;
            if e >= n {
                e -= n;
            }
        }
    }
    counts
        .chunks_exact(n)
        .map(Cyclotomic::from_counts)
        .collect()
}

/// Greene's binomial coefficient `B(-1)/q * J(A, conj B)`.
pub fn binom<T: Coeff>(a: Character<'_>, b: Character<'_>) -> RationalCyclotomic<T> {
    let j = jacobi::<T>(a, b.conj()).scale(&T::int(b.sign()));
    RationalCyclotomic::new(j, T::int(a.field().q() as i64)).unwrap()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BinomialIdentities {
    /// `(A over B) = (A over A conj(B))`
    pub complement: bool,
    /// `(A over B) = B(-1) (B conj(A) over B)`
    pub reflection: bool,
    /// `(A over B) = conj(AB)(-1) (conj(B) over conj(A))`
    pub inversion: bool,
}

impl BinomialIdentities {
    pub fn all(&self) -> bool {
        self.complement && self.reflection && self.inversion
    }
}

pub fn binomial_identity_check<T: Coeff>(a: Character<'_>, b: Character<'_>) -> BinomialIdentities {
    let lhs = binom::<T>(a, b);
    let b_sign = T::int(b.sign());
    let ab_sign = T::int(a.mul(b).conj().sign());
    BinomialIdentities {
        complement: lhs == binom(a, a.mul(b.conj())),
        reflection: lhs == binom(b.mul(a.conj()), b).scale(&b_sign),
        inversion: lhs == binom(b.conj(), a.conj()).scale(&ab_sign),
    }
}

/// Every `J(omega^a, omega^b)` of one field, canonically reduced.
#[derive(Debug, Clone)]
pub struct JacobiTable<T> {
    q: u32,
    n: usize,
    entries: Vec<Cyclotomic<T>>,
}

impl<T: Coeff> JacobiTable<T> {
    pub fn new(field: &FieldTable) -> Result<Self, SumsError> {
        Self::check_cap(field)?;
        let n = field.order() as usize;
        let mut entries = Vec::with_capacity(n * n);
        let eps = Character::trivial(field);
        for a in Character::all(field) {
            entries.extend(jacobi_batch::<T>(a, eps).into_iter().map(|j| j.reduced()));
        }
        Ok(Self {
            q: field.q(),
            n,
            entries,
        })
    }

    fn check_cap(field: &FieldTable) -> Result<(), SumsError> {
        if field.q() > JACOBI_TABLE_CAP {
            return Err(SumsError::TableTooLarge {
                q: field.q(),
                cap: JACOBI_TABLE_CAP,
            });
        }
        Ok(())
    }

    /// From canonical coefficient vectors in row-major `(a, b)` order.
    pub fn from_canonical(field: &FieldTable, rows: Vec<Vec<T>>) -> Result<Self, SumsError> {
        Self::check_cap(field)?;
        let n = field.order() as usize;
        let phi = crate::cyclotomic::totient(n);
        if rows.len() != n * n {
            return Err(SumsError::Shape(format!(
                "expected {} entries, found {}",
                n * n,
                rows.len()
            )));
        }
        if let Some(bad) = rows.iter().position(|r| r.len() != phi) {
            return Err(SumsError::Shape(format!(
                "entry {bad} does not have {phi} coefficients"
            )));
        }
        let entries = rows
            .into_iter()
            .map(|r| Cyclotomic::from_coeffs(n, r))
            .collect();
        Ok(Self {
            q: field.q(),
            n,
            entries,
        })
    }

    pub fn canonical_rows(&self) -> Vec<Vec<T>> {
        self.entries.iter().map(|e| e.canonical()).collect()
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// `J(omega^a, omega^b)`, indices taken mod `q - 1`.
    pub fn get(&self, a: i64, b: i64) -> &Cyclotomic<T> {
        let n = self.n as i64;
        let (a, b) = (a.rem_euclid(n) as usize, b.rem_euclid(n) as usize);
        &self.entries[a * self.n + b]
    }

    pub fn jacobi(&self, a: Character<'_>, b: Character<'_>) -> &Cyclotomic<T> {
        self.get(a.index() as i64, b.index() as i64)
    }

    /// `B(-1) J(A, conj B)`, the numerator of `(A over B)` over `q`.
    pub fn binom_numerator(&self, a: i64, b: i64) -> Cyclotomic<T> {
        let j = self.get(a, -b);
        if b.rem_euclid(2) == 0 {
            j.clone()
        } else {
            -j
        }
    }

    pub fn binom(&self, a: i64, b: i64) -> RationalCyclotomic<T> {
        RationalCyclotomic::new(self.binom_numerator(a, b), T::int(self.q as i64)).unwrap()
    }
}

/// Terms of the defining sum, for callers that want the summands.
pub fn jacobi_terms<'f, T: Coeff>(
    a: Character<'f>,
    b: Character<'f>,
) -> impl Iterator<Item = (FieldElement, Cyclotomic<T>)> + 'f {
    let field = a.field();
    field
        .elements()
        .map(move |x| (x, &a.value::<T>(x) * &b.value::<T>(field.one_minus(x))))
}
