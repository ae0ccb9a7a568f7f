//! The character group of `F_q^x`, indexed relative to the field's generator.
//!
//! `omega^l(x) = zeta_{q-1}^{l * dlog x}` for `x != 0`, and every character,
//! the trivial one included, vanishes at `0`.

use std::fmt;

use crate::cyclotomic::Cyclotomic;
use crate::field::{FieldElement, FieldTable};
use crate::scalar::Coeff;

#[derive(Clone, Copy)]
pub struct Character<'f> {
    field: &'f FieldTable,
    l: u32,
}

impl fmt::Debug for Character<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "omega^{} on F_{}", self.l, self.field.q())
    }
}

impl PartialEq for Character<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.field, other.field) && self.l == other.l
    }
}

impl Eq for Character<'_> {}

impl<'f> Character<'f> {
    /// `omega^l`, with `l` taken mod `q - 1`.
    pub fn new(field: &'f FieldTable, l: i64) -> Self {
        Self {
            field,
            l: l.rem_euclid(field.order() as i64) as u32,
        }
    }

    pub fn trivial(field: &'f FieldTable) -> Self {
        Self::new(field, 0)
    }

    /// The quadratic character.
    pub fn legendre(field: &'f FieldTable) -> Self {
        Self::new(field, field.order() as i64 / 2)
    }

    /// Every character in index order `0..q-1`.
    pub fn all(field: &'f FieldTable) -> impl Iterator<Item = Character<'f>> {
        (0..field.order() as i64).map(move |l| Self::new(field, l))
    }

    pub fn field(&self) -> &'f FieldTable {
        self.field
    }

    pub fn index(&self) -> u32 {
        self.l
    }

    pub fn is_trivial(&self) -> bool {
        self.l == 0
    }

    pub fn mul(&self, other: Character<'f>) -> Self {
        Self::new(self.field, self.l as i64 + other.l as i64)
    }

    pub fn conj(&self) -> Self {
        Self::new(self.field, -(self.l as i64))
    }

    pub fn pow(&self, k: i64) -> Self {
        Self::new(self.field, self.l as i64 * k)
    }

    /// Exponent of `zeta_{q-1}` at `x`, `None` at zero.
    pub fn exponent(&self, x: FieldElement) -> Option<u32> {
        if x.is_zero() {
            return None;
        }
        let n = self.field.order() as u64;
        Some(((self.l as u64 * self.field.log_unchecked(x) as u64) % n) as u32)
    }

    pub fn value<T: Coeff>(&self, x: FieldElement) -> Cyclotomic<T> {
        let n = self.field.order() as usize;
        match self.exponent(x) {
            None => Cyclotomic::zero(n),
            Some(e) => Cyclotomic::root(n, e as i64),
        }
    }

    /// `chi(-1)`, which is `+1` or `-1` for every character.
    pub fn sign(&self) -> i64 {
        // dlog(-1) = (q-1)/2, so chi(-1) = zeta^{l (q-1)/2} = (-1)^l
        if self.l.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

/// `sum_{x in F_q} chi(x)`
pub fn sum_over_field<T: Coeff>(chi: Character<'_>) -> Cyclotomic<T> {
    let field = chi.field();
    let mut acc = Cyclotomic::zero(field.order() as usize);
    for x in field.units() {
        acc.add_term(&T::one(), chi.exponent(x).unwrap() as usize);
    }
    acc
}

/// `sum_chi chi(x)`. Zero at `x = 0` since every character vanishes there.
pub fn sum_over_characters<T: Coeff>(field: &FieldTable, x: FieldElement) -> Cyclotomic<T> {
    let mut acc = Cyclotomic::zero(field.order() as usize);
    for chi in Character::all(field) {
        if let Some(e) = chi.exponent(x) {
            acc.add_term(&T::one(), e as usize);
        }
    }
    acc
}

/// `f^(nu) = sum_{lambda in F_q} f(lambda) conj(nu)(lambda)`, indexed by the
/// character index of `nu`.
pub fn fourier_transform<T: Coeff>(field: &FieldTable, f: &[Cyclotomic<T>]) -> Vec<Cyclotomic<T>> {
    assert_eq!(f.len(), field.q() as usize, "f must be given on all of F_q");
    let n = field.order() as usize;
    Character::all(field)
        .map(|nu| {
            let nu_bar = nu.conj();
            let mut acc = Cyclotomic::zero(n);
            for x in field.units() {
                acc.add_rotated(&f[x.index() as usize], nu_bar.exponent(x).unwrap() as usize);
            }
            acc
        })
        .collect()
}

/// `(q-1) f(lambda) = sum_nu f^(nu) nu(lambda)` on `F_q^x`; returns the
/// right-hand side for every `lambda` (the value at `0` is always zero).
pub fn inverse_fourier_scaled<T: Coeff>(
    field: &FieldTable,
    transform: &[Cyclotomic<T>],
) -> Vec<Cyclotomic<T>> {
    let n = field.order() as usize;
    field
        .elements()
        .map(|x| {
            let mut acc = Cyclotomic::zero(n);
            for nu in Character::all(field) {
                if let Some(e) = nu.exponent(x) {
                    acc.add_rotated(&transform[nu.index() as usize], e as usize);
                }
            }
            acc
        })
        .collect()
}
