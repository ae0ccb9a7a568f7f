//! The character matrices `M_q` and the quadratic character matrix
//! `phi(1 - ij) phi(ij)`, with exact and floating-point verification of
//! their spectra and powers.
//!
//! `M_q` is indexed by `F_q^x` in canonical element order: row `r` belongs
//! to the element with index `r + 1`.
//!
//! Index convention for `w^l`: internally `l` is taken mod `q - 1`, so
//! `w^{q-1}` and `w^0` both mean the all-ones vector.

mod charpoly;
mod dense;
mod eigen;
mod gf;
mod matrix;
mod power;

use thiserror::Error;

pub use charpoly::{
    charpoly_direct_exact, charpoly_direct_float, charpoly_formula, eigenvalue_formula,
    faddeev_leverrier, faddeev_leverrier_int, match_multisets, thm1_verify, CharpolyFormula,
    MultisetMatch, Thm1Check, Thm1Variant, EXACT_CHARPOLY_CAP, FLOAT_EIGEN_CAP,
};
pub use dense::CycMatrix;
pub use eigen::{combine_eigenpair, p_inverse_check, square_eigen_check, EigenPair, PInverseCheck};
pub use gf::{
    gf_eigen_float, gf_formula, gf_formula_roots, gf_matrix, gf_trace_oracle, gf_verify, GfCheck,
    GrMatrix,
};
pub use matrix::{build_matrix, lemma21_check, w_vector, CharMatrix, Lemma21Check, WVector};
pub use power::{
    matrix_power, matrix_power_eigenbasis, thm2_rhs, thm2_verify, Thm2Reading, Thm2Report,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecmatError {
    #[error("q = {q} exceeds the {what} cap {cap}")]
    Cap {
        what: &'static str,
        q: u32,
        cap: u32,
    },
    #[error("coefficient growth for {what} at q = {q} exceeds the coefficient type")]
    Growth { what: &'static str, q: u32 },
    #[error("exponent must be at least 1")]
    ZeroPower,
    #[error("the paired eigenvalue must be nonzero")]
    ZeroEigenvalue,
    #[error("eigenvectors must satisfy v1 != +-v2")]
    DependentVectors,
    #[error("dense eigensolver failed")]
    Solver,
    #[error("q = {0} is too small for the quadratic character matrix")]
    TooSmall(u32),
    #[error(transparent)]
    Cyc(#[from] crate::cyclotomic::CycError),
    #[error(transparent)]
    Hyp(#[from] crate::hypergeometric::HypError),
}
