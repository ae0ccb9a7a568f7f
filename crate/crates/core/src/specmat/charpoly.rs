use nalgebra::DMatrix;
use num_complex::Complex;

use crate::characters::Character;
use crate::cyclotomic::Cyclotomic;
use crate::poly::{CycPoly, IntPoly};
use crate::scalar::Coeff;
use crate::sums::{jacobi, jacobi_batch};

use super::{CharMatrix, CycMatrix, SpecmatError};

/// Default largest `q` for the exact characteristic polynomial of `M_q`.
pub const EXACT_CHARPOLY_CAP: u32 = 13;
/// Default largest `q` for the dense float eigensolver.
pub const FLOAT_EIGEN_CAP: u32 = 343;

/// Faddeev-LeVerrier over `Z[zeta_n]`. Each trace is reduced to canonical
/// form before the exact division by `k`.
pub fn faddeev_leverrier<T: Coeff>(m: &CycMatrix<T>) -> Result<CycPoly<T>, SpecmatError> {
    let d = m.dim();
    let n = m.n();
    let mut coeffs = vec![Cyclotomic::zero(n); d + 1];
    coeffs[d] = Cyclotomic::one(n);
    let mut aux = CycMatrix::identity(d, n);
    for k in 1..=d {
        let am = m.mul(&aux);
        let c = -am.trace().exact_div_int(&T::int(k as i64))?;
        aux = am;
        aux.add_scalar_diagonal(&c);
        coeffs[d - k] = c;
    }
    Ok(CycPoly::new(n, coeffs))
}

/// Faddeev-LeVerrier over the integers; `entries` is row major.
pub fn faddeev_leverrier_int<T: Coeff>(dim: usize, entries: &[T]) -> IntPoly<T> {
    assert_eq!(entries.len(), dim * dim);
    let mut coeffs = vec![T::zero(); dim + 1];
    coeffs[dim] = T::one();
    let mut aux: Vec<T> = vec![T::zero(); dim * dim];
    for i in 0..dim {
        aux[i * dim + i] = T::one();
    }
    for k in 1..=dim {
        let mut am = vec![T::zero(); dim * dim];
        for i in 0..dim {
            for l in 0..dim {
                let a = &entries[i * dim + l];
                if a.is_zero() {
                    continue;
                }
                for j in 0..dim {
                    let b = &aux[l * dim + j];
                    if !b.is_zero() {
                        am[i * dim + j] = am[i * dim + j].add_c(&a.mul_c(b));
                    }
                }
            }
        }
        let trace = (0..dim).fold(T::zero(), |acc, i| acc.add_c(&am[i * dim + i]));
        let kk = T::int(k as i64);
        assert!(
            trace.is_multiple_of(&kk),
            "trace not divisible in Faddeev-LeVerrier step {k}"
        );
        let c = -trace.div_floor(&kk);
        for i in 0..dim {
            am[i * dim + i] = am[i * dim + i].add_c(&c);
        }
        aux = am;
        coeffs[dim - k] = c;
    }
    IntPoly::new(coeffs)
}

/// `det(x I - M_q)` computed exactly.
pub fn charpoly_direct_exact<T: Coeff>(
    m: &CharMatrix<'_>,
    cap: u32,
) -> Result<CycPoly<T>, SpecmatError> {
    let q = m.field().q();
    if q > cap {
        return Err(SpecmatError::Cap {
            what: "exact characteristic polynomial",
            q,
            cap,
        });
    }
    let bits = (q as f64 - 1.0) * (1.0 + (q as f64).log2()) + 4.0;
    if !T::holds_bits(bits) {
        return Err(SpecmatError::Growth {
            what: "exact characteristic polynomial",
            q,
        });
    }
    faddeev_leverrier(&CycMatrix::from_char_matrix(m))
}

/// Which reading of the second linear factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Thm1Variant {
    /// `x - J(conj(A)B, conj(A) phi)`, the stated second factor.
    Stated,
    /// `x - J(conj(A)B, A phi)`, the eigenvalue of `w^{(q-1)/2}`.
    Lemma,
}

#[derive(Debug, Clone)]
pub struct CharpolyFormula<T> {
    pub stated: CycPoly<T>,
    pub lemma: CycPoly<T>,
}

impl<T: Coeff> CharpolyFormula<T> {
    pub fn variant(&self, v: Thm1Variant) -> &CycPoly<T> {
        match v {
            Thm1Variant::Stated => &self.stated,
            Thm1Variant::Lemma => &self.lemma,
        }
    }
}

/// `J(conj(A)B, A omega^l)` for every `l`, from one batched pass.
fn eigen_jacobis<T: Coeff>(m: &CharMatrix<'_>) -> Vec<Cyclotomic<T>> {
    let psi = m.a().conj().mul(m.b());
    jacobi_batch::<T>(psi, m.a())
}

pub fn charpoly_formula<T: Coeff>(m: &CharMatrix<'_>) -> CharpolyFormula<T> {
    let field = m.field();
    let n = field.order() as usize;
    let js = eigen_jacobis::<T>(m);
    let half = n / 2;
    let mut quadratics = CycPoly::one(n);
    for l in 1..=(field.q() as usize - 3) / 2 {
        quadratics = quadratics.mul(&CycPoly::quadratic(&(&js[l] * &js[n - l])));
    }
    let base = CycPoly::linear(&js[0]).mul(&quadratics);
    let psi = m.a().conj().mul(m.b());
    let stated_root = jacobi::<T>(psi, m.a().conj().mul(Character::legendre(field)));
    CharpolyFormula {
        stated: base.mul(&CycPoly::linear(&stated_root)),
        lemma: base.mul(&CycPoly::linear(&js[half])),
    }
}

/// Roots of the formula's factors as complex numbers: the two linear roots
/// followed by `+-sqrt(J_l J_{-l})` for each quadratic.
pub fn eigenvalue_formula(m: &CharMatrix<'_>, variant: Thm1Variant) -> Vec<Complex<f64>> {
    let field = m.field();
    let n = field.order() as usize;
    let js: Vec<Complex<f64>> = eigen_jacobis::<i64>(m).iter().map(|j| j.embed()).collect();
    let second = match variant {
        Thm1Variant::Lemma => js[n / 2],
        Thm1Variant::Stated => {
            let psi = m.a().conj().mul(m.b());
            jacobi::<i64>(psi, m.a().conj().mul(Character::legendre(field))).embed()
        }
    };
    let mut roots = vec![js[0], second];
    for l in 1..=(field.q() as usize - 3) / 2 {
        let s = (js[l] * js[n - l]).sqrt();
        roots.push(s);
        roots.push(-s);
    }
    roots
}

#[derive(Debug, Clone)]
pub struct Thm1Check<T> {
    pub direct: CycPoly<T>,
    pub formula: CharpolyFormula<T>,
    pub stated_matches: bool,
    pub lemma_matches: bool,
}

impl<T: Coeff> Thm1Check<T> {
    /// True when both variants are the same polynomial, so the run cannot
    /// tell them apart.
    pub fn indistinguishable(&self) -> bool {
        self.formula.stated == self.formula.lemma
    }

    /// The matching variant, when exactly one matches.
    pub fn winner(&self) -> Option<Thm1Variant> {
        match (self.stated_matches, self.lemma_matches) {
            (true, false) => Some(Thm1Variant::Stated),
            (false, true) => Some(Thm1Variant::Lemma),
            _ => None,
        }
    }
}

pub fn thm1_verify<T: Coeff>(m: &CharMatrix<'_>, cap: u32) -> Result<Thm1Check<T>, SpecmatError> {
    let direct = charpoly_direct_exact(m, cap)?;
    let formula = charpoly_formula(m);
    Ok(Thm1Check {
        stated_matches: direct == formula.stated,
        lemma_matches: direct == formula.lemma,
        direct,
        formula,
    })
}

fn lexicographic(a: &Complex<f64>, b: &Complex<f64>) -> std::cmp::Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

const SCHUR_ITERATIONS: usize = 10_000;

/// Eigenvalues of the complex embedding of `M_q`, sorted by (re, im).
pub fn charpoly_direct_float(
    m: &CharMatrix<'_>,
    cap: u32,
) -> Result<Vec<Complex<f64>>, SpecmatError> {
    let q = m.field().q();
    if q > cap {
        return Err(SpecmatError::Cap {
            what: "float eigensolver",
            q,
            cap,
        });
    }
    let d = m.dim();
    let em = m.embed::<f64>();
    // Shifted QR can stall on the exact +-lambda ties these matrices have;
    // an off-axis shift breaks them without changing the eigenvectors.
    let shifts = [
        Complex::new(0.0, 0.0),
        Complex::new(0.3, 0.137_035_999),
        Complex::new(-0.25, 0.414_213_562),
    ];
    let mut eig = None;
    for s in shifts {
        let dm = DMatrix::from_fn(d, d, |i, j| {
            em[(i, j)] + if i == j { s } else { Complex::new(0.0, 0.0) }
        });
        if let Some(ev) = nalgebra::linalg::Schur::try_new(dm, f64::EPSILON, SCHUR_ITERATIONS)
            .and_then(|schur| schur.eigenvalues())
        {
            eig = Some(ev.iter().map(|e| e - s).collect::<Vec<_>>());
            break;
        }
    }
    let mut eig = eig.ok_or(SpecmatError::Solver)?;
    eig.sort_by(lexicographic);
    Ok(eig)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MultisetMatch {
    pub matched: bool,
    pub worst_residual: f64,
}

/// Greedy nearest-neighbour matching of two multisets after sorting both.
pub fn match_multisets(
    expected: &[Complex<f64>],
    found: &[Complex<f64>],
    tol: f64,
) -> MultisetMatch {
    if expected.len() != found.len() {
        return MultisetMatch {
            matched: false,
            worst_residual: f64::INFINITY,
        };
    }
    let mut expected = expected.to_vec();
    expected.sort_by(lexicographic);
    let mut used = vec![false; found.len()];
    let mut worst = 0.0f64;
    for e in &expected {
        let (idx, dist) = found
            .iter()
            .enumerate()
            .filter(|(i, _)| !used[*i])
            .map(|(i, f)| (i, (f - e).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("same length");
        used[idx] = true;
        worst = worst.max(dist);
    }
    MultisetMatch {
        matched: worst <= tol,
        worst_residual: worst,
    }
}
