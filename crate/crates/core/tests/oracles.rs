//! Exact results checked against independent brute-force evaluations and
//! published closed forms.

use ffchar::characters::Character;
use ffchar::field::{FieldElement, FieldTable};
use ffchar::float::FloatCharacters;
use ffchar::hypergeometric::{ec_count, HypParams, Hypergeometric};
use ffchar::poly::IntPoly;
use ffchar::specmat::{
    build_matrix, gf_verify, lemma21_check, matrix_power, thm2_verify, Thm2Reading,
};
use ffchar::sums::{jacobi, JacobiTable};
use ffchar::{Complex64, RationalCyclotomic};

fn field(q: u64) -> FieldTable {
    FieldTable::from_order(q).unwrap()
}

/// Quadratic character by Euler's criterion over `F_p`, without logarithms.
fn euler_phi(p: i64, x: i64) -> i64 {
    let x = x.rem_euclid(p);
    if x == 0 {
        return 0;
    }
    let mut r = 1i64;
    for _ in 0..(p - 1) / 2 {
        r = r * x % p;
    }
    if r == 1 {
        1
    } else {
        -1
    }
}

#[test]
fn gf_closed_forms_small() {
    let expect: [(u64, &[i64]); 3] = [(5, &[-2, -1, 2, 1]), (7, &[0, 21, 0, -10, 0, 1]), (13, &[])];
    for (q, coeffs) in expect {
        let check = gf_verify::<i128>(&field(q)).unwrap();
        assert!(check.holds(), "q = {q}");
        if !coeffs.is_empty() {
            assert_eq!(check.charpoly, IntPoly::from_i64(coeffs));
        }
    }
    // (x+1)(x-1)(x+2)(x^2-13)^4
    let q13 = IntPoly::<i128>::from_i64(&[1, 1])
        .mul(&IntPoly::from_i64(&[-1, 1]))
        .mul(&IntPoly::from_i64(&[2, 1]))
        .mul(&IntPoly::from_i64(&[-13, 0, 1]).pow(4));
    assert_eq!(gf_verify::<i128>(&field(13)).unwrap().charpoly, q13);
}

#[test]
fn point_counts_by_pairs() {
    for p in [5i64, 7, 11, 13] {
        let f = field(p as u64);
        for lam in 2..p {
            let mut affine = 0;
            for x in 0..p {
                for y in 0..p {
                    if (y * y - x * (x - 1) * (x - lam)).rem_euclid(p) == 0 {
                        affine += 1;
                    }
                }
            }
            let count = ec_count(&f, f.from_int(lam)).unwrap();
            assert_eq!(count, affine as u64 + 1, "p = {p}, lambda = {lam}");
        }
    }
}

#[test]
fn legendre_2f1_against_euler_criterion() {
    // q phi(-1) 2F1(phi, phi; eps | lam) = sum_x phi(x(x-1)(x-lam))
    for p in [5i64, 7, 11, 13] {
        let f = field(p as u64);
        let t = JacobiTable::<i64>::new(&f).unwrap();
        let h = Hypergeometric::new(&f, &t);
        for lam in 2..p {
            let s: i64 = (0..p).map(|x| euler_phi(p, x * (x - 1) * (x - lam))).sum();
            let value = h.legendre_2f1(f.from_int(lam)).unwrap();
            let scaled = value.scale(&(p * euler_phi(p, -1)));
            assert_eq!(scaled.as_integer(), Some(s), "p = {p}, lambda = {lam}");
        }
    }
    let f = field(5);
    let t = JacobiTable::<i64>::new(&f).unwrap();
    let v = Hypergeometric::new(&f, &t)
        .legendre_2f1(f.from_int(2))
        .unwrap();
    assert_eq!(v.as_rational(), Some((2, 5)));
}

#[test]
fn one_f_zero_unrolled() {
    // q/(q-1) sum_chi (A chi over chi) chi(x), term by term in floats
    for q in [5u64, 7, 9] {
        let f = field(q);
        let fc = FloatCharacters::<f64>::new(&f);
        let t = JacobiTable::<i64>::new(&f).unwrap();
        let h = Hypergeometric::new(&f, &t);
        let n = f.order() as i64;
        for a in 0..n {
            let params = HypParams::new(vec![a], vec![]).unwrap();
            for x in f.elements() {
                let mut sum = Complex64::new(0.0, 0.0);
                for chi in 0..n {
                    let mut j = Complex64::new(0.0, 0.0);
                    for y in f.elements() {
                        j += fc.value(a + chi, y) * fc.value(-chi, f.one_minus(y));
                    }
                    let binom = fc.value(chi, f.neg_one()) * j / q as f64;
                    sum += binom * fc.value(chi, x);
                }
                let expect = sum * q as f64 / (q as f64 - 1.0);
                let got = h.eval(&params, x).unwrap().embed_f64();
                assert!(
                    (got - expect).norm() < 1e-9,
                    "q = {q}, a = {a}, x = {}",
                    x.index()
                );
            }
        }
    }
}

#[test]
fn jacobi_by_definition() {
    for q in [5u64, 7, 9, 11] {
        let f = field(q);
        let fc = FloatCharacters::<f64>::new(&f);
        for a in Character::all(&f) {
            for b in Character::all(&f) {
                let mut direct = Complex64::new(0.0, 0.0);
                for x in f.elements() {
                    direct +=
                        fc.value(a.index() as i64, x) * fc.value(b.index() as i64, f.one_minus(x));
                }
                let exact = jacobi::<i64>(a, b).embed_f64();
                assert!((exact - direct).norm() < 1e-9);
            }
        }
    }
}

#[test]
fn matrix_row_over_f5() {
    let f = field(5);
    let m = build_matrix(&f, 2, 0);
    let row: Vec<i64> = (0..4)
        .map(|c| {
            let e = m.entry::<i64>(0, c);
            e.as_integer().unwrap()
        })
        .collect();
    assert_eq!(row, vec![0, -1, 1, -1]);
    for (c, j) in f.units().enumerate() {
        let expect = euler_phi(5, j.index() as i64) * euler_phi(5, 1 - j.index() as i64);
        assert_eq!(row[c], expect);
    }
}

#[test]
fn lemma21_exhaustive_seven() {
    let f = field(7);
    let mut checks = 0;
    for a in 0..6 {
        for b in 0..6 {
            let m = build_matrix(&f, a, b);
            for l in 1..=6 {
                assert!(
                    lemma21_check::<i64>(&m, l).holds,
                    "a = {a}, b = {b}, l = {l}"
                );
                checks += 1;
            }
        }
    }
    assert_eq!(checks, 216);
}

#[test]
fn square_entries_over_f5() {
    // (M^2)_{ij} = A(-1) q 2F1(A, eps; conj A | j/i) for A = phi
    let f = field(5);
    let t = JacobiTable::<i64>::new(&f).unwrap();
    let h = Hypergeometric::new(&f, &t);
    let m2 = matrix_power::<i64>(&build_matrix(&f, 2, 0), 2).unwrap();
    let params = HypParams::new(vec![2, 0], vec![2]).unwrap();
    for (r, i) in f.units().enumerate() {
        for (c, j) in f.units().enumerate() {
            let x = f.div(j, i).unwrap();
            let rhs = h.eval(&params, x).unwrap().scale(&5);
            assert_eq!(RationalCyclotomic::integral(m2.get(r, c).clone()), rhs);
        }
    }
    for k in [2, 4] {
        assert!(thm2_verify(&h, 2, k, Thm2Reading::Stated).unwrap().pass());
    }
}

#[test]
fn hypergeometric_at_zero() {
    let f = field(7);
    let t = JacobiTable::<i64>::new(&f).unwrap();
    let h = Hypergeometric::new(&f, &t);
    let params = HypParams::new(vec![3, 3], vec![0]).unwrap();
    assert!(h.eval(&params, FieldElement::ZERO).unwrap().is_zero());
}

#[test]
fn float_spectrum_over_thirteen() {
    use ffchar::specmat::{
        charpoly_direct_float, eigenvalue_formula, match_multisets, Thm1Variant,
    };
    let f = field(13);
    let m = build_matrix(&f, 1, 0);
    let found = charpoly_direct_float(&m, 343).unwrap();
    let r = match_multisets(&eigenvalue_formula(&m, Thm1Variant::Lemma), &found, 1e-6);
    assert!(r.matched, "{}", r.worst_residual);
    // |J(conj(A)B, A w^l)| = sqrt(q) unless A w^l or B w^l is trivial; an
    // index l in {0, (q-1)/2} costs one eigenvalue, any other costs two.
    let off_circle = |a: i64, b: i64| {
        let found = charpoly_direct_float(&build_matrix(&f, a, b), 343).unwrap();
        found
            .iter()
            .filter(|z| (z.norm() - 13f64.sqrt()).abs() > 1e-6)
            .count()
    };
    assert_eq!(off_circle(3, 7), 4);
    assert_eq!(off_circle(6, 0), 2);
    assert_eq!(off_circle(5, 0), 3);
}
