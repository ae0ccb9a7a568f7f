//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Criterion 4 asserts the matrix-power formula exactly as stated, which is
//! false for odd powers; it prints FAIL and does not affect the exit status.
//! Every other failure does.

use std::time::{Duration, Instant};

use ffchar::characters::Character;
use ffchar::float::{roots_of_unity, FloatCharacters};
use ffchar::hypergeometric::{within_hasse_bound, HypParams, Hypergeometric};
use ffchar::sample::Lcg;
use ffchar::specmat::{
    build_matrix, charpoly_direct_float, eigenvalue_formula, gf_verify, lemma21_check,
    match_multisets, thm1_verify, thm2_verify, Thm1Variant, Thm2Reading, EXACT_CHARPOLY_CAP,
    FLOAT_EIGEN_CAP,
};
use ffchar::sums::{binomial_identity_check, jacobi, jacobi_batch, JacobiTable};
use ffchar::{Complex64, FieldTable, PrimePower};
use ffchar_harness::checks::scaled_diff;
use ffchar_harness::{run_sweep, Backend, Cache, Check, Selector, SweepSpec};

const SEED: u64 = 20_240_601;
const EIGEN_TOL: f64 = 1e-6;
const AGREEMENT_TOL: f64 = 1e-9;
const EXPECTED_RED: &[u32] = &[4];

fn field(q: u32) -> FieldTable {
    FieldTable::from_order(q as u64).unwrap()
}

type Criterion = (u32, &'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    notes: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Self {
            pass: true,
            notes: Vec::new(),
        }
    }

    fn require(&mut self, ok: bool, note: impl Into<String>) {
        if !ok {
            self.pass = false;
            self.notes.push(note.into());
        }
    }

    fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }
}

fn gf_charpolys() -> Outcome {
    let mut o = Outcome::new();
    for q in [5, 7, 9, 11, 13, 17, 19, 23, 25, 27] {
        let c = gf_verify::<i128>(&field(q)).unwrap();
        o.require(c.holds(), format!("q={q}: {} != {}", c.charpoly, c.formula));
    }
    o.note("q in {5,7,9,11,13,17,19,23,25,27}, exact");
    o
}

fn charpoly_factorisation() -> Outcome {
    let mut o = Outcome::new();
    let (mut lemma, mut stated, mut same, mut pairs) = (0, 0, 0, 0);
    for q in [5, 7, 9, 11, 13] {
        let f = field(q);
        let n = f.order() as i64;
        for a in 0..n {
            for b in 0..n {
                let m = build_matrix(&f, a, b);
                let c = thm1_verify::<i64>(&m, EXACT_CHARPOLY_CAP).unwrap();
                pairs += 1;
                if c.indistinguishable() {
                    same += 1;
                    o.require(
                        c.lemma_matches,
                        format!("q={q} a={a} b={b}: no variant matches"),
                    );
                    continue;
                }
                match c.winner() {
                    Some(Thm1Variant::Lemma) => lemma += 1,
                    Some(Thm1Variant::Stated) => stated += 1,
                    None => o.require(false, format!("q={q} a={a} b={b}: not exactly one variant")),
                }
            }
        }
    }
    o.require(lemma == 0 || stated == 0, "winner differs between runs");
    let winner = if stated > 0 {
        Thm1Variant::Stated
    } else {
        Thm1Variant::Lemma
    };
    o.note(format!(
        "exact: {pairs} pairs, second factor J(conj(A)B, A phi) wins {lemma}, \
         stated J(conj(A)B, conj(A) phi) wins {stated}, identical polynomials {same}"
    ));
    let mut worst = 0.0f64;
    let mut float_pairs = 0;
    for q in [17, 25, 27, 49] {
        let f = field(q);
        let n = f.order() as i64;
        for a in 0..n {
            for b in 0..n {
                let m = build_matrix(&f, a, b);
                let found = charpoly_direct_float(&m, FLOAT_EIGEN_CAP).unwrap();
                let r = match_multisets(&eigenvalue_formula(&m, winner), &found, EIGEN_TOL);
                worst = worst.max(r.worst_residual);
                float_pairs += 1;
                o.require(
                    r.matched,
                    format!("q={q} a={a} b={b}: residual {:.2e}", r.worst_residual),
                );
            }
        }
    }
    o.note(format!(
        "float: {float_pairs} pairs over q in {{17,25,27,49}}, worst {worst:.2e}"
    ));
    o
}

fn eigen_relation() -> Outcome {
    let mut o = Outcome::new();
    let mut count = 0;
    for q in [5, 7, 9, 11, 13] {
        let f = field(q);
        let n = f.order() as i64;
        for a in 0..n {
            for b in 0..n {
                let m = build_matrix(&f, a, b);
                for l in 1..=n {
                    count += 1;
                    o.require(
                        lemma21_check::<i64>(&m, l).holds,
                        format!("q={q} a={a} b={b} l={l}"),
                    );
                }
            }
        }
    }
    o.note(format!("{count} exhaustive triples"));
    let mut rng = Lcg::new(SEED);
    for q in [25, 27, 49] {
        let f = field(q);
        for t in rng.tuples(50, 3, f.order()) {
            let (a, b, l) = (t[0] as i64, t[1] as i64, t[2] as i64 + 1);
            let m = build_matrix(&f, a, b);
            o.require(
                lemma21_check::<i64>(&m, l).holds,
                format!("q={q} a={a} b={b} l={l}"),
            );
        }
    }
    o.note("50 sampled triples each for q in {25,27,49}");
    o
}

fn matrix_powers() -> Outcome {
    let mut o = Outcome::new();
    let mut odd_alternatives = [true; 2];
    for q in [5, 7, 9, 11, 13] {
        let f = field(q);
        let t = JacobiTable::<i64>::new(&f).unwrap();
        let h = Hypergeometric::new(&f, &t);
        let mut by_k = Vec::new();
        for k in 1..=5 {
            let mut bad = 0;
            for a in 1..f.order() as i64 {
                let r = thm2_verify(&h, a, k, Thm2Reading::Stated).unwrap();
                if !r.pass() {
                    bad += 1;
                }
                if k >= 2 && !r.pass() {
                    o.pass = false;
                }
                if k % 2 == 1 {
                    for (i, reading) in [Thm2Reading::ProductArgument, Thm2Reading::CeilingHalf]
                        .into_iter()
                        .enumerate()
                    {
                        if k == 1 && reading == Thm2Reading::ProductArgument {
                            continue;
                        }
                        odd_alternatives[i] &= thm2_verify(&h, a, k, reading).unwrap().pass();
                    }
                }
            }
            by_k.push(format!("k={k}: {bad}/{} A fail", f.order() - 1));
        }
        o.notes.push(format!("q={q}: {}", by_k.join(", ")));
    }
    o.note("k=1 is reported only");
    o.note(format!(
        "odd k, argument ij with stated parameters: {}",
        if odd_alternatives[0] {
            "holds"
        } else {
            "fails"
        }
    ));
    o.note(format!(
        "odd k, parameter pattern of length ceil(k/2), argument 1/(ij): {}",
        if odd_alternatives[1] {
            "holds (k=1 included)"
        } else {
            "fails"
        }
    ));
    o
}

fn euler_transform() -> Outcome {
    let mut o = Outcome::new();
    let mut checked = 0;
    for q in [5, 7, 9] {
        let f = field(q);
        let t = JacobiTable::<i64>::new(&f).unwrap();
        let h = Hypergeometric::new(&f, &t);
        for n in [1usize, 2] {
            let mut rng = Lcg::new(SEED + q as u64 * 10 + n as u64);
            for tuple in rng.tuples(20, 2 * n + 1, f.order()) {
                let tuple: Vec<i64> = tuple.into_iter().map(i64::from).collect();
                let params = HypParams::new(tuple[..=n].to_vec(), tuple[n + 1..].to_vec()).unwrap();
                for x in f.elements() {
                    checked += 1;
                    let c = h.euler_transform(&params, x).unwrap();
                    o.require(c.equal, format!("q={q} {tuple:?} x={}", x.index()));
                }
            }
        }
    }
    o.note(format!(
        "{checked} (tuple, x) evaluations, 20 tuples per (q, n)"
    ));
    o
}

fn elliptic_curves() -> Outcome {
    let mut o = Outcome::new();
    let mut curves = 0;
    for q in [5, 7, 9, 11, 13, 25, 27] {
        let f = field(q);
        let t = JacobiTable::<i64>::new(&f).unwrap();
        let h = Hypergeometric::new(&f, &t);
        for lam in f.exceptional_free() {
            curves += 1;
            let c = h.ec_identity(lam).unwrap();
            o.require(
                c.equal,
                format!("q={q} lambda={}: count {}", lam.index(), c.count),
            );
            o.require(
                within_hasse_bound(q, c.count),
                format!("q={q} lambda={}: Hasse", lam.index()),
            );
        }
    }
    o.note(format!("{curves} curves"));
    o
}

fn identity_suites() -> Outcome {
    let mut o = Outcome::new();
    for q in [5, 7, 9, 11, 13, 25, 27, 49] {
        let f = field(q);
        let n = f.order() as i64;
        for chi in Character::all(&f) {
            let s = ffchar::characters::sum_over_field::<i64>(chi);
            let expect = if chi.is_trivial() { n } else { 0 };
            o.require(
                s.as_integer() == Some(expect),
                format!("q={q}: sum of chi_{}", chi.index()),
            );
        }
        for x in f.elements() {
            let s = ffchar::characters::sum_over_characters::<i64>(&f, x);
            let expect = if x == ffchar::FieldElement::ONE { n } else { 0 };
            o.require(
                s.as_integer() == Some(expect),
                format!("q={q}: character sum at {}", x.index()),
            );
        }
        for a in Character::all(&f) {
            for b in Character::all(&f) {
                o.require(
                    binomial_identity_check::<i64>(a, b).all(),
                    format!(
                        "q={q}: binomial identities at ({}, {})",
                        a.index(),
                        b.index()
                    ),
                );
                if !a.is_trivial() && !b.is_trivial() && !a.mul(b).is_trivial() {
                    let j = jacobi::<i64>(a, b);
                    o.require(
                        (&j * &j.conj()).as_integer() == Some(q as i64),
                        format!("q={q}: |J|^2 at ({}, {})", a.index(), b.index()),
                    );
                }
            }
        }
    }
    o.note("q in {5,7,9,11,13,25,27,49}");
    o
}

fn backend_agreement() -> Outcome {
    let mut o = Outcome::new();
    let orders = |qs: &[u64]| {
        qs.iter()
            .map(|&q| PrimePower::from_order(q).unwrap())
            .collect()
    };
    let runs: Vec<(Vec<Check>, Vec<PrimePower>, Selector, Selector)> = vec![
        (
            vec![Check::Thm1, Check::Thm2],
            orders(&[5, 7, 9, 11, 13]),
            Selector::All,
            Selector::All,
        ),
        (
            vec![Check::Lemma21],
            orders(&[5, 7, 9, 11, 13]),
            Selector::All,
            Selector::All,
        ),
        (
            vec![Check::Lemma21],
            orders(&[17, 19, 23, 25, 27]),
            Selector::Sample(50),
            Selector::Sample(50),
        ),
        (
            vec![Check::Euler],
            orders(&[5, 7, 9]),
            Selector::All,
            Selector::All,
        ),
        (
            vec![
                Check::Ec,
                Check::Identities,
                Check::Orthogonality,
                Check::Gf,
            ],
            orders(&[5, 7, 9, 11, 13, 17, 19, 23, 25, 27]),
            Selector::All,
            Selector::All,
        ),
    ];
    let mut worst = 0.0f64;
    let mut worst_abs = 0.0f64;
    let mut records = 0;
    for (checks, fields, a, b) in runs {
        let spec = SweepSpec {
            fields,
            a,
            b,
            k: vec![1, 2, 3, 4, 5],
            checks,
            backend: Backend::Both,
            seed: SEED,
            tolerance: AGREEMENT_TOL,
            ..SweepSpec::default()
        };
        let report = run_sweep(&spec, &Cache::disabled()).unwrap();
        for r in &report.records {
            records += 1;
            let agreement = r.agreement.unwrap_or(f64::INFINITY);
            worst = worst.max(agreement);
            worst_abs = worst_abs.max(r.agreement_abs.unwrap_or(f64::INFINITY));
            o.require(
                agreement <= AGREEMENT_TOL,
                format!("{} q={} {}: {agreement:.2e}", r.check, r.q, r.inputs),
            );
        }
    }
    o.note(format!(
        "{records} records, worst |exact - float| / max(1, |exact|) = {worst:.2e}"
    ));
    o.note(format!("worst unscaled |exact - float| = {worst_abs:.2e}"));
    o
}

fn performance() -> Outcome {
    let mut o = Outcome::new();
    let start = Instant::now();
    let f = field(343);
    let t_field = start.elapsed();
    let (a, b) = (1i64, 2i64);
    let m = build_matrix(&f, a, b);
    let t_build = start.elapsed() - t_field;
    let psi = m.a().conj().mul(m.b());
    let js: Vec<Complex64> = jacobi_batch::<i64>(psi, m.a())
        .iter()
        .map(|j| j.embed_f64())
        .collect();
    let t_jacobi = start.elapsed() - t_field - t_build;
    let n = f.order() as usize;
    let roots = roots_of_unity::<f64>(n);
    let fc = FloatCharacters::<f64>::new(&f);
    let mut worst = 0.0f64;
    for l in 1..=n {
        let lhs = m.apply_w_float(&roots, l as i64);
        let partner = fc.w_vector((n - l) as i64);
        let j = js[l % n];
        worst = worst.max(
            lhs.iter()
                .zip(&partner)
                .map(|(x, w)| scaled_diff(*x, j * w))
                .fold(0.0, f64::max),
        );
    }
    let total = start.elapsed();
    let t_verify = total - t_field - t_build - t_jacobi;
    o.require(worst <= AGREEMENT_TOL, format!("residual {worst:.2e}"));
    o.require(total < Duration::from_secs(10), "over 10 s");
    o.note(format!(
        "q=343: field {:.0} ms, matrix {:.0} ms, jacobi batch {:.0} ms, {n} eigen relations {:.0} ms, total {:.2} s, residual {worst:.1e}",
        t_field.as_secs_f64() * 1e3,
        t_build.as_secs_f64() * 1e3,
        t_jacobi.as_secs_f64() * 1e3,
        t_verify.as_secs_f64() * 1e3,
        total.as_secs_f64()
    ));
    o
}

fn main() {
    let criteria: [Criterion; 9] = [
        (
            1,
            "quadratic character matrix characteristic polynomials",
            gf_charpolys,
        ),
        (
            2,
            "characteristic polynomial factorisation of M_q",
            charpoly_factorisation,
        ),
        (3, "eigen relation M w^l = J w^(q-1-l)", eigen_relation),
        (
            4,
            "entries of M^k as hypergeometric values (B = eps)",
            matrix_powers,
        ),
        (5, "Euler integral transform", euler_transform),
        (6, "elliptic curve point counts", elliptic_curves),
        (
            7,
            "orthogonality, binomial identities, |J|^2 = q",
            identity_suites,
        ),
        (8, "exact and float backends agree", backend_agreement),
        (
            9,
            "q = 343 build, Jacobi batch, float eigen relations",
            performance,
        ),
    ];
    let mut unexpected = 0;
    for (id, name, run) in criteria {
        let start = Instant::now();
        let o = run();
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        println!(
            "criterion {id} {verdict} {name} ({:.2} s)",
            start.elapsed().as_secs_f64()
        );
        const SHOWN: usize = 12;
        for note in o.notes.iter().take(SHOWN) {
            println!("    {note}");
        }
        if o.notes.len() > SHOWN {
            println!("    ... {} more", o.notes.len() - SHOWN);
        }
        if !o.pass && !EXPECTED_RED.contains(&id) {
            unexpected += 1;
        }
    }
    if unexpected > 0 {
        println!("{unexpected} criteria failed");
        std::process::exit(1);
    }
}
