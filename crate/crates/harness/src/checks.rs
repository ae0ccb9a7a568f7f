//! One task per (field, check, parameters); each returns a record with the
//! exact verdict, the float verdict, and their agreement, as selected.

use std::time::{Duration, Instant};

use ffchar::characters::{sum_over_characters, sum_over_field, Character};
use ffchar::float::{roots_of_unity, FloatCharacters};
use ffchar::hypergeometric::{ec_count, within_hasse_bound, HypParams};
use ffchar::specmat::{
    build_matrix, charpoly_direct_float, eigenvalue_formula, gf_eigen_float, gf_formula_roots,
    gf_matrix, gf_verify, lemma21_check, match_multisets, matrix_power, thm1_verify, thm2_verify,
    Thm1Variant, Thm2Reading, EXACT_CHARPOLY_CAP, FLOAT_EIGEN_CAP,
};
use ffchar::sums::{binomial_identity_check, jacobi};
use ffchar::Complex64;
use serde_json::{json, Map, Value};

use crate::context::FieldContext;
use crate::spec::{reading_name, Backend, Check};

/// Tolerance for float eigenvalue multisets.
pub const EIGEN_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub enum Task {
    Lemma21 {
        a: i64,
        b: i64,
    },
    Thm1 {
        a: i64,
        b: i64,
    },
    Thm2 {
        a: i64,
        k: u32,
        reading: Thm2Reading,
    },
    Gf,
    Euler {
        top: Vec<i64>,
        bottom: Vec<i64>,
    },
    Ec,
    Identities,
    Orthogonality,
}

impl Task {
    pub fn check(&self) -> Check {
        match self {
            Task::Lemma21 { .. } => Check::Lemma21,
            Task::Thm1 { .. } => Check::Thm1,
            Task::Thm2 { .. } => Check::Thm2,
            Task::Gf => Check::Gf,
            Task::Euler { .. } => Check::Euler,
            Task::Ec => Check::Ec,
            Task::Identities => Check::Identities,
            Task::Orthogonality => Check::Orthogonality,
        }
    }

    pub fn inputs(&self) -> Value {
        match self {
            Task::Lemma21 { a, b } | Task::Thm1 { a, b } => json!({ "a": a, "b": b }),
            Task::Thm2 { a, k, reading } => {
                json!({ "a": a, "b": 0, "k": k, "reading": reading_name(*reading) })
            }
            Task::Euler { top, bottom } => json!({ "top": top, "bottom": bottom }),
            Task::Gf | Task::Ec | Task::Identities | Task::Orthogonality => json!({}),
        }
    }

    /// The first power is reported without being asserted.
    pub fn asserted(&self) -> bool {
        !matches!(self, Task::Thm2 { k: 1, .. })
    }
}

/// One side of a check.
#[derive(Debug, Clone, PartialEq)]
pub struct Side {
    pub pass: bool,
    pub detail: Map<String, Value>,
}

impl Side {
    fn new(pass: bool) -> Self {
        Self {
            pass,
            detail: Map::new(),
        }
    }

    fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.detail.insert(key.into(), value.into());
        self
    }

    fn to_json(&self) -> Value {
        let mut m = self.detail.clone();
        m.insert("pass".into(), self.pass.into());
        Value::Object(m)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Record {
    pub check: Check,
    pub q: u32,
    pub inputs: Value,
    pub asserted: bool,
    pub exact: Option<Side>,
    pub float: Option<Side>,
    /// Largest scaled difference between embedded exact values and float ones.
    pub agreement: Option<f64>,
    /// Largest unscaled difference, for reference.
    pub agreement_abs: Option<f64>,
    pub error: Option<String>,
    pub tolerance: f64,
    pub elapsed: Duration,
}

impl Record {
    pub fn pass(&self) -> bool {
        self.error.is_none()
            && self.exact.as_ref().is_none_or(|s| s.pass)
            && self.float.as_ref().is_none_or(|s| s.pass)
            && self.agreement.is_none_or(|a| a <= self.tolerance)
    }

    pub fn verdict(&self) -> &'static str {
        if self.error.is_some() {
            "error"
        } else if self.pass() {
            "pass"
        } else {
            "fail"
        }
    }

    /// The matching charpoly variant of a thm1 record.
    pub fn winner(&self) -> Option<&str> {
        self.exact
            .as_ref()
            .or(self.float.as_ref())
            .and_then(|s| s.detail.get("winner"))
            .and_then(Value::as_str)
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("check".into(), self.check.name().into());
        m.insert("q".into(), self.q.into());
        m.insert("inputs".into(), self.inputs.clone());
        m.insert("asserted".into(), self.asserted.into());
        m.insert("verdict".into(), self.verdict().into());
        if let Some(s) = &self.exact {
            m.insert("exact".into(), s.to_json());
        }
        if let Some(s) = &self.float {
            m.insert("float".into(), s.to_json());
        }
        if let Some(a) = self.agreement {
            m.insert("agreement".into(), json!(a));
        }
        if let Some(a) = self.agreement_abs {
            m.insert("agreement_abs".into(), json!(a));
        }
        if let Some(e) = &self.error {
            m.insert("error".into(), e.clone().into());
        }
        Value::Object(m)
    }
}

/// `|x - y| / max(1, |x|)`
pub fn scaled_diff(x: Complex64, y: Complex64) -> f64 {
    (x - y).norm() / x.norm().max(1.0)
}

fn worst(it: impl IntoIterator<Item = f64>) -> f64 {
    it.into_iter().fold(0.0, f64::max)
}

struct Outcome {
    exact: Option<Side>,
    float: Option<Side>,
    agreement: Option<(f64, f64)>,
}

pub fn run(ctx: &FieldContext, task: &Task, backend: Backend, tolerance: f64) -> Record {
    let start = Instant::now();
    let result = match task {
        Task::Lemma21 { a, b } => lemma21(ctx, *a, *b, backend, tolerance),
        Task::Thm1 { a, b } => thm1(ctx, *a, *b, backend),
        Task::Thm2 { a, k, reading } => thm2(ctx, *a, *k, *reading, backend, tolerance),
        Task::Gf => gf(ctx, backend),
        Task::Euler { top, bottom } => euler(ctx, top, bottom, backend, tolerance),
        Task::Ec => ec(ctx, backend, tolerance),
        Task::Identities => identities(ctx, backend, tolerance),
        Task::Orthogonality => orthogonality(ctx, backend, tolerance),
    };
    let (exact, float, agreement, error) = match result {
        Ok(o) => (o.exact, o.float, o.agreement, None),
        Err(e) => (None, None, None, Some(e)),
    };
    let (agreement, agreement_abs) = agreement.unzip();
    Record {
        check: task.check(),
        q: ctx.field.q(),
        inputs: task.inputs(),
        asserted: task.asserted(),
        exact,
        float,
        agreement,
        agreement_abs,
        error,
        tolerance,
        elapsed: start.elapsed(),
    }
}

fn outcome(
    backend: Backend,
    exact: impl FnOnce() -> Result<(Side, Vec<Complex64>), String>,
    float: impl FnOnce() -> Result<(Side, Vec<Complex64>), String>,
) -> Result<Outcome, String> {
    let e = if backend.exact() {
        Some(exact()?)
    } else {
        None
    };
    let f = if backend.float() {
        Some(float()?)
    } else {
        None
    };
    let agreement = match (&e, &f) {
        (Some((_, xs)), Some((_, ys))) if xs.len() == ys.len() => Some((
            worst(xs.iter().zip(ys).map(|(x, y)| scaled_diff(*x, *y))),
            worst(xs.iter().zip(ys).map(|(x, y)| (x - y).norm())),
        )),
        (Some(_), Some(_)) => Some((f64::INFINITY, f64::INFINITY)),
        _ => None,
    };
    Ok(Outcome {
        exact: e.map(|p| p.0),
        float: f.map(|p| p.0),
        agreement,
    })
}

fn lemma21(
    ctx: &FieldContext,
    a: i64,
    b: i64,
    backend: Backend,
    tol: f64,
) -> Result<Outcome, String> {
    let field = &ctx.field;
    let n = field.order() as i64;
    let m = build_matrix(field, a, b);
    outcome(
        backend,
        || {
            let mut failed = Vec::new();
            let mut values = Vec::new();
            for l in 1..=n {
                let c = lemma21_check::<i64>(&m, l);
                if !c.holds {
                    failed.push(l);
                }
                values.push(c.jacobi.embed_f64());
                values.extend(c.lhs.iter().map(|x| x.embed_f64()));
            }
            Ok((
                Side::new(failed.is_empty()).with("failed_l", failed),
                values,
            ))
        },
        || {
            let fc = FloatCharacters::<f64>::new(field);
            let roots = roots_of_unity::<f64>(n as usize);
            let mut residual = 0.0f64;
            let mut values = Vec::new();
            for l in 1..=n {
                let lhs = m.apply_w_float(&roots, l);
                let j = fc.jacobi(b - a, a + l);
                let partner = fc.w_vector(n - l);
                residual = residual.max(worst(
                    lhs.iter()
                        .zip(&partner)
                        .map(|(x, w)| scaled_diff(*x, j * w)),
                ));
                values.push(j);
                values.extend(lhs);
            }
            Ok((
                Side::new(residual <= tol).with("residual", residual),
                values,
            ))
        },
    )
}

fn variant_name(v: Option<Thm1Variant>, indistinguishable: bool) -> Value {
    match (v, indistinguishable) {
        (_, true) => "indistinguishable".into(),
        (Some(Thm1Variant::Lemma), _) => "lemma".into(),
        (Some(Thm1Variant::Stated), _) => "stated".into(),
        (None, _) => Value::Null,
    }
}

fn thm1(ctx: &FieldContext, a: i64, b: i64, backend: Backend) -> Result<Outcome, String> {
    let m = build_matrix(&ctx.field, a, b);
    outcome(
        backend,
        || {
            let c = thm1_verify::<i64>(&m, EXACT_CHARPOLY_CAP).map_err(|e| e.to_string())?;
            let ind = c.indistinguishable();
            let pass = if ind {
                c.lemma_matches
            } else {
                c.winner().is_some()
            };
            let side = Side::new(pass)
                .with("winner", variant_name(c.winner(), ind && c.lemma_matches))
                .with("stated_matches", c.stated_matches)
                .with("lemma_matches", c.lemma_matches)
                .with("charpoly", c.direct.to_string());
            let coeffs = c.direct.coeffs().iter().map(|x| x.embed_f64()).collect();
            Ok((side, coeffs))
        },
        || {
            let found = charpoly_direct_float(&m, FLOAT_EIGEN_CAP).map_err(|e| e.to_string())?;
            let lemma = match_multisets(
                &eigenvalue_formula(&m, Thm1Variant::Lemma),
                &found,
                EIGEN_TOL,
            );
            let stated = match_multisets(
                &eigenvalue_formula(&m, Thm1Variant::Stated),
                &found,
                EIGEN_TOL,
            );
            let same = eigenvalue_formula(&m, Thm1Variant::Lemma)
                .iter()
                .zip(&eigenvalue_formula(&m, Thm1Variant::Stated))
                .all(|(x, y)| (x - y).norm() < EIGEN_TOL);
            let winner = match (stated.matched, lemma.matched) {
                (true, false) => Some(Thm1Variant::Stated),
                (false, true) => Some(Thm1Variant::Lemma),
                _ => None,
            };
            let pass = if same {
                lemma.matched
            } else {
                winner.is_some()
            };
            let side = Side::new(pass)
                .with("winner", variant_name(winner, same && lemma.matched))
                .with("lemma_residual", lemma.worst_residual)
                .with("stated_residual", stated.worst_residual);
            // Float Faddeev-LeVerrier coefficients, for comparison with the
            // exact polynomial.
            let coeffs = m.embed::<f64>().charpoly();
            Ok((side, coeffs))
        },
    )
}

fn thm2(
    ctx: &FieldContext,
    a: i64,
    k: u32,
    reading: Thm2Reading,
    backend: Backend,
    tol: f64,
) -> Result<Outcome, String> {
    let field = &ctx.field;
    let m = build_matrix(field, a, 0);
    let sums = ctx.sums();
    let h = sums.hyp();
    outcome(
        backend,
        || {
            let r = thm2_verify(&h, a, k, reading).map_err(|e| e.to_string())?;
            let mut side = Side::new(r.pass())
                .with("entries", r.entries)
                .with("mismatches", r.mismatches.len());
            if !r.pass() {
                let mut alt = Map::new();
                for other in Thm2Reading::ALL.into_iter().filter(|x| *x != reading) {
                    let o = thm2_verify(&h, a, k, other).map_err(|e| e.to_string())?;
                    alt.insert(reading_name(other).to_string(), o.pass().into());
                }
                side = side.with("alternatives", Value::Object(alt));
            }
            let p = matrix_power::<i64>(&m, k).map_err(|e| e.to_string())?;
            let d = m.dim();
            let values = (0..d * d)
                .map(|i| p.get(i / d, i % d).embed_f64())
                .collect();
            Ok((side, values))
        },
        || {
            let fc = FloatCharacters::<f64>::new(field);
            let p = fc.char_matrix(a, 0).pow(k);
            let (params, l) = reading.params(a, k);
            let sign = Character::new(field, a).pow(l as i64).sign() as f64;
            let scale = sign * (field.q() as f64).powi(k as i32 - 1);
            let mut residual = 0.0f64;
            for (r, i) in field.units().enumerate() {
                for (c, j) in field.units().enumerate() {
                    let rhs = fc.hyp(&params, reading.argument(field, k, i, j)) * scale;
                    residual = residual.max(scaled_diff(p[(r, c)], rhs));
                }
            }
            let d = p.dim();
            let values = (0..d * d).map(|i| p[(i / d, i % d)]).collect();
            Ok((
                Side::new(residual <= tol).with("residual", residual),
                values,
            ))
        },
    )
}

fn gf(ctx: &FieldContext, backend: Backend) -> Result<Outcome, String> {
    let field = &ctx.field;
    outcome(
        backend,
        || {
            let c = gf_verify::<i128>(field).map_err(|e| e.to_string())?;
            let side = Side::new(c.holds())
                .with("charpoly", c.charpoly.to_string())
                .with("formula", c.formula.to_string())
                .with("symmetric", c.symmetric)
                .with("trace_matches", c.trace_matches);
            let roots = gf_formula_roots(field.q())
                .into_iter()
                .map(|r| Complex64::new(r, 0.0))
                .collect();
            Ok((side, roots))
        },
        || {
            let m = gf_matrix(field).map_err(|e| e.to_string())?;
            let eig = gf_eigen_float(&m);
            let roots = gf_formula_roots(field.q());
            let residual = if eig.len() == roots.len() {
                worst(eig.iter().zip(&roots).map(|(x, y)| (x - y).abs()))
            } else {
                f64::INFINITY
            };
            let side = Side::new(residual <= EIGEN_TOL).with("residual", residual);
            Ok((
                side,
                eig.into_iter().map(|r| Complex64::new(r, 0.0)).collect(),
            ))
        },
    )
}

fn euler(
    ctx: &FieldContext,
    top: &[i64],
    bottom: &[i64],
    backend: Backend,
    tol: f64,
) -> Result<Outcome, String> {
    let field = &ctx.field;
    let params = HypParams::new(top.to_vec(), bottom.to_vec()).map_err(|e| e.to_string())?;
    let sums = ctx.sums();
    let h = sums.hyp();
    outcome(
        backend,
        || {
            let mut failed = Vec::new();
            let mut values = Vec::new();
            for x in field.elements() {
                let c = h.euler_transform(&params, x).map_err(|e| e.to_string())?;
                if !c.equal {
                    failed.push(x.index());
                }
                values.push(c.lhs.embed_f64());
                values.push(c.rhs.embed_f64());
            }
            Ok((
                Side::new(failed.is_empty()).with("failed_x", failed),
                values,
            ))
        },
        || {
            let fc = FloatCharacters::<f64>::new(field);
            let mut residual = 0.0f64;
            let mut values = Vec::new();
            for x in field.elements() {
                let lhs = fc.hyp(&params, x);
                let rhs = fc.euler_rhs(&params, x);
                residual = residual.max(scaled_diff(lhs, rhs));
                values.push(lhs);
                values.push(rhs);
            }
            Ok((
                Side::new(residual <= tol).with("residual", residual),
                values,
            ))
        },
    )
}

fn legendre_params(field: &ffchar::FieldTable) -> HypParams {
    let h = field.order() as i64 / 2;
    HypParams::new(vec![h, h], vec![0]).unwrap()
}

fn ec(ctx: &FieldContext, backend: Backend, tol: f64) -> Result<Outcome, String> {
    let field = &ctx.field;
    let sums = ctx.sums();
    let h = sums.hyp();
    let lambdas: Vec<_> = field.exceptional_free().collect();
    outcome(
        backend,
        || {
            let mut failed = Vec::new();
            let mut outside = Vec::new();
            let mut values = Vec::new();
            for &lam in &lambdas {
                let c = h.ec_identity(lam).map_err(|e| e.to_string())?;
                if !c.equal {
                    failed.push(lam.index());
                }
                if !within_hasse_bound(field.q(), c.count) {
                    outside.push(lam.index());
                }
                values.push(c.hyp.embed_f64());
            }
            let side = Side::new(failed.is_empty() && outside.is_empty())
                .with("curves", lambdas.len())
                .with("failed_lambda", failed)
                .with("outside_hasse", outside);
            Ok((side, values))
        },
        || {
            let fc = FloatCharacters::<f64>::new(field);
            let params = legendre_params(field);
            let q = field.q() as f64;
            let phi_m1 = Character::legendre(field).sign() as f64;
            let mut residual = 0.0f64;
            let mut values = Vec::new();
            for &lam in &lambdas {
                let count = ec_count(field, lam).map_err(|e| e.to_string())? as f64;
                let v = fc.hyp(&params, lam);
                let predicted = v * (q * phi_m1) + (1.0 + q);
                residual = residual.max(scaled_diff(Complex64::new(count, 0.0), predicted));
                values.push(v);
            }
            Ok((
                Side::new(residual <= tol).with("residual", residual),
                values,
            ))
        },
    )
}

fn identities(ctx: &FieldContext, backend: Backend, tol: f64) -> Result<Outcome, String> {
    let field = &ctx.field;
    let q = field.q() as i64;
    outcome(
        backend,
        || {
            let mut binomial_failures = 0usize;
            let mut norm_failures = 0usize;
            let mut norms_checked = 0usize;
            let mut values = Vec::new();
            for a in Character::all(field) {
                for b in Character::all(field) {
                    if !binomial_identity_check::<i64>(a, b).all() {
                        binomial_failures += 1;
                    }
                    let j = jacobi::<i64>(a, b);
                    if !a.is_trivial() && !b.is_trivial() && !a.mul(b).is_trivial() {
                        norms_checked += 1;
                        if (&j * &j.conj()).as_integer() != Some(q) {
                            norm_failures += 1;
                        }
                    }
                    values.push(j.embed_f64());
                }
            }
            let side = Side::new(binomial_failures == 0 && norm_failures == 0)
                .with("binomial_failures", binomial_failures)
                .with("norm_failures", norm_failures)
                .with("norms_checked", norms_checked);
            Ok((side, values))
        },
        || {
            let fc = FloatCharacters::<f64>::new(field);
            let n = field.order() as i64;
            let mut residual = 0.0f64;
            let mut values = Vec::new();
            for a in 0..n {
                for b in 0..n {
                    let j = fc.jacobi(a, b);
                    if a != 0 && b != 0 && (a + b) % n != 0 {
                        residual = residual.max((j.norm_sqr() - q as f64).abs() / q as f64);
                    }
                    let lhs = fc.binom(a, b);
                    let sign_b = fc.value(b, field.neg_one());
                    let sign_ab = fc.value(-(a + b), field.neg_one());
                    for rhs in [
                        fc.binom(a, a - b),
                        sign_b * fc.binom(b - a, b),
                        sign_ab * fc.binom(-b, -a),
                    ] {
                        residual = residual.max(scaled_diff(lhs, rhs));
                    }
                    values.push(j);
                }
            }
            Ok((
                Side::new(residual <= tol).with("residual", residual),
                values,
            ))
        },
    )
}

fn orthogonality(ctx: &FieldContext, backend: Backend, tol: f64) -> Result<Outcome, String> {
    let field = &ctx.field;
    let n = field.order() as i64;
    outcome(
        backend,
        || {
            let mut failures = 0usize;
            let mut values = Vec::new();
            for chi in Character::all(field) {
                let s = sum_over_field::<i64>(chi);
                let expect = if chi.is_trivial() { n } else { 0 };
                failures += usize::from(s.as_integer() != Some(expect));
                values.push(s.embed_f64());
            }
            for x in field.elements() {
                let s = sum_over_characters::<i64>(field, x);
                let expect = if x == ffchar::FieldElement::ONE { n } else { 0 };
                failures += usize::from(s.as_integer() != Some(expect));
                values.push(s.embed_f64());
            }
            Ok((Side::new(failures == 0).with("failures", failures), values))
        },
        || {
            let fc = FloatCharacters::<f64>::new(field);
            let mut residual = 0.0f64;
            let mut values = Vec::new();
            for l in 0..n {
                let s: Complex64 = field.elements().map(|x| fc.value(l, x)).sum();
                let expect = if l == 0 { n as f64 } else { 0.0 };
                residual = residual.max(scaled_diff(Complex64::new(expect, 0.0), s));
                values.push(s);
            }
            for x in field.elements() {
                let s: Complex64 = (0..n).map(|l| fc.value(l, x)).sum();
                let expect = if x == ffchar::FieldElement::ONE {
                    n as f64
                } else {
                    0.0
                };
                residual = residual.max(scaled_diff(Complex64::new(expect, 0.0), s));
                values.push(s);
            }
            Ok((
                Side::new(residual <= tol).with("residual", residual),
                values,
            ))
        },
    )
}
