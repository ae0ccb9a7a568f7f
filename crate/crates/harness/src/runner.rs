//! Expands a sweep into tasks, runs them on a worker pool and assembles the
//! report. Results are collected in task order, so the report does not
//! depend on the worker count.

use std::time::Instant;

use ffchar::sample::Lcg;
use rayon::prelude::*;

use crate::cache::Cache;
use crate::checks::{run, Task};
use crate::context::FieldContext;
use crate::report::Report;
use crate::spec::{Check, Selector, SweepSpec};

/// Generator for the samples of one (field, check): seeded with
/// `seed + 256 q + ordinal(check)`.
pub fn task_rng(seed: u64, q: u32, check: Check) -> Lcg {
    let ordinal = Check::ALL.iter().position(|c| *c == check).unwrap() as u64;
    Lcg::new(seed.wrapping_add((q as u64) << 8).wrapping_add(ordinal))
}

fn pick(sel: &Selector, n: u32, rng: &mut Lcg) -> i64 {
    match sel {
        Selector::List(v) => v[rng.below(v.len() as u32) as usize].rem_euclid(n as i64),
        _ => rng.below(n) as i64,
    }
}

/// All `(a, b)` pairs when neither side is sampled; otherwise as many
/// jointly drawn pairs as the larger sample asks for.
pub fn pairs(a: &Selector, b: &Selector, n: u32, rng: &mut Lcg) -> Vec<(i64, i64)> {
    let count = match (a, b) {
        (Selector::Sample(x), Selector::Sample(y)) => Some(*x.max(y)),
        (Selector::Sample(x), _) | (_, Selector::Sample(x)) => Some(*x),
        _ => None,
    };
    match count {
        Some(c) => (0..c).map(|_| (pick(a, n, rng), pick(b, n, rng))).collect(),
        None => {
            let bs = b.resolve(n, rng);
            a.resolve(n, rng)
                .into_iter()
                .flat_map(|x| bs.iter().map(move |&y| (x, y)))
                .collect()
        }
    }
}

pub fn tasks_for(spec: &SweepSpec, q: u32) -> Vec<Task> {
    let n = q - 1;
    let mut tasks = Vec::new();
    for &check in &spec.checks {
        let mut rng = task_rng(spec.seed, q, check);
        match check {
            Check::Lemma21 | Check::Thm1 => {
                for (a, b) in pairs(&spec.a, &spec.b, n, &mut rng) {
                    tasks.push(if check == Check::Lemma21 {
                        Task::Lemma21 { a, b }
                    } else {
                        Task::Thm1 { a, b }
                    });
                }
            }
            Check::Thm2 => {
                for a in spec.a.resolve(n, &mut rng).into_iter().filter(|&a| a != 0) {
                    for &k in &spec.k {
                        tasks.push(Task::Thm2 {
                            a,
                            k,
                            reading: spec.reading,
                        });
                    }
                }
            }
            Check::Gf if q >= 5 => tasks.push(Task::Gf),
            Check::Gf => {}
            Check::Euler => {
                for &arity in &spec.euler_n {
                    for t in rng.tuples(spec.samples, 2 * arity + 1, n) {
                        let t: Vec<i64> = t.into_iter().map(i64::from).collect();
                        tasks.push(Task::Euler {
                            top: t[..=arity].to_vec(),
                            bottom: t[arity + 1..].to_vec(),
                        });
                    }
                }
            }
            Check::Ec => tasks.push(Task::Ec),
            Check::Identities => tasks.push(Task::Identities),
            Check::Orthogonality => tasks.push(Task::Orthogonality),
        }
    }
    tasks
}

fn needs_jacobi(spec: &SweepSpec) -> bool {
    spec.backend.exact()
        && spec
            .checks
            .iter()
            .any(|c| matches!(c, Check::Thm2 | Check::Euler | Check::Ec))
}

pub fn run_sweep(spec: &SweepSpec, cache: &Cache) -> Result<Report, String> {
    let start = Instant::now();
    let contexts = spec
        .fields
        .iter()
        .map(|&pp| FieldContext::load(pp, cache, needs_jacobi(spec)))
        .collect::<Result<Vec<_>, _>>()?;
    let tasks: Vec<(usize, Task)> = contexts
        .iter()
        .enumerate()
        .flat_map(|(i, ctx)| {
            tasks_for(spec, ctx.field.q())
                .into_iter()
                .map(move |t| (i, t))
        })
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(spec.workers.max(1))
        .build()
        .map_err(|e| e.to_string())?;
    let records = pool.install(|| {
        tasks
            .par_iter()
            .map(|(i, t)| run(&contexts[*i], t, spec.backend, spec.tolerance))
            .collect()
    });
    Ok(Report::new(spec, &contexts, records, start.elapsed()))
}
