//! Sweep descriptions and their command-line syntax.

use std::fmt;
use std::str::FromStr;

use ffchar::sample::Lcg;
use ffchar::specmat::Thm2Reading;
use ffchar::PrimePower;
use serde_json::{json, Value};

use crate::UsageError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Check {
    Lemma21,
    Thm1,
    Thm2,
    Gf,
    Euler,
    Ec,
    Identities,
    Orthogonality,
}

impl Check {
    pub const ALL: [Check; 8] = [
        Check::Lemma21,
        Check::Thm1,
        Check::Thm2,
        Check::Gf,
        Check::Euler,
        Check::Ec,
        Check::Identities,
        Check::Orthogonality,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Lemma21 => "lemma21",
            Check::Thm1 => "thm1",
            Check::Thm2 => "thm2",
            Check::Gf => "gf",
            Check::Euler => "euler",
            Check::Ec => "ec",
            Check::Identities => "identities",
            Check::Orthogonality => "orthogonality",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = UsageError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| UsageError(format!("unknown check `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Backend {
    #[default]
    Exact,
    Float,
    Both,
}

impl Backend {
    pub fn exact(self) -> bool {
        self != Backend::Float
    }

    pub fn float(self) -> bool {
        self != Backend::Exact
    }

    pub fn name(self) -> &'static str {
        match self {
            Backend::Exact => "exact",
            Backend::Float => "float",
            Backend::Both => "both",
        }
    }
}

impl FromStr for Backend {
    type Err = UsageError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exact" => Ok(Backend::Exact),
            "float" => Ok(Backend::Float),
            "both" => Ok(Backend::Both),
            _ => Err(UsageError(format!("unknown backend `{s}`"))),
        }
    }
}

/// Character indices: every index, an explicit list, or a seeded sample.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum Selector {
    #[default]
    All,
    List(Vec<i64>),
    Sample(usize),
}

impl Selector {
    /// Indices mod `n`; sampling draws from the shared generator.
    pub fn resolve(&self, n: u32, rng: &mut Lcg) -> Vec<i64> {
        match self {
            Selector::All => (0..n as i64).collect(),
            Selector::List(v) => v.iter().map(|l| l.rem_euclid(n as i64)).collect(),
            Selector::Sample(count) => (0..*count).map(|_| rng.below(n) as i64).collect(),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Selector::All => json!("all"),
            Selector::List(v) => json!(v),
            Selector::Sample(c) => json!({ "sample": c }),
        }
    }
}

impl FromStr for Selector {
    type Err = UsageError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "all" {
            return Ok(Selector::All);
        }
        if let Some(c) = s.strip_prefix("sample:") {
            return c
                .parse()
                .map(Selector::Sample)
                .map_err(|_| UsageError(format!("bad sample count `{c}`")));
        }
        parse_list(s).map(Selector::List)
    }
}

/// `a,b,c` and inclusive ranges `a..b`, in any combination.
pub fn parse_list(s: &str) -> Result<Vec<i64>, UsageError> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let bad = || UsageError(format!("cannot parse `{part}`"));
        if let Some((lo, hi)) = part.split_once("..") {
            let lo: i64 = lo.parse().map_err(|_| bad())?;
            let hi: i64 = hi.parse().map_err(|_| bad())?;
            out.extend(lo..=hi);
        } else {
            out.push(part.parse().map_err(|_| bad())?);
        }
    }
    if out.is_empty() {
        return Err(UsageError(format!("empty list `{s}`")));
    }
    Ok(out)
}

/// Odd prime powers in a `q` list; ranges silently skip other integers,
/// explicit entries must be valid.
pub fn parse_orders(s: &str) -> Result<Vec<PrimePower>, UsageError> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let values = parse_list(part)?;
        let ranged = part.contains("..");
        for q in values {
            match PrimePower::from_order(q.max(0) as u64) {
                Ok(pp) => out.push(pp),
                Err(e) if !ranged => return Err(UsageError(format!("q = {q}: {e}"))),
                Err(_) => {}
            }
        }
    }
    if out.is_empty() {
        return Err(UsageError(format!("no odd prime powers in `{s}`")));
    }
    out.sort_by_key(|pp| pp.q());
    out.dedup();
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub fields: Vec<PrimePower>,
    pub a: Selector,
    pub b: Selector,
    pub k: Vec<u32>,
    /// Euler transform arities: `n + 1 F_n` from `n F_{n-1}`.
    pub euler_n: Vec<usize>,
    pub samples: usize,
    pub checks: Vec<Check>,
    pub backend: Backend,
    pub workers: usize,
    pub seed: u64,
    pub tolerance: f64,
    pub reading: Thm2Reading,
}

impl Default for SweepSpec {
    fn default() -> Self {
        Self {
            fields: Vec::new(),
            a: Selector::All,
            b: Selector::All,
            k: vec![2, 3, 4, 5],
            euler_n: vec![1, 2],
            samples: 20,
            checks: Check::ALL.to_vec(),
            backend: Backend::Exact,
            workers: 1,
            seed: 1,
            tolerance: 1e-9,
            reading: Thm2Reading::Stated,
        }
    }
}

impl SweepSpec {
    pub fn to_json(&self) -> Value {
        json!({
            "q": self.fields.iter().map(|f| f.q()).collect::<Vec<_>>(),
            "a": self.a.to_json(),
            "b": self.b.to_json(),
            "k": self.k,
            "euler_n": self.euler_n,
            "samples": self.samples,
            "checks": self.checks.iter().map(|c| c.name()).collect::<Vec<_>>(),
            "backend": self.backend.name(),
            "seed": self.seed,
            "tolerance": self.tolerance,
            "reading": reading_name(self.reading),
        })
    }
}

/// CLI spelling of a thm2 reading.
pub fn reading_name(r: Thm2Reading) -> &'static str {
    match r {
        Thm2Reading::Stated => "stated",
        Thm2Reading::ProductArgument => "product",
        Thm2Reading::CeilingHalf => "ceiling",
    }
}
