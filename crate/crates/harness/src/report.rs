//! Report assembly. Keys are sorted (serde_json maps are ordered) and all
//! run-dependent data (timings, cache hits) sits under `runtime`.

use std::collections::BTreeMap;
use std::time::Duration;

use serde_json::{json, Map, Value};

use crate::checks::Record;
use crate::context::FieldContext;
use crate::spec::{Check, SweepSpec};

#[derive(Debug, Clone)]
pub struct Report {
    pub spec: Value,
    pub fields: Vec<Value>,
    pub cache: Vec<Value>,
    pub records: Vec<Record>,
    pub elapsed: Duration,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VariantTally {
    pub lemma: usize,
    pub stated: usize,
    pub indistinguishable: usize,
    pub none: usize,
}

impl VariantTally {
    /// Every distinguishing record picked the same variant.
    pub fn consistent(&self) -> bool {
        self.none == 0 && (self.lemma == 0 || self.stated == 0)
    }
}

fn millis(d: Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

impl Report {
    pub fn new(
        spec: &SweepSpec,
        contexts: &[FieldContext],
        records: Vec<Record>,
        elapsed: Duration,
    ) -> Self {
        let described: Vec<Value> = contexts.iter().map(FieldContext::describe).collect();
        let mut fields = Vec::new();
        let mut cache = Vec::new();
        for mut d in described {
            let c = d.as_object_mut().unwrap().remove("cache").unwrap();
            cache.push(json!({ "q": d["q"], "status": c }));
            fields.push(d);
        }
        Self {
            spec: spec.to_json(),
            fields,
            cache,
            records,
            elapsed,
        }
    }

    pub fn thm1_tally(&self) -> VariantTally {
        let mut t = VariantTally::default();
        for r in self.records.iter().filter(|r| r.check == Check::Thm1) {
            match r.winner() {
                Some("lemma") => t.lemma += 1,
                Some("stated") => t.stated += 1,
                Some("indistinguishable") => t.indistinguishable += 1,
                _ => t.none += 1,
            }
        }
        t
    }

    /// Every asserted record passed and the thm1 tally is consistent.
    pub fn pass(&self) -> bool {
        self.records.iter().filter(|r| r.asserted).all(Record::pass)
            && self.thm1_tally().consistent()
    }

    pub fn exit_code(&self) -> i32 {
        if self.pass() {
            0
        } else {
            1
        }
    }

    pub fn summary(&self) -> Value {
        let mut by_check: BTreeMap<&str, [usize; 3]> = BTreeMap::new();
        for r in &self.records {
            let e = by_check.entry(r.check.name()).or_default();
            match r.verdict() {
                "pass" => e[0] += 1,
                "fail" => e[1] += 1,
                _ => e[2] += 1,
            }
        }
        let by_check: Map<String, Value> = by_check
            .into_iter()
            .map(|(k, [p, f, e])| (k.to_string(), json!({ "pass": p, "fail": f, "error": e })))
            .collect();
        let count = |v: &str| self.records.iter().filter(|r| r.verdict() == v).count();
        let t = self.thm1_tally();
        json!({
            "records": self.records.len(),
            "passed": count("pass"),
            "failed": count("fail"),
            "errors": count("error"),
            "unasserted": self.records.iter().filter(|r| !r.asserted).count(),
            "by_check": by_check,
            "thm1_variants": {
                "lemma": t.lemma,
                "stated": t.stated,
                "indistinguishable": t.indistinguishable,
                "none": t.none,
                "consistent": t.consistent(),
            },
            "verdict": if self.pass() { "pass" } else { "fail" },
        })
    }

    pub fn to_json(&self) -> Value {
        let records: Vec<Value> = self
            .records
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut v = r.to_json();
                v["id"] = json!(i);
                v
            })
            .collect();
        let timings: Vec<Value> = self
            .records
            .iter()
            .map(|r| json!(millis(r.elapsed)))
            .collect();
        json!({
            "tool": { "name": "ffchar", "version": env!("CARGO_PKG_VERSION") },
            "spec": self.spec,
            "fields": self.fields,
            "records": records,
            "summary": self.summary(),
            "runtime": {
                "total_ms": millis(self.elapsed),
                "record_ms": timings,
                "cache": self.cache,
            },
        })
    }

    /// Pretty JSON with a trailing newline.
    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).unwrap();
        s.push('\n');
        s
    }

    /// The report without the `runtime` subtree.
    pub fn stable_json(&self) -> Value {
        let mut v = self.to_json();
        v.as_object_mut().unwrap().remove("runtime");
        v
    }
}
