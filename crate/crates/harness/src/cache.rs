//! On-disk caches for field tables and Jacobi tables.
//!
//! Files are JSON with a SHA-256 digest of their payload. Loads re-verify
//! the digest and the field axioms (fields) or a handful of freshly
//! computed sums (Jacobi tables); anything that fails is rebuilt with a
//! warning on stderr.

use std::fs;
use std::path::{Path, PathBuf};

use ffchar::characters::Character;
use ffchar::sums::{jacobi, JacobiTable};
use ffchar::{FieldTable, PrimePower};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

pub const CACHE_ENV: &str = "FFCHAR_CACHE_DIR";

/// Entries of the Jacobi table recomputed on every load.
const SPOT_CHECKS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CacheStatus {
    Hit,
    Built,
    Rebuilt,
    Disabled,
}

impl CacheStatus {
    pub fn name(self) -> &'static str {
        match self {
            CacheStatus::Hit => "hit",
            CacheStatus::Built => "built",
            CacheStatus::Rebuilt => "rebuilt",
            CacheStatus::Disabled => "disabled",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Cache {
    dir: Option<PathBuf>,
}

fn digest(payload: &Value) -> String {
    hex::encode(Sha256::digest(payload.to_string().as_bytes()))
}

fn envelope(payload: Value) -> Value {
    json!({ "digest": digest(&payload), "payload": payload })
}

fn open_envelope(text: &str) -> Result<Value, String> {
    let value: Value = serde_json::from_str(text).map_err(|e| e.to_string())?;
    let payload = value.get("payload").ok_or("missing payload")?;
    let stored = value
        .get("digest")
        .and_then(Value::as_str)
        .ok_or("missing digest")?;
    if digest(payload) != stored {
        return Err("digest mismatch".into());
    }
    Ok(payload.clone())
}

fn as_u32s(v: &Value) -> Option<Vec<u32>> {
    v.as_array()?
        .iter()
        .map(|x| x.as_u64().and_then(|x| u32::try_from(x).ok()))
        .collect()
}

fn field_payload(field: &FieldTable) -> Value {
    json!({
        "p": field.p(),
        "r": field.r(),
        "modulus": field.modulus(),
        "generator": field.generator().index(),
        "dlog": field.dlog_table(),
    })
}

fn field_from_payload(pp: PrimePower, payload: &Value) -> Result<FieldTable, String> {
    let get = |k: &str| payload.get(k).ok_or(format!("missing {k}"));
    let p = get("p")?.as_u64().ok_or("bad p")?;
    let r = get("r")?.as_u64().ok_or("bad r")? as u32;
    if p != pp.p() as u64 || r != pp.r() {
        return Err("cached field has different parameters".into());
    }
    let modulus = as_u32s(get("modulus")?).ok_or("bad modulus")?;
    let generator = get("generator")?.as_u64().ok_or("bad generator")? as u32;
    let dlog = as_u32s(get("dlog")?).ok_or("bad dlog table")?;
    FieldTable::from_parts(p, r, modulus, generator, &dlog).map_err(|e| e.to_string())
}

fn jacobi_payload(field: &FieldTable, table: &JacobiTable<i64>) -> Value {
    json!({
        "p": field.p(),
        "r": field.r(),
        "rows": table.canonical_rows(),
    })
}

fn jacobi_from_payload(field: &FieldTable, payload: &Value) -> Result<JacobiTable<i64>, String> {
    if payload.get("p").and_then(Value::as_u64) != Some(field.p() as u64)
        || payload.get("r").and_then(Value::as_u64) != Some(field.r() as u64)
    {
        return Err("cached table has different parameters".into());
    }
    let rows: Vec<Vec<i64>> = payload
        .get("rows")
        .and_then(Value::as_array)
        .ok_or("missing rows")?
        .iter()
        .map(|row| {
            row.as_array()
                .and_then(|r| r.iter().map(Value::as_i64).collect::<Option<Vec<_>>>())
        })
        .collect::<Option<_>>()
        .ok_or("bad rows")?;
    let table = JacobiTable::from_canonical(field, rows).map_err(|e| e.to_string())?;
    let n = field.order() as i64;
    let mut rng = ffchar::sample::Lcg::new(field.q() as u64);
    for _ in 0..SPOT_CHECKS {
        let (a, b) = (rng.below(n as u32) as i64, rng.below(n as u32) as i64);
        let fresh = jacobi::<i64>(Character::new(field, a), Character::new(field, b));
        if *table.get(a, b) != fresh {
            return Err(format!(
                "entry ({a}, {b}) disagrees with a fresh computation"
            ));
        }
    }
    Ok(table)
}

impl Cache {
    pub fn disabled() -> Self {
        Self { dir: None }
    }

    pub fn at(dir: impl Into<PathBuf>) -> Self {
        Self {
            dir: Some(dir.into()),
        }
    }

    /// `--cache-dir` wins over the environment; `--no-cache` over both.
    pub fn from_options(dir: Option<PathBuf>, no_cache: bool) -> Self {
        if no_cache {
            return Self::disabled();
        }
        match dir.or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from)) {
            Some(d) => Self::at(d),
            None => Self::disabled(),
        }
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    pub fn field_path(&self, pp: PrimePower) -> Option<PathBuf> {
        self.dir
            .as_ref()
            .map(|d| d.join(format!("field-{}-{}.json", pp.p(), pp.r())))
    }

    pub fn jacobi_path(&self, pp: PrimePower) -> Option<PathBuf> {
        self.dir
            .as_ref()
            .map(|d| d.join(format!("jacobi-{}-{}.json", pp.p(), pp.r())))
    }

    fn load_or_build<T>(
        &self,
        path: Option<PathBuf>,
        what: &str,
        load: impl FnOnce(&Value) -> Result<T, String>,
        build: impl FnOnce() -> Result<T, String>,
        payload: impl FnOnce(&T) -> Value,
    ) -> Result<(T, CacheStatus), String> {
        let Some(path) = path else {
            return Ok((build()?, CacheStatus::Disabled));
        };
        let mut status = CacheStatus::Built;
        if let Ok(text) = fs::read_to_string(&path) {
            match open_envelope(&text).and_then(|p| load(&p)) {
                Ok(v) => return Ok((v, CacheStatus::Hit)),
                Err(e) => {
                    eprintln!(
                        "warning: {what} cache {} is invalid ({e}); rebuilding",
                        path.display()
                    );
                    status = CacheStatus::Rebuilt;
                }
            }
        }
        let value = build()?;
        if let Some(parent) = path.parent() {
            fs::create_dir_all(parent).map_err(|e| e.to_string())?;
        }
        fs::write(&path, envelope(payload(&value)).to_string()).map_err(|e| e.to_string())?;
        Ok((value, status))
    }

    pub fn field(&self, pp: PrimePower) -> Result<(FieldTable, CacheStatus), String> {
        self.load_or_build(
            self.field_path(pp),
            "field",
            |p| field_from_payload(pp, p),
            || FieldTable::build(pp).map_err(|e| e.to_string()),
            field_payload,
        )
    }

    pub fn jacobi(&self, field: &FieldTable) -> Result<(JacobiTable<i64>, CacheStatus), String> {
        self.load_or_build(
            self.jacobi_path(field.prime_power()),
            "jacobi",
            |p| jacobi_from_payload(field, p),
            || JacobiTable::new(field).map_err(|e| e.to_string()),
            |t| jacobi_payload(field, t),
        )
    }

    /// Removes cached files for `pp`, or every cache file when `None`.
    pub fn clear(&self, pp: Option<PrimePower>) -> std::io::Result<usize> {
        let Some(dir) = &self.dir else {
            return Ok(0);
        };
        let mut removed = 0;
        let targets: Vec<PathBuf> = match pp {
            Some(pp) => [self.field_path(pp), self.jacobi_path(pp)]
                .into_iter()
                .flatten()
                .collect(),
            None => match fs::read_dir(dir) {
                Ok(entries) => entries
                    .filter_map(Result::ok)
                    .map(|e| e.path())
                    .filter(|p| {
                        let name = p.file_name().and_then(|n| n.to_str()).unwrap_or("");
                        (name.starts_with("field-") || name.starts_with("jacobi-"))
                            && name.ends_with(".json")
                    })
                    .collect(),
                Err(_) => Vec::new(),
            },
        };
        for t in targets {
            if t.exists() {
                fs::remove_file(t)?;
                removed += 1;
            }
        }
        Ok(removed)
    }
}
