use ffchar::cyclotomic::Cyclotomic;
use ffchar::hypergeometric::{BinomSource, DirectSums, Hypergeometric};
use ffchar::sums::{JacobiTable, JACOBI_TABLE_CAP};
use ffchar::{FieldTable, PrimePower};
use serde_json::{json, Value};

use crate::cache::{Cache, CacheStatus};

/// Everything the checks of one field share. Immutable once built.
pub struct FieldContext {
    pub field: FieldTable,
    pub jacobi: Option<JacobiTable<i64>>,
    field_status: CacheStatus,
    jacobi_status: Option<CacheStatus>,
}

impl FieldContext {
    pub fn load(pp: PrimePower, cache: &Cache, with_jacobi: bool) -> Result<Self, String> {
        let (field, field_status) = cache.field(pp)?;
        let (jacobi, jacobi_status) = if with_jacobi && field.q() <= JACOBI_TABLE_CAP {
            let (t, s) = cache.jacobi(&field)?;
            (Some(t), Some(s))
        } else {
            (None, None)
        };
        Ok(Self {
            field,
            jacobi,
            field_status,
            jacobi_status,
        })
    }

    pub fn sums(&self) -> Sums<'_> {
        Sums {
            field: &self.field,
            table: self.jacobi.as_ref(),
        }
    }

    pub fn describe(&self) -> Value {
        let f = &self.field;
        json!({
            "q": f.q(),
            "p": f.p(),
            "r": f.r(),
            "modulus": f.modulus(),
            "generator": f.generator().index(),
            "cache": {
                "field": self.field_status.name(),
                "jacobi": self.jacobi_status.map(CacheStatus::name),
            },
        })
    }
}

/// The cached table when there is one, direct sums otherwise.
#[derive(Clone, Copy)]
pub struct Sums<'a> {
    field: &'a FieldTable,
    table: Option<&'a JacobiTable<i64>>,
}

impl BinomSource<i64> for Sums<'_> {
    fn binom_numerator(&self, a: i64, b: i64) -> Cyclotomic<i64> {
        match self.table {
            Some(t) => t.binom_numerator(a, b),
            None => DirectSums(self.field).binom_numerator(a, b),
        }
    }
}

impl<'a> Sums<'a> {
    pub fn hyp<'s>(&'s self) -> Hypergeometric<'s, i64, Sums<'a>> {
        Hypergeometric::new(self.field, self)
    }
}
