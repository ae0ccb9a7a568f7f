//! Deterministic construction of `F_q = F_p[t]/(f)` with log/exp tables.
//!
//! Elements are identified by their canonical index: the coefficient vector
//! of the reduced representative read as a base-`p` number, constant
//! coefficient least significant. That index order is the row/column order
//! of every matrix and vector in the crate.

use std::fmt;

use thiserror::Error;

/// Largest field order accepted by default.
pub const FIELD_CAP: u32 = 10_000;

const NO_LOG: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("p = {0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("extension degree must be at least 1")]
    DegreeZero,
    #[error("field order {q} exceeds the cap {cap}")]
    TooLarge { q: u64, cap: u32 },
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("discrete logarithm of zero is undefined")]
    ZeroLog,
    #[error("{0} is not an element of F_{1}")]
    OutOfRange(u64, u32),
    #[error("invalid field table: {0}")]
    InvalidTable(String),
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors by trial division.
pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimePower {
    p: u32,
    r: u32,
    q: u32,
}

impl PrimePower {
    pub fn new(p: u64, r: u32) -> Result<Self, FieldError> {
        Self::with_cap(p, r, FIELD_CAP)
    }

    pub fn with_cap(p: u64, r: u32, cap: u32) -> Result<Self, FieldError> {
        if p == 2 || !is_prime(p) {
            return Err(FieldError::NotOddPrime(p));
        }
        if r == 0 {
            return Err(FieldError::DegreeZero);
        }
        let q = p
            .checked_pow(r)
            .filter(|&q| q <= cap as u64)
            .ok_or(FieldError::TooLarge {
                q: p.saturating_pow(r),
                cap,
            })?;
        Ok(Self {
            p: p as u32,
            r,
            q: q as u32,
        })
    }

    /// Splits an odd prime power into `(p, r)`.
    pub fn from_order(q: u64) -> Result<Self, FieldError> {
        if q < 3 {
            return Err(FieldError::NotOddPrime(q));
        }
        let p = prime_factors(q)[0];
        let mut r = 0;
        let mut m = q;
        while m.is_multiple_of(p) {
            m /= p;
            r += 1;
        }
        if m != 1 {
            return Err(FieldError::NotOddPrime(q));
        }
        Self::new(p, r)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn q(&self) -> u32 {
        self.q
    }
}

impl fmt::Display for PrimePower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.r == 1 {
            write!(f, "F_{}", self.q)
        } else {
            write!(f, "F_{}^{}", self.p, self.r)
        }
    }
}

/// An element of some `FieldTable`, stored as its canonical index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: Self = Self(0);
    pub const ONE: Self = Self(1);

    pub fn from_index(i: u32) -> Self {
        Self(i)
    }

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

// Dense polynomials over F_p, low degree first, used only while building.
fn poly_mulmod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let r = modulus.len() - 1;
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    // modulus is monic
    for d in (r..prod.len()).rev() {
        let c = prod[d];
        if c == 0 {
            continue;
        }
        for k in 0..r {
            let sub = c * modulus[k] as u64 % p as u64;
            prod[d - r + k] = (prod[d - r + k] + p as u64 - sub) % p as u64;
        }
        prod[d] = 0;
    }
    prod.truncate(r);
    prod.resize(r, 0);
    prod.into_iter().map(|c| c as u32).collect()
}

/// Remainder of `a` modulo the monic `b`, both low degree first.
fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut rem: Vec<u64> = a.iter().map(|&c| c as u64).collect();
    let db = b.len() - 1;
    if rem.len() <= db {
        return a.to_vec();
    }
    for d in (db..rem.len()).rev() {
        let c = rem[d] % p as u64;
        if c == 0 {
            continue;
        }
        for k in 0..=db {
            let sub = c * b[k] as u64 % p as u64;
            rem[d - db + k] = (rem[d - db + k] + p as u64 - sub) % p as u64;
        }
    }
    rem.truncate(db);
    rem.into_iter().map(|c| c as u32).collect()
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
pub(crate) fn is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = f.len() - 1;
    if deg == 0 || f[deg] != 1 {
        return false;
    }
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for n in 0..count {
            let mut g = vec![0u32; d + 1];
            let mut m = n;
            for c in g.iter_mut().take(d) {
                *c = (m % p as u64) as u32;
                m /= p as u64;
            }
            g[d] = 1;
            if poly_rem(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Lexicographically smallest monic irreducible of degree `r`, comparing
/// coefficients from the constant term upward.
fn smallest_irreducible(p: u32, r: u32) -> Vec<u32> {
    let r = r as usize;
    let count = (p as u64).pow(r as u32);
    for n in 0..count {
        // c_0 is the most significant digit of n so that enumeration order is
        // lexicographic in (c_0, c_1, ..., c_{r-1}).
        let mut f = vec![0u32; r + 1];
        let mut m = n;
        for i in (0..r).rev() {
            f[i] = (m % p as u64) as u32;
            m /= p as u64;
        }
        f[r] = 1;
        if is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// The finite field `F_q` with a fixed generator and complete log tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldTable {
    pp: PrimePower,
    modulus: Vec<u32>,
    generator: FieldElement,
    dlog: Vec<u32>,
    exp: Vec<u32>,
    one_minus: Vec<u32>,
}

impl FieldTable {
    pub fn new(p: u64, r: u32) -> Result<Self, FieldError> {
        Self::build(PrimePower::new(p, r)?)
    }

    pub fn with_cap(p: u64, r: u32, cap: u32) -> Result<Self, FieldError> {
        Self::build(PrimePower::with_cap(p, r, cap)?)
    }

    pub fn from_order(q: u64) -> Result<Self, FieldError> {
        Self::build(PrimePower::from_order(q)?)
    }

    pub fn build(pp: PrimePower) -> Result<Self, FieldError> {
        let modulus = smallest_irreducible(pp.p, pp.r);
        let generator = Self::first_generator(pp, &modulus);
        let exp = Self::power_table(pp, &modulus, generator);
        Self::assemble(pp, modulus, generator, exp)
    }

    /// Rebuilds a table from stored parts, re-verifying every invariant.
    pub fn from_parts(
        p: u64,
        r: u32,
        modulus: Vec<u32>,
        generator: u32,
        dlog: &[u32],
    ) -> Result<Self, FieldError> {
        let pp = PrimePower::new(p, r)?;
        let bad = |m: &str| Err(FieldError::InvalidTable(m.to_string()));
        if modulus.len() != r as usize + 1 || modulus.iter().any(|&c| c >= pp.p) {
            return bad("modulus has wrong shape");
        }
        if !is_irreducible(&modulus, pp.p) {
            return bad("modulus is not a monic irreducible");
        }
        if generator == 0 || generator >= pp.q {
            return bad("generator out of range");
        }
        let generator = FieldElement(generator);
        let exp = Self::power_table(pp, &modulus, generator);
        let table = Self::assemble(pp, modulus, generator, exp)?;
        if dlog.len() != pp.q as usize - 1 {
            return bad("dlog table has wrong length");
        }
        for (i, &l) in dlog.iter().enumerate() {
            if table.dlog[i + 1] != l {
                return bad("dlog table disagrees with generator powers");
            }
        }
        Ok(table)
    }

    fn first_generator(pp: PrimePower, modulus: &[u32]) -> FieldElement {
        let order = pp.q as u64 - 1;
        let factors = prime_factors(order);
        (1..pp.q)
            .map(FieldElement)
            .find(|&c| {
                let digits = digits_of(c.0, pp);
                factors.iter().all(|&l| {
                    let e = pow_digits(&digits, order / l, modulus, pp.p);
                    !is_one(&e)
                })
            })
            .expect("F_q^x is cyclic")
    }

    fn power_table(pp: PrimePower, modulus: &[u32], g: FieldElement) -> Vec<u32> {
        let gd = digits_of(g.0, pp);
        let mut cur = digits_of(1, pp);
        let mut exp = Vec::with_capacity(pp.q as usize - 1);
        for _ in 0..pp.q - 1 {
            exp.push(index_of(&cur, pp.p));
            cur = poly_mulmod(&cur, &gd, modulus, pp.p);
        }
        exp
    }

    fn assemble(
        pp: PrimePower,
        modulus: Vec<u32>,
        generator: FieldElement,
        exp: Vec<u32>,
    ) -> Result<Self, FieldError> {
        let q = pp.q as usize;
        let mut dlog = vec![NO_LOG; q];
        for (m, &x) in exp.iter().enumerate() {
            if x == 0 || dlog[x as usize] != NO_LOG {
                return Err(FieldError::InvalidTable(
                    "generator does not have order q-1".into(),
                ));
            }
            dlog[x as usize] = m as u32;
        }
        let mut table = Self {
            pp,
            modulus,
            generator,
            dlog,
            exp,
            one_minus: Vec::new(),
        };
        table.one_minus = (0..pp.q)
            .map(|x| table.sub(FieldElement::ONE, FieldElement(x)).0)
            .collect();
        Ok(table)
    }

    pub fn prime_power(&self) -> PrimePower {
        self.pp
    }

    pub fn p(&self) -> u32 {
        self.pp.p
    }

    pub fn r(&self) -> u32 {
        self.pp.r
    }

    pub fn q(&self) -> u32 {
        self.pp.q
    }

    /// Order of the multiplicative group, `q - 1`.
    pub fn order(&self) -> u32 {
        self.pp.q - 1
    }

    /// Modulus coefficients, low degree first, monic.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn generator(&self) -> FieldElement {
        self.generator
    }

    /// Discrete logs of `1, 2, ..., q-1` in canonical order.
    pub fn dlog_table(&self) -> &[u32] {
        &self.dlog[1..]
    }

    pub fn element(&self, index: u32) -> Result<FieldElement, FieldError> {
        if index < self.pp.q {
            Ok(FieldElement(index))
        } else {
            Err(FieldError::OutOfRange(index as u64, self.pp.q))
        }
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> FieldElement {
        let p = self.pp.p;
        let mut digits = vec![0u32; self.pp.r as usize];
        for (i, &c) in coeffs.iter().enumerate() {
            digits[i % self.pp.r as usize] = c % p;
        }
        FieldElement(index_of(&digits, p))
    }

    pub fn coeffs(&self, x: FieldElement) -> Vec<u32> {
        digits_of(x.0, self.pp)
    }

    /// Reduction of an integer into the prime subfield.
    pub fn from_int(&self, v: i64) -> FieldElement {
        FieldElement(v.rem_euclid(self.pp.p as i64) as u32)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.pp.q).map(FieldElement)
    }

    /// `F_q^x` in canonical order.
    pub fn units(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (1..self.pp.q).map(FieldElement)
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.digitwise(a, b, |x, y, p| (x + y) % p)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.digitwise(a, b, |x, y, p| (x + p - y) % p)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        self.sub(FieldElement::ZERO, a)
    }

    fn digitwise(
        &self,
        a: FieldElement,
        b: FieldElement,
        op: impl Fn(u32, u32, u32) -> u32,
    ) -> FieldElement {
        let p = self.pp.p;
        if self.pp.r == 1 {
            return FieldElement(op(a.0, b.0, p));
        }
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.pp.r {
            out += op(x % p, y % p, p) * place;
            x /= p;
            y /= p;
            place *= p;
        }
        FieldElement(out)
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.is_zero() || b.is_zero() {
            return FieldElement::ZERO;
        }
        let n = self.order() as u64;
        let e = (self.dlog[a.0 as usize] as u64 + self.dlog[b.0 as usize] as u64) % n;
        FieldElement(self.exp[e as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, FieldError> {
        if a.is_zero() {
            return Err(FieldError::ZeroInverse);
        }
        let n = self.order();
        let e = (n - self.dlog[a.0 as usize]) % n;
        Ok(FieldElement(self.exp[e as usize]))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        if a.is_zero() {
            return if e == 0 { FieldElement::ONE } else { a };
        }
        let n = self.order() as u64;
        let l = (self.dlog[a.0 as usize] as u64 * (e % n)) % n;
        FieldElement(self.exp[l as usize])
    }

    /// `g^m` for the fixed generator.
    pub fn exp(&self, m: u64) -> FieldElement {
        FieldElement(self.exp[(m % self.order() as u64) as usize])
    }

    pub fn dlog(&self, x: FieldElement) -> Result<u32, FieldError> {
        match self.dlog.get(x.0 as usize) {
            None => Err(FieldError::OutOfRange(x.0 as u64, self.pp.q)),
            Some(&NO_LOG) => Err(FieldError::ZeroLog),
            Some(&l) => Ok(l),
        }
    }

    /// Log lookup for callers that have already excluded zero.
    pub(crate) fn log_unchecked(&self, x: FieldElement) -> u32 {
        self.dlog[x.0 as usize]
    }

    pub fn one_minus(&self, x: FieldElement) -> FieldElement {
        FieldElement(self.one_minus[x.0 as usize])
    }

    pub fn neg_one(&self) -> FieldElement {
        self.exp(self.order() as u64 / 2)
    }

    /// Log/exp-free multiplication: schoolbook polynomial product reduced by
    /// the modulus. Used to check the tables against first principles.
    pub fn mul_by_polynomial(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let prod = poly_mulmod(
            &digits_of(a.0, self.pp),
            &digits_of(b.0, self.pp),
            &self.modulus,
            self.pp.p,
        );
        FieldElement(index_of(&prod, self.pp.p))
    }

    /// Field elements other than 0 and 1 (the index set of the quadratic
    /// character matrix).
    pub fn exceptional_free(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (2..self.pp.q).map(FieldElement)
    }
}

fn digits_of(mut x: u32, pp: PrimePower) -> Vec<u32> {
    let mut d = vec![0u32; pp.r as usize];
    for c in d.iter_mut() {
        *c = x % pp.p;
        x /= pp.p;
    }
    d
}

fn index_of(digits: &[u32], p: u32) -> u32 {
    digits.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn is_one(d: &[u32]) -> bool {
    d[0] == 1 && d[1..].iter().all(|&c| c == 0)
}

fn pow_digits(base: &[u32], mut e: u64, modulus: &[u32], p: u32) -> Vec<u32> {
    let mut result = vec![0u32; base.len()];
    result[0] = 1;
    let mut b = base.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            result = poly_mulmod(&result, &b, modulus, p);
        }
        b = poly_mulmod(&b, &b, modulus, p);
        e >>= 1;
    }
    result
}
