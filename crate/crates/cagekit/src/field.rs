//! Exact arithmetic in GF(q) = GF(p^n) for prime powers q >= 2.
//!
//! Elements are encoded as integers in `0..q`: the value is the base-p
//! packing of the polynomial coefficients, `value = sum c_i * p^i`, so 0 is
//! the additive and 1 the multiplicative identity. The reduction modulus is
//! the lexicographically smallest monic irreducible of degree n under
//! coefficient-vector order `(c_0, c_1, ..., c_{n-1})`, which makes the
//! construction fully deterministic. For small fields all operations are
//! table lookups; larger fields fall back to direct polynomial arithmetic.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Fields up to this order get precomputed q*q operation tables.
const TABLE_LIMIT: u32 = 512;
/// Largest supported field order.
const MAX_Q: u64 = 1 << 16;
/// Largest supported extension degree (2^16 = 2^16, so 16 digits suffice).
const MAX_N: usize = 16;

/// An element of a [`Field`], encoded as an integer in `0..q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElem(u32);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    #[inline]
    pub fn value(self) -> u32 {
        self.0
    }

    /// Wraps an already-validated encoding (codec internals only).
    #[inline]
    pub(crate) fn from_raw(v: u32) -> FieldElem {
        FieldElem(v)
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl std::fmt::Display for FieldElem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Field parameters as they appear in JSON reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldInfo {
    pub p: u32,
    pub n: u32,
    pub q: u32,
    /// n+1 base-p coefficients of the reduction modulus, constant term first.
    pub modulus: Vec<u32>,
}

struct Tables {
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
}

/// A finite field GF(p^n) with a verified irreducible modulus.
pub struct Field {
    p: u32,
    n: u32,
    q: u32,
    modulus: Vec<u32>,
    tables: Option<Tables>,
}

impl Field {
    /// Constructs GF(q), checking that q is a prime power.
    pub fn new(q: u64) -> Result<Field> {
        if q > MAX_Q {
            return Err(Error::Construction(format!(
                "q = {q} exceeds the supported maximum 2^16"
            )));
        }
        let (p, n) = prime_power_split(q).ok_or(Error::NotPrimePower(q))?;
        let modulus = smallest_irreducible(p, n);
        let mut field = Field {
            p,
            n,
            q: q as u32,
            modulus,
            tables: None,
        };
        if field.q <= TABLE_LIMIT {
            field.tables = Some(field.build_tables());
        }
        Ok(field)
    }

    fn build_tables(&self) -> Tables {
        let q = self.q as usize;
        let mut add = vec![0u16; q * q];
        let mut mul = vec![0u16; q * q];
        let mut neg = vec![0u16; q];
        let mut inv = vec![0u16; q];
        for a in 0..q as u32 {
            neg[a as usize] = self.raw_neg(a) as u16;
            for b in 0..q as u32 {
                add[a as usize * q + b as usize] = self.raw_add(a, b) as u16;
                mul[a as usize * q + b as usize] = self.raw_mul(a, b) as u16;
            }
        }
        for a in 1..q {
            let row = &mul[a * q..(a + 1) * q];
            let b = row.iter().position(|&v| v == 1).expect("unit must exist");
            inv[a] = b as u16;
        }
        Tables { add, mul, neg, inv }
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.n
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.q
    }

    /// Coefficients of the reduction modulus, constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn info(&self) -> FieldInfo {
        FieldInfo {
            p: self.p,
            n: self.n,
            q: self.q,
            modulus: self.modulus.clone(),
        }
    }

    /// Renders the modulus as a polynomial in x.
    pub fn modulus_string(&self) -> String {
        let mut terms = Vec::new();
        for (i, &c) in self.modulus.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let t = match (i, c) {
                (0, c) => format!("{c}"),
                (1, 1) => "x".to_string(),
                (1, c) => format!("{c}x"),
                (i, 1) => format!("x^{i}"),
                (i, c) => format!("{c}x^{i}"),
            };
            terms.push(t);
        }
        terms.join("+")
    }

    #[inline]
    pub fn zero(&self) -> FieldElem {
        FieldElem(0)
    }

    #[inline]
    pub fn one(&self) -> FieldElem {
        FieldElem(1)
    }

    /// Wraps a raw encoding; panics if out of range.
    #[inline]
    pub fn elem(&self, v: u32) -> FieldElem {
        assert!(v < self.q, "element {v} out of range for GF({})", self.q);
        FieldElem(v)
    }

    pub fn try_elem(&self, v: u32) -> Result<FieldElem> {
        if v < self.q {
            Ok(FieldElem(v))
        } else {
            Err(Error::InvalidLabel(format!(
                "coordinate {v} out of range for GF({})",
                self.q
            )))
        }
    }

    /// All q elements in encoding order 0..q.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        (0..self.q).map(FieldElem)
    }

    #[inline]
    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        match &self.tables {
            Some(t) => FieldElem(t.add[(a.0 * self.q + b.0) as usize] as u32),
            None => FieldElem(self.raw_add(a.0, b.0)),
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldElem) -> FieldElem {
        match &self.tables {
            Some(t) => FieldElem(t.neg[a.0 as usize] as u32),
            None => FieldElem(self.raw_neg(a.0)),
        }
    }

    #[inline]
    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        match &self.tables {
            Some(t) => FieldElem(t.mul[(a.0 * self.q + b.0) as usize] as u32),
            None => FieldElem(self.raw_mul(a.0, b.0)),
        }
    }

    /// Doubling, i.e. the field value of "2a" (vanishes in characteristic 2).
    #[inline]
    pub fn double(&self, a: FieldElem) -> FieldElem {
        self.add(a, a)
    }

    pub fn inv(&self, a: FieldElem) -> Result<FieldElem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero(self.q));
        }
        match &self.tables {
            Some(t) => Ok(FieldElem(t.inv[a.0 as usize] as u32)),
            None => Ok(FieldElem(self.raw_pow(a.0, self.q as u64 - 2))),
        }
    }

    pub fn pow(&self, a: FieldElem, e: u64) -> FieldElem {
        let mut acc = FieldElem(1);
        let mut base = a;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    fn digits(&self, mut v: u32) -> [u32; MAX_N] {
        let mut out = [0u32; MAX_N];
        for d in out.iter_mut().take(self.n as usize) {
            *d = v % self.p;
            v /= self.p;
        }
        out
    }

    fn undigits(&self, d: &[u32]) -> u32 {
        let mut v = 0u32;
        for i in (0..self.n as usize).rev() {
            v = v * self.p + d[i];
        }
        v
    }

    fn raw_add(&self, a: u32, b: u32) -> u32 {
        if self.n == 1 {
            return (a + b) % self.p;
        }
        let da = self.digits(a);
        let db = self.digits(b);
        let mut out = [0u32; MAX_N];
        for i in 0..self.n as usize {
            out[i] = (da[i] + db[i]) % self.p;
        }
        self.undigits(&out)
    }

    fn raw_neg(&self, a: u32) -> u32 {
        if self.n == 1 {
            return (self.p - a % self.p) % self.p;
        }
        let da = self.digits(a);
        let mut out = [0u32; MAX_N];
        for i in 0..self.n as usize {
            out[i] = (self.p - da[i]) % self.p;
        }
        self.undigits(&out)
    }

    fn raw_mul(&self, a: u32, b: u32) -> u32 {
        if self.n == 1 {
            return ((a as u64 * b as u64) % self.p as u64) as u32;
        }
        let n = self.n as usize;
        let da = self.digits(a);
        let db = self.digits(b);
        let mut prod = [0u64; 2 * MAX_N];
        for i in 0..n {
            if da[i] == 0 {
                continue;
            }
            for j in 0..n {
                prod[i + j] += da[i] as u64 * db[j] as u64;
            }
        }
        for v in prod.iter_mut() {
            *v %= self.p as u64;
        }
        // Reduce modulo the monic modulus, top degree first.
        for i in (n..2 * n - 1).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for j in 0..n {
                let sub = c * self.modulus[j] as u64 % self.p as u64;
                prod[i - n + j] = (prod[i - n + j] + self.p as u64 - sub) % self.p as u64;
            }
        }
        let mut out = [0u32; MAX_N];
        for i in 0..n {
            out[i] = prod[i] as u32;
        }
        self.undigits(&out)
    }

    fn raw_pow(&self, a: u32, mut e: u64) -> u32 {
        let mut acc = 1u32;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.raw_mul(acc, base);
            }
            base = self.raw_mul(base, base);
            e >>= 1;
        }
        acc
    }
}

/// Splits q into (p, n) with q = p^n and p prime, or None.
fn prime_power_split(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2u64;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if p * p > q {
        p = q; // q itself is prime
    }
    let mut m = q;
    let mut n = 0u32;
    while m.is_multiple_of(p) {
        m /= p;
        n += 1;
    }
    if m == 1 {
        Some((p as u32, n))
    } else {
        None
    }
}

/// Remainder of num / den over F_p; den must be monic. Polynomials are
/// coefficient vectors, constant term first.
fn poly_rem(num: &[u32], den: &[u32], p: u32) -> Vec<u32> {
    let mut rem: Vec<u64> = num.iter().map(|&c| c as u64).collect();
    let dd = den.len() - 1;
    debug_assert_eq!(den[dd], 1, "divisor must be monic");
    while rem.len() > dd {
        let lead = *rem.last().unwrap() % p as u64;
        let top = rem.len() - 1;
        if lead != 0 {
            for (j, &d) in den[..dd].iter().enumerate() {
                let sub = lead * d as u64 % p as u64;
                let idx = top - dd + j;
                rem[idx] = (rem[idx] + p as u64 - sub) % p as u64;
            }
        }
        rem.pop();
    }
    rem.iter().map(|&c| (c % p as u64) as u32).collect()
}

fn is_zero_poly(p: &[u32]) -> bool {
    p.iter().all(|&c| c == 0)
}

/// True if the monic polynomial (constant term first, leading 1) has no
/// monic divisor of degree 1..=deg/2 over F_p. Exhaustive trial division.
fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let deg = poly.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for k in 0..count {
            let mut div = Vec::with_capacity(d + 1);
            let mut kk = k;
            for _ in 0..d {
                div.push((kk % p as u64) as u32);
                kk /= p as u64;
            }
            div.push(1);
            if is_zero_poly(&poly_rem(poly, &div, p)) {
                return false;
            }
        }
    }
    true
}

/// First monic irreducible of degree n over F_p in lexicographic order of
/// the coefficient vector (c_0, c_1, ..., c_{n-1}).
fn smallest_irreducible(p: u32, n: u32) -> Vec<u32> {
    if n == 1 {
        // Degree-1 polynomials are all irreducible; the lex-smallest is x.
        return vec![0, 1];
    }
    let n = n as usize;
    let count = (p as u64).pow(n as u32);
    for k in 0..count {
        // c_0 is the most significant digit of k so that k-order equals
        // lex order on (c_0, ..., c_{n-1}).
        let mut poly = vec![0u32; n + 1];
        let mut kk = k;
        for i in (0..n).rev() {
            poly[i] = (kk % p as u64) as u32;
            kk /= p as u64;
        }
        poly[n] = 1;
        if is_irreducible(&poly, p) {
            return poly;
        }
    }
    unreachable!("irreducible polynomials exist for every degree")
}
