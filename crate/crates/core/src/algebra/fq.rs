//! Finite fields `F_q`, `q = p^m <= 2^16`.
//!
//! Elements are stored as their coordinate vector in the power basis
//! `1, w, ..., w^{m-1}` of `F_p[w]/(f)`, packed base `p` into a `u32`
//! (`index = c_0 + c_1 p + ...`). Multiplication goes through discrete
//! log tables built once per field; addition is digit-wise.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, Mutex, OnceLock};

use super::prime::{factorize, is_prime};
use super::AlgebraError;

/// Largest supported field size.
pub const MAX_FIELD_SIZE: u64 = 1 << 16;

/// Identity of a field: a hash of `(p, modulus)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldId(pub u64);

/// An element of some `F_q`. Carries the id of its field so that mixing
/// elements of different fields can be detected.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FqElem {
    field: FieldId,
    v: u32,
}

impl FqElem {
    pub fn field_id(&self) -> FieldId {
        self.field
    }

    /// Packed base-`p` coordinate index in `0..q`.
    pub fn index(&self) -> u32 {
        self.v
    }

    pub fn is_zero(&self) -> bool {
        self.v == 0
    }
}

struct FqInner {
    p: u32,
    m: u32,
    q: u32,
    modulus: Vec<u32>,
    id: FieldId,
    primitive: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
    root: Vec<u32>,
    add_table: Option<Vec<u16>>,
    as_table: OnceLock<Vec<u32>>,
    trace_one: u32,
}

/// The field `F_p[w]/(modulus)`. Cheap to clone.
#[derive(Clone)]
pub struct Fq {
    inner: Arc<FqInner>,
}

impl PartialEq for Fq {
    fn eq(&self, other: &Self) -> bool {
        self.inner.id == other.inner.id
    }
}

impl Eq for Fq {}

impl fmt::Debug for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F({},{}) mod {:?}", self.inner.p, self.inner.m, self.inner.modulus)
    }
}

fn field_cache() -> &'static Mutex<HashMap<(u64, u32), Fq>> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, u32), Fq>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

impl Fq {
    /// `F_{p^m}` with the canonical modulus: the first monic primitive
    /// polynomial of degree `m` when lower coefficients are read as a
    /// base-`p` integer. Fields are memoized per `(p, m)`.
    pub fn new(p: u64, m: u32) -> Result<Fq, AlgebraError> {
        if !is_prime(p) {
            return Err(AlgebraError::CompositeP(p));
        }
        if m == 0 {
            return Err(AlgebraError::InvalidDegree(0));
        }
        let q = super::prime::checked_pow(p, m).filter(|&q| q <= MAX_FIELD_SIZE);
        let Some(q) = q else {
            return Err(AlgebraError::FieldTooLarge { p, m });
        };
        if let Some(f) = field_cache().lock().unwrap().get(&(p, m)) {
            return Ok(f.clone());
        }
        let modulus = canonical_modulus(p as u32, m, q as u32);
        let f = Fq::build(p as u32, m, modulus);
        field_cache().lock().unwrap().insert((p, m), f.clone());
        Ok(f)
    }

    /// Prime field `F_p`.
    pub fn prime(p: u64) -> Result<Fq, AlgebraError> {
        Fq::new(p, 1)
    }

    /// `F_p[w]/(f)` for a caller-chosen monic irreducible `f`, given by its
    /// coefficients from the constant term upwards.
    pub fn with_modulus(p: u64, modulus: &[u32]) -> Result<Fq, AlgebraError> {
        if !is_prime(p) {
            return Err(AlgebraError::CompositeP(p));
        }
        let p32 = p as u32;
        let mut f: Vec<u32> = modulus.iter().map(|&c| c % p32).collect();
        fp_trim(&mut f);
        if f.len() < 2 {
            return Err(AlgebraError::InvalidDegree(0));
        }
        let m = (f.len() - 1) as u32;
        if *f.last().unwrap() != 1 {
            return Err(AlgebraError::ReducibleModulus);
        }
        let q = super::prime::checked_pow(p, m).filter(|&q| q <= MAX_FIELD_SIZE);
        if q.is_none() {
            return Err(AlgebraError::FieldTooLarge { p, m });
        }
        if !fp_is_irreducible(&f, p32) {
            return Err(AlgebraError::ReducibleModulus);
        }
        Ok(Fq::build(p32, m, f))
    }

    fn build(p: u32, m: u32, modulus: Vec<u32>) -> Fq {
        let q = p.pow(m);
        let id = {
            let mut h = std::collections::hash_map::DefaultHasher::new();
            (p, &modulus).hash(&mut h);
            FieldId(h.finish())
        };
        // find a generator of F_q^* by brute force
        let order = (q - 1) as u64;
        let primes: Vec<u64> = factorize(order).into_iter().map(|(l, _)| l).collect();
        let slow_pow = |a: u32, mut e: u64| {
            let mut base = a;
            let mut acc = 1u32;
            while e > 0 {
                if e & 1 == 1 {
                    acc = mul_slow(acc, base, p, m, &modulus);
                }
                base = mul_slow(base, base, p, m, &modulus);
                e >>= 1;
            }
            acc
        };
        let primitive = if q == 2 {
            1
        } else {
            (2..q)
                .chain(1..2)
                .find(|&g| {
                    slow_pow(g, order) == 1 && primes.iter().all(|&l| slow_pow(g, order / l) != 1)
                })
                .expect("multiplicative group of a field is cyclic")
        };
        let n = (q - 1) as usize;
        let mut exp = vec![0u32; 2 * n.max(1)];
        let mut log = vec![0u32; q as usize];
        let mut cur = 1u32;
        for i in 0..n {
            exp[i] = cur;
            exp[i + n] = cur;
            log[cur as usize] = i as u32;
            cur = mul_slow(cur, primitive, p, m, &modulus);
        }
        let add_table = if q <= 256 {
            let mut t = vec![0u16; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    t[(a * q + b) as usize] = add_digits(a, b, p, m) as u16;
                }
            }
            Some(t)
        } else {
            None
        };
        let mut inner = FqInner {
            p,
            m,
            q,
            modulus,
            id,
            primitive,
            exp,
            log,
            root: Vec::new(),
            add_table,
            as_table: OnceLock::new(),
            trace_one: 0,
        };
        let mut root = vec![0u32; q as usize];
        for a in 0..q {
            let ap = raw_pow(&inner, a, p as u64);
            root[ap as usize] = a;
        }
        inner.root = root;
        inner.trace_one = (0..q)
            .find(|&a| raw_trace(&inner, a) == 1)
            .expect("trace is surjective onto F_p");
        Fq { inner: Arc::new(inner) }
    }

    pub fn p(&self) -> u32 {
        self.inner.p
    }

    pub fn m(&self) -> u32 {
        self.inner.m
    }

    pub fn q(&self) -> u32 {
        self.inner.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    pub fn id(&self) -> FieldId {
        self.inner.id
    }

    #[inline]
    fn mk(&self, v: u32) -> FqElem {
        FqElem { field: self.inner.id, v }
    }

    pub fn zero(&self) -> FqElem {
        self.mk(0)
    }

    pub fn one(&self) -> FqElem {
        self.mk(1)
    }

    /// Image of an integer in the prime field.
    pub fn from_int(&self, n: i64) -> FqElem {
        self.mk(n.rem_euclid(self.inner.p as i64) as u32)
    }

    pub fn from_index(&self, v: u32) -> Result<FqElem, AlgebraError> {
        if v < self.inner.q {
            Ok(self.mk(v))
        } else {
            Err(AlgebraError::ElementOutOfRange(v as u64))
        }
    }

    /// Element with the given power-basis coordinates (missing ones are 0).
    pub fn elem(&self, coeffs: &[u32]) -> Result<FqElem, AlgebraError> {
        if coeffs.len() > self.inner.m as usize {
            return Err(AlgebraError::ElementOutOfRange(coeffs.len() as u64));
        }
        let mut v = 0u32;
        for &c in coeffs.iter().rev() {
            v = v * self.inner.p + c % self.inner.p;
        }
        Ok(self.mk(v))
    }

    pub fn coeffs(&self, a: FqElem) -> Vec<u32> {
        let mut v = a.v;
        (0..self.inner.m)
            .map(|_| {
                let d = v % self.inner.p;
                v /= self.inner.p;
                d
            })
            .collect()
    }

    /// The class of `w` in `F_p[w]/(f)`.
    pub fn gen_w(&self) -> FqElem {
        if self.inner.m == 1 {
            // the modulus is linear, `w` is its root
            self.neg(self.mk(self.inner.modulus[0]))
        } else {
            self.mk(self.inner.p)
        }
    }

    pub fn primitive_element(&self) -> FqElem {
        self.mk(self.inner.primitive)
    }

    pub fn contains(&self, a: FqElem) -> bool {
        a.field == self.inner.id && a.v < self.inner.q
    }

    pub fn elements(&self) -> impl Iterator<Item = FqElem> + '_ {
        (0..self.inner.q).map(move |v| self.mk(v))
    }

    #[inline]
    pub fn add(&self, a: FqElem, b: FqElem) -> FqElem {
        debug_assert!(a.field == self.inner.id && b.field == self.inner.id);
        let inner = &*self.inner;
        let v = if inner.m == 1 {
            let s = a.v + b.v;
            if s >= inner.p {
                s - inner.p
            } else {
                s
            }
        } else if inner.p == 2 {
            a.v ^ b.v
        } else if let Some(t) = &inner.add_table {
            t[(a.v * inner.q + b.v) as usize] as u32
        } else {
            add_digits(a.v, b.v, inner.p, inner.m)
        };
        self.mk(v)
    }

    #[inline]
    pub fn neg(&self, a: FqElem) -> FqElem {
        let inner = &*self.inner;
        if inner.p == 2 || a.v == 0 {
            return a;
        }
        if inner.m == 1 {
            return self.mk(inner.p - a.v);
        }
        let mut v = a.v;
        let mut out = 0;
        let mut place = 1;
        for _ in 0..inner.m {
            let d = v % inner.p;
            v /= inner.p;
            out += ((inner.p - d) % inner.p) * place;
            place *= inner.p;
        }
        self.mk(out)
    }

    #[inline]
    pub fn sub(&self, a: FqElem, b: FqElem) -> FqElem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FqElem, b: FqElem) -> FqElem {
        debug_assert!(a.field == self.inner.id && b.field == self.inner.id);
        if a.v == 0 || b.v == 0 {
            return self.zero();
        }
        let inner = &*self.inner;
        let l = inner.log[a.v as usize] + inner.log[b.v as usize];
        self.mk(inner.exp[l as usize])
    }

    pub fn inv(&self, a: FqElem) -> Result<FqElem, AlgebraError> {
        if a.v == 0 {
            return Err(AlgebraError::DivisionByZero);
        }
        let inner = &*self.inner;
        let n = inner.q - 1;
        let l = (n - inner.log[a.v as usize]) % n;
        Ok(self.mk(inner.exp[l as usize]))
    }

    pub fn div(&self, a: FqElem, b: FqElem) -> Result<FqElem, AlgebraError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FqElem, e: u64) -> FqElem {
        self.mk(raw_pow(&self.inner, a.v, e))
    }

    /// `a^p`.
    pub fn frobenius(&self, a: FqElem) -> FqElem {
        self.pow(a, self.inner.p as u64)
    }

    /// The unique `r` with `r^p = a`.
    pub fn frobenius_root(&self, a: FqElem) -> FqElem {
        self.mk(self.inner.root[a.v as usize])
    }

    /// Absolute trace `F_q -> F_p`, returned as an integer in `0..p`.
    pub fn trace(&self, a: FqElem) -> u32 {
        raw_trace(&self.inner, a.v)
    }

    /// A fixed element of absolute trace 1 (the smallest by index).
    pub fn trace_one(&self) -> FqElem {
        self.mk(self.inner.trace_one)
    }

    /// Some `a` with `a^p - a = b`, if one exists in `F_q`
    /// (exactly when the trace of `b` vanishes).
    pub fn solve_artin_schreier(&self, b: FqElem) -> Option<FqElem> {
        let table = self.inner.as_table.get_or_init(|| {
            let mut t = vec![u32::MAX; self.inner.q as usize];
            for a in self.elements() {
                let img = self.sub(self.frobenius(a), a);
                if t[img.v as usize] == u32::MAX {
                    t[img.v as usize] = a.v;
                }
            }
            t
        });
        match table[b.v as usize] {
            u32::MAX => None,
            v => Some(self.mk(v)),
        }
    }

    pub fn checked_add(&self, a: FqElem, b: FqElem) -> Result<FqElem, AlgebraError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.add(a, b))
    }

    pub fn checked_sub(&self, a: FqElem, b: FqElem) -> Result<FqElem, AlgebraError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.sub(a, b))
    }

    pub fn checked_mul(&self, a: FqElem, b: FqElem) -> Result<FqElem, AlgebraError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul(a, b))
    }

    pub fn checked_inv(&self, a: FqElem) -> Result<FqElem, AlgebraError> {
        self.check(a)?;
        self.inv(a)
    }

    pub fn check(&self, a: FqElem) -> Result<(), AlgebraError> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(AlgebraError::FieldMismatch)
        }
    }

    /// Whether `a` lies in the prime subfield.
    pub fn in_prime_field(&self, a: FqElem) -> bool {
        self.frobenius(a) == a
    }

    /// Human-readable form: an integer for prime fields, otherwise a
    /// polynomial in `w`.
    pub fn format(&self, a: FqElem) -> String {
        if self.inner.m == 1 {
            return a.v.to_string();
        }
        let c = self.coeffs(a);
        let mut parts = Vec::new();
        for (k, &d) in c.iter().enumerate().rev() {
            if d == 0 {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => "w".to_string(),
                _ => format!("w^{k}"),
            };
            parts.push(match (d, k) {
                (_, 0) => d.to_string(),
                (1, _) => mono,
                _ => format!("{d}*{mono}"),
            });
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join("+")
        }
    }

    /// Whether `format(a)` has more than one summand.
    pub fn is_compound(&self, a: FqElem) -> bool {
        self.inner.m > 1 && self.coeffs(a).iter().filter(|&&d| d != 0).count() > 1
    }
}

fn add_digits(a: u32, b: u32, p: u32, m: u32) -> u32 {
    let (mut a, mut b) = (a, b);
    let mut out = 0;
    let mut place = 1;
    for _ in 0..m {
        let d = (a % p + b % p) % p;
        a /= p;
        b /= p;
        out += d * place;
        place *= p;
    }
    out
}

fn raw_pow(inner: &FqInner, a: u32, e: u64) -> u32 {
    if e == 0 {
        return 1;
    }
    if a == 0 {
        return 0;
    }
    let n = (inner.q - 1) as u64;
    let l = (inner.log[a as usize] as u64 * (e % n)) % n;
    inner.exp[l as usize]
}

fn raw_trace(inner: &FqInner, a: u32) -> u32 {
    let mut acc = 0u32;
    let mut cur = a;
    for _ in 0..inner.m {
        acc = if inner.m == 1 {
            (acc + cur) % inner.p
        } else {
            add_digits(acc, cur, inner.p, inner.m)
        };
        cur = raw_pow(inner, cur, inner.p as u64);
    }
    debug_assert!(acc < inner.p, "trace lands in the prime field");
    acc
}

/// Schoolbook multiplication of packed elements modulo the monic `modulus`.
fn mul_slow(a: u32, b: u32, p: u32, m: u32, modulus: &[u32]) -> u32 {
    let m = m as usize;
    let da = unpack(a, p, m);
    let db = unpack(b, p, m);
    let mut prod = vec![0u64; 2 * m];
    for (i, &x) in da.iter().enumerate() {
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    for k in (m..2 * m).rev() {
        let c = prod[k];
        if c == 0 {
            continue;
        }
        prod[k] = 0;
        for (t, &f) in modulus.iter().take(m).enumerate() {
            let idx = k - m + t;
            prod[idx] = (prod[idx] + (p as u64 - c) * f as u64) % p as u64;
        }
    }
    let mut out = 0u32;
    for k in (0..m).rev() {
        out = out * p + prod[k] as u32;
    }
    out
}

fn unpack(mut v: u32, p: u32, m: usize) -> Vec<u32> {
    (0..m)
        .map(|_| {
            let d = v % p;
            v /= p;
            d
        })
        .collect()
}

fn canonical_modulus(p: u32, m: u32, q: u32) -> Vec<u32> {
    if m == 1 {
        return vec![0, 1];
    }
    let order = (q - 1) as u64;
    let primes: Vec<u64> = factorize(order).into_iter().map(|(l, _)| l).collect();
    for t in 1..q {
        let mut f = unpack(t, p, m as usize);
        if f[0] == 0 {
            continue;
        }
        f.push(1);
        // x is a generator of (F_p[x]/f)^* iff f is primitive, which forces irreducibility
        let x = p; // packed index of the class of x
        let pw = |e: u64| {
            let mut base = x;
            let mut acc = 1u32;
            let mut e = e;
            while e > 0 {
                if e & 1 == 1 {
                    acc = mul_slow(acc, base, p, m, &f);
                }
                base = mul_slow(base, base, p, m, &f);
                e >>= 1;
            }
            acc
        };
        if pw(order) == 1 && primes.iter().all(|&l| pw(order / l) != 1) {
            return f;
        }
    }
    unreachable!("primitive polynomials exist in every degree")
}

// --- dense polynomials over F_p, used only to vet caller-supplied moduli ---

fn fp_trim(f: &mut Vec<u32>) {
    while f.last() == Some(&0) {
        f.pop();
    }
}

fn fp_inv(a: u32, p: u32) -> u32 {
    let mut r = 1u64;
    let mut b = a as u64;
    let mut e = p as u64 - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    r as u32
}

fn fp_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    fp_trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = fp_inv(b[db], p);
    while r.len() > db {
        let k = r.len() - 1;
        let c = (r[k] as u64 * lead_inv as u64 % p as u64) as u32;
        for (j, &bj) in b.iter().enumerate() {
            let idx = k - db + j;
            r[idx] = ((r[idx] as u64 + (p - c) as u64 * bj as u64) % p as u64) as u32;
        }
        fp_trim(&mut r);
    }
    r
}

fn fp_mulmod(a: &[u32], b: &[u32], f: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % p as u64) as u32;
        }
    }
    fp_rem(&prod, f, p)
}

fn fp_gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    fp_trim(&mut a);
    fp_trim(&mut b);
    while !b.is_empty() {
        let r = fp_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// Ben-Or: `f` of degree `m` is irreducible iff `gcd(f, x^{p^k} - x) = 1`
/// for all `k <= m/2`.
fn fp_is_irreducible(f: &[u32], p: u32) -> bool {
    let m = f.len() - 1;
    let mut xpk = vec![0, 1];
    for _ in 1..=m / 2 {
        // xpk <- xpk^p mod f
        let mut acc = vec![1u32];
        for _ in 0..p {
            acc = fp_mulmod(&acc, &xpk, f, p);
        }
        xpk = acc;
        let mut g = xpk.clone();
        g.resize(g.len().max(2), 0);
        g[1] = (g[1] + p - 1) % p;
        let d = fp_gcd(f, &g, p);
        if d.len() != 1 {
            return false;
        }
    }
    true
}
