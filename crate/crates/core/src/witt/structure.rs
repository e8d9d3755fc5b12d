//! Integral structure polynomials of truncated p-typical Witt vectors,
//! obtained by solving the ghost equations over `Z`.
//!
//! Variables are indexed so that polynomials do not depend on the length:
//! `X_i -> 2(i-1)`, `Y_i -> 2(i-1)+1` (1-based `i`). Negation polynomials use
//! the `X` slots only.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use super::WittError;
use crate::algebra::prime::is_prime;
use crate::algebra::CoeffRing;

/// Length up to which caches are expected to be cheap.
pub const DEFAULT_MAX_N: usize = 5;

pub fn x_var(i: usize) -> usize {
    2 * (i - 1)
}

pub fn y_var(i: usize) -> usize {
    2 * (i - 1) + 1
}

type Monomial = Vec<u32>;

/// Sparse polynomial with integer coefficients; exponent vectors are
/// trimmed of trailing zeros so equal monomials have equal keys.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct IntPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

fn trim(mut m: Monomial) -> Monomial {
    while m.last() == Some(&0) {
        m.pop();
    }
    m
}

fn mono_mul(a: &Monomial, b: &Monomial) -> Monomial {
    let n = a.len().max(b.len());
    let mut out = vec![0; n];
    for (i, &e) in a.iter().enumerate() {
        out[i] += e;
    }
    for (i, &e) in b.iter().enumerate() {
        out[i] += e;
    }
    out
}

impl IntPoly {
    pub fn zero() -> IntPoly {
        IntPoly::default()
    }

    pub fn constant(c: BigInt) -> IntPoly {
        let mut p = IntPoly::zero();
        p.add_term(Vec::new(), c);
        p
    }

    /// `var^e`
    pub fn var_pow(var: usize, e: u32) -> IntPoly {
        let mut m = vec![0; var + 1];
        m[var] = e;
        let mut p = IntPoly::zero();
        p.add_term(trim(m), BigInt::one());
        p
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &IntPoly) -> IntPoly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &IntPoly) -> IntPoly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        if c.is_zero() {
            return IntPoly::zero();
        }
        IntPoly { terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    pub fn mul(&self, o: &IntPoly) -> IntPoly {
        let mut acc: HashMap<Monomial, BigInt> = HashMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                *acc.entry(mono_mul(ma, mb)).or_insert_with(BigInt::zero) += ca * cb;
            }
        }
        IntPoly { terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn pow(&self, mut e: u64) -> IntPoly {
        let mut base = self.clone();
        let mut acc = IntPoly::constant(BigInt::one());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Exact division of every coefficient; `None` if some remainder is nonzero.
    pub fn div_exact(&self, d: &BigInt) -> Option<IntPoly> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let (q, r) = c.div_rem(d);
            if !r.is_zero() {
                return None;
            }
            terms.insert(m.clone(), q);
        }
        Some(IntPoly { terms })
    }

    pub fn eval_int(&self, vals: &[BigInt]) -> BigInt {
        let mut acc = BigInt::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    t *= Pow::pow(&vals[i], e);
                }
            }
            acc += t;
        }
        acc
    }

    /// Largest absolute coefficient.
    pub fn max_coeff(&self) -> BigInt {
        self.terms.values().map(|c| c.abs()).max().unwrap_or_default()
    }

    fn reduce_mod(&self, p: u32) -> ModPoly {
        let pb = BigInt::from(p);
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            let r = c.mod_floor(&pb).to_u32().unwrap();
            if r == 0 {
                continue;
            }
            let vars = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(v, &e)| (v as u16, e))
                .collect();
            terms.push((vars, r));
        }
        let max_var = terms.iter().flat_map(|(v, _): &(Vec<(u16, u32)>, u32)| v.iter().map(|x| x.0 as usize + 1)).max().unwrap_or(0);
        ModPoly { terms, nvars: max_var }
    }
}

/// Reduction of an [`IntPoly`] modulo `p`, in sparse variable form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModPoly {
    terms: Vec<(Vec<(u16, u32)>, u32)>,
    nvars: usize,
}

impl ModPoly {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Evaluate over a characteristic-`p` ring. `vals[v]` is the value of
    /// variable `v`; monomials touching a zero variable are skipped.
    pub fn eval<R: CoeffRing>(&self, r: &R, vals: &[R::Elem]) -> R::Elem {
        let zero: Vec<bool> = vals.iter().map(|v| r.is_zero(v)).collect();
        let mut max_exp = vec![0u32; self.nvars];
        for (vars, _) in &self.terms {
            if vars.iter().any(|&(v, _)| zero[v as usize]) {
                continue;
            }
            for &(v, e) in vars {
                max_exp[v as usize] = max_exp[v as usize].max(e);
            }
        }
        let mut powers: Vec<Vec<R::Elem>> = Vec::with_capacity(self.nvars);
        for (v, &me) in max_exp.iter().enumerate() {
            let mut row = Vec::with_capacity(me as usize + 1);
            if me > 0 {
                row.push(r.one());
                for e in 1..=me as usize {
                    let next = r.mul(&row[e - 1], &vals[v]);
                    row.push(next);
                }
            }
            powers.push(row);
        }
        let mut acc = r.zero();
        for (vars, c) in &self.terms {
            if vars.iter().any(|&(v, _)| zero[v as usize]) {
                continue;
            }
            let mut t = r.from_int(*c as i64);
            for &(v, e) in vars {
                t = r.mul(&t, &powers[v as usize][e as usize]);
            }
            acc = r.add(&acc, &t);
        }
        acc
    }
}

/// `w_k(Z) = sum_{j<=k} p^{j-1} Z_j^{p^{k-j}}` in the given variable slots.
pub fn ghost_poly(p: u32, k: usize, var: impl Fn(usize) -> usize) -> IntPoly {
    let mut out = IntPoly::zero();
    for j in 1..=k {
        let coeff = BigInt::from(p).pow((j - 1) as u32);
        let e = p.pow((k - j) as u32);
        out = out.add(&IntPoly::var_pow(var(j), e).scale(&coeff));
    }
    out
}

/// Integer ghost component `w_k(a)`.
pub fn ghost_int(p: u32, a: &[BigInt], k: usize) -> BigInt {
    let pb = BigInt::from(p);
    (1..=k)
        .map(|j| Pow::pow(&pb, (j - 1) as u32) * Pow::pow(&a[j - 1], p.pow((k - j) as u32)))
        .sum()
}

#[derive(Debug)]
pub struct WittStructureCache {
    p: u32,
    n: usize,
    sum: Vec<IntPoly>,
    prod: Vec<IntPoly>,
    neg: Vec<IntPoly>,
    sum_mod: Vec<ModPoly>,
    prod_mod: Vec<ModPoly>,
    neg_mod: Vec<ModPoly>,
}

impl WittStructureCache {
    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `S_k`, 1-based.
    pub fn sum_poly(&self, k: usize) -> &IntPoly {
        &self.sum[k - 1]
    }

    pub fn prod_poly(&self, k: usize) -> &IntPoly {
        &self.prod[k - 1]
    }

    pub fn neg_poly(&self, k: usize) -> &IntPoly {
        &self.neg[k - 1]
    }

    pub fn sum_mod(&self, k: usize) -> &ModPoly {
        &self.sum_mod[k - 1]
    }

    pub fn prod_mod(&self, k: usize) -> &ModPoly {
        &self.prod_mod[k - 1]
    }

    pub fn neg_mod(&self, k: usize) -> &ModPoly {
        &self.neg_mod[k - 1]
    }

    /// Total number of monomials over all cached polynomials.
    pub fn size(&self) -> usize {
        self.sum.iter().chain(&self.prod).chain(&self.neg).map(IntPoly::len).sum()
    }
}

/// Solve `w_k(F_1..F_k) = target_k` for `k = 1..n`, where `target_k` is
/// built from the inputs' ghost polynomials.
fn solve_ghost(
    p: u32,
    n: usize,
    target: impl Fn(usize) -> IntPoly,
) -> Result<Vec<IntPoly>, WittError> {
    let mut out: Vec<IntPoly> = Vec::with_capacity(n);
    // cur[j] = F_{j+1}^{p^{k-1-(j+1)}} at the start of step k
    let mut cur: Vec<IntPoly> = Vec::with_capacity(n);
    for k in 1..=n {
        for c in cur.iter_mut() {
            *c = c.pow(p as u64);
        }
        let mut rhs = target(k);
        for (j, c) in cur.iter().enumerate() {
            let coeff = BigInt::from(p).pow(j as u32);
            rhs = rhs.sub(&c.scale(&coeff));
        }
        let d = BigInt::from(p).pow((k - 1) as u32);
        let fk = rhs.div_exact(&d).ok_or(WittError::NonIntegral { p, k })?;
        cur.push(fk.clone());
        out.push(fk);
    }
    Ok(out)
}

pub fn build_structure_cache(p: u64, n: usize) -> Result<WittStructureCache, WittError> {
    if !is_prime(p) {
        return Err(WittError::CompositeP(p));
    }
    if n == 0 {
        return Err(WittError::ZeroLength);
    }
    let p = p as u32;
    let sum = solve_ghost(p, n, |k| ghost_poly(p, k, x_var).add(&ghost_poly(p, k, y_var)))?;
    let prod = solve_ghost(p, n, |k| ghost_poly(p, k, x_var).mul(&ghost_poly(p, k, y_var)))?;
    let neg = solve_ghost(p, n, |k| ghost_poly(p, k, x_var).scale(&BigInt::from(-1)))?;
    let red = |v: &Vec<IntPoly>| v.iter().map(|q| q.reduce_mod(p)).collect::<Vec<_>>();
    Ok(WittStructureCache {
        p,
        n,
        sum_mod: red(&sum),
        prod_mod: red(&prod),
        neg_mod: red(&neg),
        sum,
        prod,
        neg,
    })
}

fn memo() -> &'static RwLock<HashMap<(u32, usize), Arc<WittStructureCache>>> {
    static MEMO: OnceLock<RwLock<HashMap<(u32, usize), Arc<WittStructureCache>>>> = OnceLock::new();
    MEMO.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Memoized cache. Built outside the lock; concurrent builders race and the
/// last insertion wins (all results are identical).
pub fn structure_cache(p: u64, n: usize) -> Result<Arc<WittStructureCache>, WittError> {
    if let Some(c) = memo().read().unwrap().get(&(p as u32, n)) {
        return Ok(c.clone());
    }
    let c = Arc::new(build_structure_cache(p, n)?);
    memo().write().unwrap().insert((p as u32, n), c.clone());
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn length_one_is_plain_addition() {
        let c = build_structure_cache(2, 1).unwrap();
        let expect = IntPoly::var_pow(x_var(1), 1).add(&IntPoly::var_pow(y_var(1), 1));
        assert_eq!(c.sum_poly(1), &expect);
    }

    #[test]
    fn p2_second_sum_polynomial() {
        let c = build_structure_cache(2, 2).unwrap();
        let x1y1 = IntPoly::var_pow(x_var(1), 1).mul(&IntPoly::var_pow(y_var(1), 1));
        let expect = IntPoly::var_pow(x_var(2), 1)
            .add(&IntPoly::var_pow(y_var(2), 1))
            .sub(&x1y1);
        assert_eq!(c.sum_poly(2), &expect);
        // integer evaluation on {0..3}^4 against the ghost identity
        for a in 0..4 {
            for b in 0..4 {
                for x in 0..4 {
                    for y in 0..4 {
                        let vals = [bi(a), bi(x), bi(b), bi(y)];
                        let s1 = c.sum_poly(1).eval_int(&vals);
                        let s2 = c.sum_poly(2).eval_int(&vals);
                        assert_eq!(&s1 * &s1 + 2 * &s2, bi(a * a + 2 * b + x * x + 2 * y));
                    }
                }
            }
        }
    }

    #[test]
    fn p3_second_sum_polynomial() {
        let c = build_structure_cache(3, 2).unwrap();
        let x1 = IntPoly::var_pow(x_var(1), 1);
        let y1 = IntPoly::var_pow(y_var(1), 1);
        let expect = IntPoly::var_pow(x_var(2), 1)
            .add(&IntPoly::var_pow(y_var(2), 1))
            .sub(&x1.pow(2).mul(&y1))
            .sub(&x1.mul(&y1.pow(2)));
        assert_eq!(c.sum_poly(2), &expect);
    }

    #[test]
    fn negation_for_p2_is_not_componentwise() {
        let c = build_structure_cache(2, 2).unwrap();
        // N_2 = -X_2 - X_1^2 over Z
        let expect = IntPoly::var_pow(x_var(2), 1)
            .add(&IntPoly::var_pow(x_var(1), 2))
            .scale(&bi(-1));
        assert_eq!(c.neg_poly(2), &expect);
        let c3 = build_structure_cache(3, 3).unwrap();
        for k in 1..=3 {
            assert_eq!(c3.neg_poly(k), &IntPoly::var_pow(x_var(k), 1).scale(&bi(-1)));
        }
    }

    #[test]
    fn composite_rejected() {
        assert!(matches!(build_structure_cache(6, 2), Err(WittError::CompositeP(6))));
    }
}
