//! Truncated Witt vectors `W_n(R)` over a characteristic-`p` ring `R`.

pub mod structure;

use std::sync::Arc;

use thiserror::Error;

use crate::algebra::CoeffRing;
pub use structure::{build_structure_cache, structure_cache, WittStructureCache, DEFAULT_MAX_N};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WittError {
    #[error("{0} is not prime")]
    CompositeP(u64),
    #[error("Witt vectors need length at least 1")]
    ZeroLength,
    #[error("structure polynomial {k} for p = {p} has a non-integral coefficient")]
    NonIntegral { p: u32, k: usize },
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("component from a different coefficient ring")]
    RingMismatch,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WittVector<E> {
    comps: Vec<E>,
}

impl<E> WittVector<E> {
    pub fn components(&self) -> &[E] {
        &self.comps
    }

    pub fn into_components(self) -> Vec<E> {
        self.comps
    }

    pub fn len(&self) -> usize {
        self.comps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.comps.is_empty()
    }
}

/// `W_n(R)` for a fixed coefficient ring and length.
#[derive(Clone)]
pub struct WittRing<R: CoeffRing> {
    coeff: R,
    n: usize,
    cache: Arc<WittStructureCache>,
}

impl<R: CoeffRing> WittRing<R> {
    pub fn new(coeff: R, n: usize) -> Result<WittRing<R>, WittError> {
        let cache = structure_cache(coeff.characteristic() as u64, n)?;
        Ok(WittRing { coeff, n, cache })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> u32 {
        self.cache.p()
    }

    pub fn coeff(&self) -> &R {
        &self.coeff
    }

    pub fn cache(&self) -> &WittStructureCache {
        &self.cache
    }

    /// `W_{n+1}(R)`, the target of the Verschiebung.
    pub fn extend(&self) -> Result<WittRing<R>, WittError> {
        WittRing::new(self.coeff.clone(), self.n + 1)
    }

    pub fn zero(&self) -> WittVector<R::Elem> {
        WittVector { comps: vec![self.coeff.zero(); self.n] }
    }

    pub fn one(&self) -> WittVector<R::Elem> {
        self.teichmuller(self.coeff.one())
    }

    /// `[a] = (a, 0, ..., 0)`
    pub fn teichmuller(&self, a: R::Elem) -> WittVector<R::Elem> {
        let mut comps = vec![self.coeff.zero(); self.n];
        comps[0] = a;
        WittVector { comps }
    }

    pub fn from_components(&self, comps: Vec<R::Elem>) -> Result<WittVector<R::Elem>, WittError> {
        let v = WittVector { comps };
        self.check(&v)?;
        Ok(v)
    }

    pub fn check(&self, u: &WittVector<R::Elem>) -> Result<(), WittError> {
        if u.comps.len() != self.n {
            return Err(WittError::LengthMismatch { expected: self.n, got: u.comps.len() });
        }
        if !u.comps.iter().all(|c| self.coeff.owns(c)) {
            return Err(WittError::RingMismatch);
        }
        Ok(())
    }

    pub fn is_zero(&self, u: &WittVector<R::Elem>) -> bool {
        u.comps.iter().all(|c| self.coeff.is_zero(c))
    }

    fn binary_vals(&self, u: &WittVector<R::Elem>, v: &WittVector<R::Elem>) -> Vec<R::Elem> {
        let mut vals = Vec::with_capacity(2 * self.n);
        for i in 0..self.n {
            vals.push(u.comps[i].clone());
            vals.push(v.comps[i].clone());
        }
        vals
    }

    pub fn add(&self, u: &WittVector<R::Elem>, v: &WittVector<R::Elem>) -> Result<WittVector<R::Elem>, WittError> {
        self.check(u)?;
        self.check(v)?;
        Ok(self.add_unchecked(u, v))
    }

    pub(crate) fn add_unchecked(&self, u: &WittVector<R::Elem>, v: &WittVector<R::Elem>) -> WittVector<R::Elem> {
        if self.is_zero(u) {
            return v.clone();
        }
        if self.is_zero(v) {
            return u.clone();
        }
        let vals = self.binary_vals(u, v);
        let comps = (1..=self.n).map(|k| self.cache.sum_mod(k).eval(&self.coeff, &vals)).collect();
        WittVector { comps }
    }

    pub fn mul(&self, u: &WittVector<R::Elem>, v: &WittVector<R::Elem>) -> Result<WittVector<R::Elem>, WittError> {
        self.check(u)?;
        self.check(v)?;
        let vals = self.binary_vals(u, v);
        let comps = (1..=self.n).map(|k| self.cache.prod_mod(k).eval(&self.coeff, &vals)).collect();
        Ok(WittVector { comps })
    }

    pub fn neg(&self, u: &WittVector<R::Elem>) -> Result<WittVector<R::Elem>, WittError> {
        self.check(u)?;
        Ok(self.neg_unchecked(u))
    }

    pub(crate) fn neg_unchecked(&self, u: &WittVector<R::Elem>) -> WittVector<R::Elem> {
        // neg polynomials only use the X slots; interleave zeros for Y
        let vals = self.binary_vals(u, &self.zero());
        let comps = (1..=self.n).map(|k| self.cache.neg_mod(k).eval(&self.coeff, &vals)).collect();
        WittVector { comps }
    }

    pub fn sub(&self, u: &WittVector<R::Elem>, v: &WittVector<R::Elem>) -> Result<WittVector<R::Elem>, WittError> {
        self.check(u)?;
        self.check(v)?;
        Ok(self.sub_unchecked(u, v))
    }

    pub(crate) fn sub_unchecked(&self, u: &WittVector<R::Elem>, v: &WittVector<R::Elem>) -> WittVector<R::Elem> {
        self.add_unchecked(u, &self.neg_unchecked(v))
    }

    /// `k * u` by double-and-add.
    pub fn scalar_mul(&self, k: u64, u: &WittVector<R::Elem>) -> Result<WittVector<R::Elem>, WittError> {
        self.check(u)?;
        let mut acc = self.zero();
        let mut base = u.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add_unchecked(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.add_unchecked(&base, &base);
            }
        }
        Ok(acc)
    }

    /// Componentwise `p`-th power.
    pub fn frobenius(&self, u: &WittVector<R::Elem>) -> WittVector<R::Elem> {
        WittVector { comps: u.comps.iter().map(|c| self.coeff.frobenius(c)).collect() }
    }

    /// `(a_1..a_n) -> (0, a_1..a_n)`, landing in length `n + 1`.
    pub fn verschiebung(&self, u: &WittVector<R::Elem>) -> WittVector<R::Elem> {
        let mut comps = Vec::with_capacity(u.comps.len() + 1);
        comps.push(self.coeff.zero());
        comps.extend(u.comps.iter().cloned());
        WittVector { comps }
    }

    /// `V^s` followed by truncation to this ring's length: `s` zeros, then
    /// the leading components of `u`.
    pub fn shift_into(&self, s: usize, u: &[R::Elem]) -> WittVector<R::Elem> {
        let mut comps = vec![self.coeff.zero(); self.n];
        for (i, c) in u.iter().enumerate() {
            if s + i < self.n {
                comps[s + i] = c.clone();
            }
        }
        WittVector { comps }
    }

    /// `P(u) = F(u) - u`.
    pub fn p_map(&self, u: &WittVector<R::Elem>) -> Result<WittVector<R::Elem>, WittError> {
        self.check(u)?;
        Ok(self.p_map_unchecked(u))
    }

    pub(crate) fn p_map_unchecked(&self, u: &WittVector<R::Elem>) -> WittVector<R::Elem> {
        self.sub_unchecked(&self.frobenius(u), u)
    }

    /// First `m` components (the projection `W_n -> W_m`).
    pub fn truncate(&self, u: &WittVector<R::Elem>, m: usize) -> WittVector<R::Elem> {
        WittVector { comps: u.comps[..m.min(u.comps.len())].to_vec() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{CoordinateRing, Fq, Mode};

    #[test]
    fn w2_f2_one_plus_one() {
        let f = Fq::prime(2).unwrap();
        let w = WittRing::new(f.clone(), 2).unwrap();
        let one = w.one();
        assert_eq!(w.add(&one, &one).unwrap().components(), &[f.zero(), f.one()]);
    }

    #[test]
    fn w3_f3_has_order_27() {
        let f = Fq::prime(3).unwrap();
        let w = WittRing::new(f.clone(), 3).unwrap();
        let one = w.one();
        let mut acc = w.zero();
        for i in 1..=27 {
            acc = w.add(&acc, &one).unwrap();
            assert_eq!(w.is_zero(&acc), i == 27);
        }
    }

    #[test]
    fn frobenius_of_x() {
        let f = Fq::prime(5).unwrap();
        let a = CoordinateRing::affine_line(&f, Mode::Geometric);
        let w = WittRing::new(a.clone(), 2).unwrap();
        let u = w.from_components(vec![a.x(), a.zero()]).unwrap();
        let fu = w.frobenius(&u);
        assert_eq!(fu.components()[0], a.monomial(f.one(), 5));
        assert!(fu.components()[1].is_zero());
        let pu = WittRing::new(a.clone(), 1).unwrap().p_map(&WittVector { comps: vec![a.x()] }).unwrap();
        assert_eq!(a.format(&pu.components()[0]), "x^5+4*x");
    }

    #[test]
    fn errors() {
        let f = Fq::prime(3).unwrap();
        let g = Fq::prime(5).unwrap();
        let w = WittRing::new(f.clone(), 2).unwrap();
        let bad_len = WittVector { comps: vec![f.one()] };
        assert_eq!(w.add(&w.one(), &bad_len), Err(WittError::LengthMismatch { expected: 2, got: 1 }));
        let foreign = WittVector { comps: vec![g.one(), g.zero()] };
        assert_eq!(w.add(&w.one(), &foreign), Err(WittError::RingMismatch));
    }
}
