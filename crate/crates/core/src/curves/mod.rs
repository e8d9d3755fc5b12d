//! Genus arithmetic for tame covers and for the family
//! `u^{p^n} - u = y^{p^n + 1}`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use thiserror::Error;

use crate::algebra::prime::{checked_pow, gcd, is_prime};
use crate::algebra::{Fq, Poly};
use crate::groups::{direct_power, GroupError, PermGroup};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error("ramification index {e} is divisible by p = {p}")]
    WildRamification { e: u64, p: u64 },
    #[error("profile gives non-integral or negative genus {0}")]
    NonIntegralGenus(String),
    #[error("fiber over branch point {branch} has total index {total} > degree {degree}")]
    InconsistentFiber { branch: usize, total: u64, degree: u64 },
    #[error("p = {0} is not prime")]
    CompositeP(u64),
    #[error("|H| = {order} is divisible by p = {p}")]
    NotPrimeToP { order: usize, p: u64 },
    #[error("parameters too large")]
    Overflow,
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Ramification data of a degree `N` cover of a genus `g_X` curve. Each
/// fiber lists indices `e_P`; points left out of a fiber are unramified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamificationProfile {
    pub degree: u64,
    pub base_genus: u64,
    pub p: u64,
    pub fibers: Vec<Vec<u64>>,
}

impl RamificationProfile {
    fn validate(&self) -> Result<(), CurveError> {
        if !is_prime(self.p) {
            return Err(CurveError::CompositeP(self.p));
        }
        for (b, fiber) in self.fibers.iter().enumerate() {
            let mut total = 0u64;
            for &e in fiber {
                if e == 0 {
                    return Err(CurveError::InconsistentFiber { branch: b, total: 0, degree: self.degree });
                }
                if e % self.p == 0 {
                    return Err(CurveError::WildRamification { e, p: self.p });
                }
                total += e;
            }
            if total > self.degree {
                return Err(CurveError::InconsistentFiber { branch: b, total, degree: self.degree });
            }
        }
        Ok(())
    }

    /// `deg R = sum (e_P - 1)`
    pub fn different_degree(&self) -> u64 {
        self.fibers.iter().flatten().map(|e| e - 1).sum()
    }

    /// `(N (2 g_X - 2) + deg R + 2) / 2`, unchecked.
    pub fn hurwitz_value(&self) -> Result<BigRational, CurveError> {
        self.validate()?;
        let n = BigInt::from(self.degree);
        let two = BigInt::from(2);
        let chi = BigInt::from(2 * self.base_genus as i64 - 2);
        let num = n * chi + BigInt::from(self.different_degree()) + &two;
        Ok(BigRational::new(num, two))
    }
}

/// Genus of the cover from a complete tame profile.
pub fn tame_hurwitz_genus(rp: &RamificationProfile) -> Result<BigInt, CurveError> {
    let g = rp.hurwitz_value()?;
    if !g.is_integer() || g.is_negative() {
        return Err(CurveError::NonIntegralGenus(g.to_string()));
    }
    Ok(g.to_integer())
}

/// Lower bound for the genus from a partial tame profile (ramification
/// left out only increases the genus).
pub fn hurwitz_lower_bound(rp: &RamificationProfile) -> Result<BigRational, CurveError> {
    rp.hurwitz_value()
}

/// Partial profile of `Y -> P^1_u`: degree `p^n + 1`, the `p^n` roots of
/// `u^{p^n} - u` each totally ramified; the fiber over `u = infinity` is
/// omitted.
pub fn family_profile(p: u64, n: u32) -> Result<RamificationProfile, CurveError> {
    let q = checked_pow(p, n).ok_or(CurveError::Overflow)?;
    Ok(RamificationProfile { degree: q + 1, base_genus: 0, p, fibers: vec![vec![q + 1]; q as usize] })
}

#[derive(Clone, Debug)]
pub struct FamilyBound {
    pub p: u64,
    pub n: u32,
    /// `p^n (p^n - 2) / 2`
    pub bound: BigRational,
    /// The same bound recomputed from the partial tame profile.
    pub profile_bound: BigRational,
    /// `d/du (u^{p^n} - u - y^{p^n+1})`, a constant, lifted to `(-p, 0]`.
    pub derivative: i64,
    pub ramification_index: u64,
    pub tame: bool,
}

pub fn family_formula(p: u64, n: u32) -> Result<BigRational, CurveError> {
    let q = BigInt::from(checked_pow(p, n).ok_or(CurveError::Overflow)?);
    Ok(BigRational::new(&q * (&q - 2), BigInt::from(2)))
}

pub fn family_bound(p: u64, n: u32) -> Result<FamilyBound, CurveError> {
    if !is_prime(p) {
        return Err(CurveError::CompositeP(p));
    }
    let q = checked_pow(p, n).ok_or(CurveError::Overflow)?;
    let bound = family_formula(p, n)?;
    let profile_bound = hurwitz_lower_bound(&family_profile(p, n)?)?;
    // the y-term does not involve u, so only u^{q} - u contributes
    let f = Fq::prime(p).map_err(|_| CurveError::CompositeP(p))?;
    let poly = Poly::monomial(&f, f.one(), q as usize).sub(&Poly::x(&f), &f);
    let der = poly.derivative(&f);
    debug_assert!(der.degree() == Some(0));
    let c = f.coeffs(der.coeff(&f, 0))[0] as i64;
    // lift to (-p, 0]
    let derivative = if c == 0 { 0 } else { c - p as i64 };
    Ok(FamilyBound {
        p,
        n,
        bound,
        profile_bound,
        derivative,
        ramification_index: q + 1,
        tame: gcd(q + 1, p) == 1,
    })
}

#[derive(Clone, Debug)]
pub struct GenusChoice {
    /// `d(H^l)`
    pub generators: usize,
    pub genus: u64,
}

/// Smallest `g >= 2` with `2g > d(H^l)`.
pub fn genus_needed_for(h: &PermGroup, l: usize, p: u64) -> Result<GenusChoice, CurveError> {
    let order = h.order()?;
    if order as u64 % p == 0 {
        return Err(CurveError::NotPrimeToP { order, p });
    }
    let hl = direct_power(h, l);
    let n = hl.order()?;
    let cap_k = (usize::BITS - n.leading_zeros()) as usize;
    let d = hl.min_generators(cap_k)?.d;
    Ok(GenusChoice { generators: d, genus: (d as u64 / 2 + 1).max(2) })
}

/// Smallest `n >= 1` whose bound `p^n (p^n - 2) / 2` reaches `target`.
pub fn choose_family_n(target: u64, p: u64) -> Result<u32, CurveError> {
    if !is_prime(p) {
        return Err(CurveError::CompositeP(p));
    }
    let t = BigRational::from_integer(BigInt::from(target));
    let mut n = 1;
    loop {
        if family_formula(p, n)? >= t {
            return Ok(n);
        }
        n += 1;
    }
}

/// Render a rational as `a` or `a/b`.
pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
