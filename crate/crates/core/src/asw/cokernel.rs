use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::algebra::snf::smith;
use crate::algebra::{CoordinateRing, Mode, RingElem};
use crate::par::{self, Exec};
use crate::witt::WittVector;

use super::reduce::{Pos, Reducer};
use super::{format_witt, AswError, Window};

/// Finite abelian `p`-group presented as `(+) Z/p^{e_i}`, `p^{e_1} >= ...`.
#[derive(Clone, Debug)]
pub struct CokernelStructure {
    pub p: u32,
    pub n: usize,
    pub d: usize,
    pub mode: Mode,
    /// Cyclic orders `p^{e_i}`, non-increasing.
    pub invariant_factors: Vec<u64>,
    /// Reduced representative generating each cyclic summand.
    pub generators: Vec<WittVector<RingElem>>,
    /// Orders recomputed by repeated multiplication by `p`.
    pub generator_orders: Vec<u64>,
    /// `log_p` of the group order.
    pub log_order: usize,
}

impl CokernelStructure {
    pub fn order(&self) -> BigUint {
        BigUint::from(self.p).pow(self.log_order as u32)
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    /// `log_p |p^k T|` for `k = 0..=n`.
    pub fn ranks(&self) -> Vec<usize> {
        let exps: Vec<u32> = self.invariant_factors.iter().map(|&o| exponent_of(o, self.p)).collect();
        (0..=self.n as u32).map(|k| exps.iter().map(|&e| e.saturating_sub(k) as usize).sum()).collect()
    }

    pub fn format_generators(&self, ring: &CoordinateRing) -> Vec<String> {
        self.generators.iter().map(|g| format_witt(ring, g)).collect()
    }
}

fn exponent_of(mut o: u64, p: u32) -> u32 {
    let mut e = 0;
    while o > 1 {
        o /= p as u64;
        e += 1;
    }
    e
}

/// Echelon table of the truncated group: entries keyed by leading position,
/// with `p * entry` expressed through later entries.
struct Table<'a> {
    red: &'a Reducer,
    entries: BTreeMap<Pos, (WittVector<RingElem>, u32)>,
    relations: BTreeMap<Pos, Vec<(Pos, u64)>>,
}

impl<'a> Table<'a> {
    fn new(red: &'a Reducer) -> Table<'a> {
        Table { red, entries: BTreeMap::new(), relations: BTreeMap::new() }
    }

    fn lead(&self, u: &WittVector<RingElem>) -> Option<(Pos, u32)> {
        self.red.coords(u).first().copied()
    }

    /// Reduce `u` against the table; returns the remainder and the
    /// multiples of entries subtracted.
    fn sift(&self, u: &WittVector<RingElem>) -> Result<(WittVector<RingElem>, Vec<(Pos, u64)>), AswError> {
        let p = self.red.ring().p() as u64;
        let mut u = u.clone();
        let mut used = Vec::new();
        while let Some((pos, a)) = self.lead(&u) {
            let Some((e, la)) = self.entries.get(&pos) else { break };
            let c = (a as u64 * mod_inv(*la as u64, p)) % p;
            let ce = self.red.witt().scalar_mul(c, e)?;
            u = self.red.sub(&u, &ce)?;
            used.push((pos, c));
        }
        Ok((u, used))
    }

    fn insert(&mut self, u: &WittVector<RingElem>) -> Result<(), AswError> {
        let (r, _) = self.sift(u)?;
        if !self.red.witt().is_zero(&r) {
            self.add_entry(r)?;
        }
        Ok(())
    }

    fn add_entry(&mut self, r: WittVector<RingElem>) -> Result<(), AswError> {
        let p = self.red.ring().p() as u64;
        let mut pending = Some(r);
        while let Some(r) = pending.take() {
            let (pos, la) = self.lead(&r).expect("nonzero");
            let pr = self.red.scalar(p, &r)?;
            self.entries.insert(pos, (r, la));
            let (rem, mut used) = self.sift(&pr)?;
            if !self.red.witt().is_zero(&rem) {
                let (rpos, _) = self.lead(&rem).unwrap();
                used.push((rpos, 1));
                pending = Some(rem);
            }
            self.relations.insert(pos, used);
        }
        Ok(())
    }
}

fn mod_inv(a: u64, p: u64) -> u64 {
    (1..p).find(|&b| a * b % p == 1).expect("p prime, a a unit")
}

/// Building blocks `V^{i-1}[c u^j]` of the truncated group, in a fixed order.
fn basic_generators(red: &Reducer) -> Vec<WittVector<RingElem>> {
    let ring = red.ring();
    let f = ring.fq();
    let p = ring.p() as usize;
    let basis: Vec<_> = (0..f.m()).map(|k| {
        let mut c = vec![0u32; f.m() as usize];
        c[k as usize] = 1;
        f.elem(&c).unwrap()
    }).collect();
    let mut out = Vec::new();
    for i in 1..=red.n() {
        let mut push = |e: RingElem| out.push(red.witt().shift_into(i - 1, &[e]));
        if ring.mode() == Mode::Arithmetic {
            for &c in &basis {
                push(ring.constant(c));
            }
        }
        for j in (1..=red.d()).filter(|j| j % p != 0) {
            for &c in &basis {
                push(ring.monomial(c, j));
            }
        }
        for t in 0..ring.s() {
            for j in (1..=red.d()).filter(|j| j % p != 0) {
                for &c in &basis {
                    push(ring.pole_monomial(c, t, j as u32));
                }
            }
        }
    }
    out
}

/// Structure of the subgroup of `W_n(A)/P(W_n(A))` (modulo constants in
/// geometric mode) generated by the classes of `V^{i-1}[c u^j]` with
/// `u` ranging over `x` and `1/(x - r)`, `1 <= j <= d`, `c` in `F_q`,
/// together with the constant classes in arithmetic mode.
pub fn cokernel_basis(ring: &CoordinateRing, n: usize, win: Window) -> Result<CokernelStructure, AswError> {
    let red = Reducer::new(ring, n, win)?;
    let p = ring.p();
    let mut table = Table::new(&red);
    for g in basic_generators(&red) {
        let g = red.reduce(&g)?;
        table.insert(&g)?;
    }
    let positions: Vec<Pos> = table.entries.keys().copied().collect();
    let idx: BTreeMap<Pos, usize> = positions.iter().enumerate().map(|(i, &q)| (q, i)).collect();
    let r = positions.len();
    let mut m = vec![vec![BigInt::zero(); r]; r];
    for (k, pos) in positions.iter().enumerate() {
        m[k][k] = BigInt::from(p);
        for &(q, c) in &table.relations[pos] {
            m[k][idx[&q]] -= BigInt::from(c);
        }
    }
    let snf = smith(&m, r);
    let modulus = BigInt::from(p).pow(n as u32);
    let mut summands: Vec<(u64, Vec<u64>)> = Vec::new();
    for (i, dv) in snf.diag.iter().enumerate() {
        if dv.is_one() {
            continue;
        }
        let ord = dv.to_u64().expect("divides p^n");
        let coeffs = snf.gens[i].iter().map(|c| c.mod_floor(&modulus).to_u64().unwrap()).collect();
        summands.push((ord, coeffs));
    }
    // non-increasing orders; stable so equal orders keep table order
    summands.sort_by(|a, b| b.0.cmp(&a.0));
    let mut generators = Vec::new();
    let mut generator_orders = Vec::new();
    for (_, coeffs) in &summands {
        let mut acc = red.witt().zero();
        for (k, &c) in coeffs.iter().enumerate() {
            if c != 0 {
                let term = red.witt().scalar_mul(c, &table.entries[&positions[k]].0)?;
                acc = red.witt().add(&acc, &term)?;
            }
        }
        let g = red.reduce(&acc)?;
        generator_orders.push(red.order(&g)?);
        generators.push(g);
    }
    Ok(CokernelStructure {
        p,
        n,
        d: win.d,
        mode: ring.mode(),
        invariant_factors: summands.iter().map(|s| s.0).collect(),
        generators,
        generator_orders,
        log_order: r,
    })
}

/// Characters of the truncated group with values in `Z/p^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverCount {
    /// All homomorphisms (the group order).
    pub total: BigUint,
    /// Surjective ones (elements of order exactly `p^n`).
    pub surjective: BigUint,
}

pub fn count_cyclic_covers(ring: &CoordinateRing, n: usize, win: Window) -> Result<CoverCount, AswError> {
    let s = cokernel_basis(ring, n, win)?;
    Ok(cover_count(&s))
}

pub(crate) fn cover_count(s: &CokernelStructure) -> CoverCount {
    let total = s.order();
    let bound = (s.p as u64).pow(s.n as u32 - 1);
    let killed: BigUint = s.invariant_factors.iter().map(|&o| BigUint::from(o.gcd(&bound))).product();
    CoverCount { surjective: &total - killed, total }
}

/// Rank of the maximal prime-to-`p` abelian quotient for genus `g` and `r`
/// punctures: `2g + r - 1`.
pub fn prime_to_p_rank(g: u64, r: u64) -> u64 {
    (2 * g + r).saturating_sub(1)
}

#[derive(Clone, Debug)]
pub struct AbelianizationReport {
    pub genus: u64,
    pub punctures: u64,
    pub prime_to_p_rank: u64,
    /// Truncated cokernel at each level `1..=n`.
    pub p_part: Vec<CokernelStructure>,
}

/// `g` is a free parameter for the tame formula; the `p`-part is computed
/// for the ring, which has `r = deg h + 1` punctures.
pub fn abelianization_report(g: u64, ring: &CoordinateRing, n: usize, win: Window) -> Result<AbelianizationReport, AswError> {
    let r = ring.s() as u64 + 1;
    let p_part = (1..=n).map(|k| cokernel_basis(ring, k, win)).collect::<Result<Vec<_>, _>>()?;
    Ok(AbelianizationReport { genus: g, punctures: r, prime_to_p_rank: prime_to_p_rank(g, r), p_part })
}

#[derive(Clone, Debug)]
pub struct VerschiebungReport {
    pub n: usize,
    pub d: usize,
    pub level_log_order: usize,
    /// `log_p` of the subgroup generated by the images at level `n + 1`.
    pub image_log_order: usize,
    pub injective: bool,
    /// Generators whose image is not reduced or changes order.
    pub violations: Vec<String>,
}

/// Push the level-`n` generators through `V` and compare with level `n + 1`.
pub fn verschiebung_embedding_check(ring: &CoordinateRing, n: usize, win: Window) -> Result<VerschiebungReport, AswError> {
    let s = cokernel_basis(ring, n, win)?;
    let low = Reducer::new(ring, n, win)?;
    let high = Reducer::new(ring, n + 1, win)?;
    let mut violations = Vec::new();
    let zero_image = low.witt().verschiebung(&low.witt().zero());
    if !high.witt().is_zero(&zero_image) {
        violations.push("V(0) is nonzero".to_string());
    }
    let mut table = Table::new(&high);
    for (g, &ord) in s.generators.iter().zip(&s.invariant_factors) {
        let vg = low.witt().verschiebung(g);
        let red = high.reduce(&vg)?;
        let name = format_witt(ring, g);
        if red != vg {
            violations.push(format!("V{name} is not reduced"));
        }
        let o = high.order(&red)?;
        if o != ord {
            violations.push(format!("V{name} has order {o}, expected {ord}"));
        }
        table.insert(&red)?;
    }
    let image_log_order = table.entries.len();
    Ok(VerschiebungReport {
        n,
        d: win.d,
        level_log_order: s.log_order,
        image_log_order,
        injective: image_log_order == s.log_order,
        violations,
    })
}

/// Cokernels over an `(n, d)` grid, in input order.
pub fn cokernel_grid(
    ring: &CoordinateRing,
    points: &[(usize, usize)],
) -> Vec<Result<CokernelStructure, AswError>> {
    cokernel_grid_with(Exec::best(), ring, points)
}

pub fn cokernel_grid_with(
    exec: Exec,
    ring: &CoordinateRing,
    points: &[(usize, usize)],
) -> Vec<Result<CokernelStructure, AswError>> {
    par::map(exec, points, |&(n, d)| cokernel_basis(ring, n, Window::new(d)))
}
