use std::collections::{BTreeMap, HashSet, VecDeque};

use super::abelian::AbelianType;
use super::group::PermGroup;
use super::perm::Perm;
use super::quotient::QuotientGroup;
use super::GroupError;
use crate::algebra::prime::{factorize, prime_power};
use crate::par::{self, Exec};

/// Bound on the number of subgroups `subgroup_indices` will enumerate.
const SUBGROUP_LIMIT: usize = 50_000;

/// Simple group `S` identified by order and flags.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleFactor {
    pub order: u64,
    pub abelian: bool,
    pub perfect: bool,
    pub name: String,
}

/// A minimal normal subgroup together with its decomposition `S^m`.
#[derive(Clone, Debug)]
pub struct MinimalNormal {
    pub group: PermGroup,
    pub factor: SimpleFactor,
    pub multiplicity: u32,
}

/// `d(G)` with a witnessing generating set.
#[derive(Clone, Debug)]
pub struct MinGenerators {
    pub d: usize,
    pub generators: Vec<Perm>,
}

fn simple_name(order: u64, abelian: bool) -> String {
    if abelian {
        return format!("Z/{order}");
    }
    let known = [
        (60, "A5"),
        (168, "PSL(2,7)"),
        (360, "A6"),
        (504, "PSL(2,8)"),
        (660, "PSL(2,11)"),
        (1092, "PSL(2,13)"),
        (2448, "PSL(2,17)"),
        (2520, "A7"),
        (3420, "PSL(2,19)"),
        (4080, "PSL(2,16)"),
        (5616, "PSL(3,3)"),
        (6048, "PSU(3,3)"),
        (6072, "PSL(2,23)"),
        (7800, "PSL(2,25)"),
        (7920, "M11"),
        (9828, "PSL(2,27)"),
    ];
    known.iter().find(|(o, _)| *o == order).map(|(_, n)| n.to_string()).unwrap_or_else(|| format!("S{order}"))
}

fn is_subset(a: &[u32], b: &[u32]) -> bool {
    // both sorted
    let mut j = 0;
    for &x in a {
        while j < b.len() && b[j] < x {
            j += 1;
        }
        if j == b.len() || b[j] != x {
            return false;
        }
    }
    true
}

impl PermGroup {
    /// Conjugacy classes as sorted index sets, ordered by least element.
    pub fn conjugacy_classes(&self) -> Result<Vec<Vec<u32>>, GroupError> {
        let n = self.order()?;
        let gens = self.generator_indices()?;
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for x in 0..n as u32 {
            if seen[x as usize] {
                continue;
            }
            seen[x as usize] = true;
            let mut class = vec![x];
            let mut queue = VecDeque::from([x]);
            while let Some(y) = queue.pop_front() {
                for &s in &gens {
                    let z = self.conj_idx(s, y)?;
                    if !seen[z as usize] {
                        seen[z as usize] = true;
                        class.push(z);
                        queue.push_back(z);
                    }
                }
            }
            class.sort_unstable();
            out.push(class);
        }
        Ok(out)
    }

    /// Sorted indices of the normal closure of the given elements.
    pub fn normal_closure_idx(&self, elems: &[u32]) -> Result<Vec<u32>, GroupError> {
        let gens = self.generator_indices()?;
        let mut ngens: Vec<u32> = elems.iter().copied().filter(|&e| e != 0).collect();
        let mut span = self.closure_idx(&ngens)?;
        loop {
            let mut member = vec![false; self.order()?];
            for &x in &span {
                member[x as usize] = true;
            }
            let mut added = false;
            for i in 0..ngens.len() {
                for &s in &gens {
                    let c = self.conj_idx(s, ngens[i])?;
                    if !member[c as usize] {
                        ngens.push(c);
                        span = self.closure_idx(&ngens)?;
                        for &x in &span {
                            member[x as usize] = true;
                        }
                        added = true;
                    }
                }
            }
            if !added {
                return Ok(span);
            }
        }
    }

    pub fn normal_closure(&self, h: &PermGroup) -> Result<PermGroup, GroupError> {
        let idx = self.indices_of(h)?;
        let ncl = self.normal_closure_idx(&idx)?;
        self.subgroup_from_indices(&ncl)
    }

    /// `[G,G]`: normal closure of the commutators of generators.
    pub fn commutator_subgroup(&self) -> Result<PermGroup, GroupError> {
        let gens = self.generator_indices()?;
        let mut comms = Vec::new();
        for (i, &a) in gens.iter().enumerate() {
            for &b in &gens[i + 1..] {
                // a^-1 b^-1 a b
                let ab = self.mul_idx(a, b)?;
                let ba = self.mul_idx(b, a)?;
                comms.push(self.mul_idx(self.inv_idx(ba)?, ab)?);
            }
        }
        let idx = self.normal_closure_idx(&comms)?;
        self.subgroup_from_indices(&idx)
    }

    pub fn is_perfect(&self) -> Result<bool, GroupError> {
        Ok(self.commutator_subgroup()?.order()? == self.order()?)
    }

    /// `p(G)`: the subgroup generated by all elements of `p`-power order.
    pub fn quasi_p_part(&self, p: u64) -> Result<PermGroup, GroupError> {
        let n = self.order()? as u32;
        let mut pel = Vec::new();
        for i in 1..n {
            if matches!(prime_power(self.order_idx(i)?), Some((l, _)) if l == p) {
                pel.push(i);
            }
        }
        let idx = self.closure_idx(&pel)?;
        self.subgroup_from_indices(&idx)
    }

    pub fn is_quasi_p(&self, p: u64) -> Result<bool, GroupError> {
        Ok(self.quasi_p_part(p)?.order()? == self.order()?)
    }

    /// Invariant factors of `G/[G,G]`.
    pub fn abelianization(&self) -> Result<AbelianType, GroupError> {
        let c = self.commutator_subgroup()?;
        let q = QuotientGroup::from_indices(self, &self.indices_of(&c)?)?;
        Ok(abelian_type_of(&q))
    }

    /// Distinct normal closures of single nontrivial elements.
    fn element_normal_closures(&self) -> Result<Vec<Vec<u32>>, GroupError> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for class in self.conjugacy_classes()?.into_iter().skip(1) {
            let ncl = self.normal_closure_idx(&[class[0]])?;
            if seen.insert(ncl.clone()) {
                out.push(ncl);
            }
        }
        Ok(out)
    }

    /// Minimal normal subgroups with their `S^m` decompositions, sorted by
    /// order and then by sorted element list.
    pub fn minimal_normal_subgroups(&self) -> Result<Vec<MinimalNormal>, GroupError> {
        let mins = self.minimal_normal_subgroups_shallow()?;
        let mut out = Vec::new();
        for idx in &mins {
            let group = self.subgroup_from_indices(idx)?;
            let (factor, multiplicity) = decompose_char_simple(&group)?;
            out.push(MinimalNormal { group, factor, multiplicity });
        }
        Ok(out)
    }

    /// Whether `h` is a minimal normal subgroup of `self`.
    pub fn is_minimal_normal(&self, h: &PermGroup) -> Result<bool, GroupError> {
        if h.order()? == 1 || !h.is_normal_in(self)? {
            return Ok(false);
        }
        let idx = self.indices_of(h)?;
        for &x in &idx[1..] {
            if self.normal_closure_idx(&[x])?.len() != idx.len() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// All normal subgroups as sorted index sets, ordered by size then
    /// lexicographically.
    pub fn normal_subgroup_indices(&self) -> Result<Vec<Vec<u32>>, GroupError> {
        let atoms = self.element_normal_closures()?;
        joins_of(&atoms, |a, b| {
            let mut gens: Vec<u32> = a.iter().chain(b.iter()).copied().collect();
            gens.sort_unstable();
            gens.dedup();
            self.closure_idx(&gens)
        })
    }

    pub fn normal_subgroups(&self) -> Result<Vec<PermGroup>, GroupError> {
        self.normal_subgroup_indices()?.iter().map(|s| self.subgroup_from_indices(s)).collect()
    }

    /// Every subgroup as a sorted index set, ordered by size then
    /// lexicographically.
    pub fn subgroup_indices(&self) -> Result<Vec<Vec<u32>>, GroupError> {
        let n = self.order()? as u32;
        let mut seen = HashSet::new();
        let mut cyclic: Vec<(u32, Vec<u32>)> = Vec::new();
        for x in 1..n {
            let c = self.closure_idx(&[x])?;
            if seen.insert(c.clone()) {
                cyclic.push((x, c));
            }
        }
        // subgroups carry a small generating set so joins stay cheap
        let mut all: Vec<(Vec<u32>, Vec<u32>)> = vec![(vec![], vec![0])];
        let mut known: HashSet<Vec<u32>> = HashSet::from([vec![0]]);
        let mut i = 0;
        while i < all.len() {
            let (gens, set) = all[i].clone();
            for (x, c) in &cyclic {
                if is_subset(c, &set) {
                    continue;
                }
                let mut g2 = gens.clone();
                g2.push(*x);
                let s2 = self.closure_idx(&g2)?;
                if known.insert(s2.clone()) {
                    if known.len() > SUBGROUP_LIMIT {
                        return Err(GroupError::CapExceeded(format!("more than {SUBGROUP_LIMIT} subgroups")));
                    }
                    all.push((g2, s2));
                }
            }
            i += 1;
        }
        let mut out: Vec<Vec<u32>> = all.into_iter().map(|(_, s)| s).collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Ok(out)
    }

    pub fn subgroups(&self) -> Result<Vec<PermGroup>, GroupError> {
        self.subgroup_indices()?.iter().map(|s| self.subgroup_from_indices(s)).collect()
    }

    pub fn min_generators(&self, cap_k: usize) -> Result<MinGenerators, GroupError> {
        self.min_generators_with(Exec::best(), cap_k)
    }

    /// Smallest `k <= cap_k` with a `k`-element generating set. The first
    /// generator ranges over conjugacy-class representatives, the rest over
    /// all elements.
    pub fn min_generators_with(&self, exec: Exec, cap_k: usize) -> Result<MinGenerators, GroupError> {
        let n = self.order()?;
        if n == 1 {
            return Ok(MinGenerators { d: 0, generators: vec![] });
        }
        let lower = self.abelianization()?.rank().max(1);
        // high-order elements first: the search is exhaustive either way,
        // but generating sets are usually found early
        let by_order = |v: &mut Vec<u32>| -> Result<(), GroupError> {
            let ord: Vec<u64> = v.iter().map(|&i| self.element(i).map(|g| g.order())).collect::<Result<_, _>>()?;
            let mut keyed: Vec<(u64, u32)> = ord.into_iter().zip(v.iter().copied()).collect();
            keyed.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
            *v = keyed.into_iter().map(|(_, i)| i).collect();
            Ok(())
        };
        let mut reps: Vec<u32> = self.conjugacy_classes()?.iter().skip(1).map(|c| c[0]).collect();
        by_order(&mut reps)?;
        let mut cand: Vec<u32> = (1..n as u32).collect();
        by_order(&mut cand)?;
        for k in lower..=cap_k {
            let found = par::find_map_first(exec, &reps, |&r| {
                let span = self.closure_idx(&[r]).ok()?;
                let mut gens = vec![r];
                self.extend_to_generating(&mut gens, &span, &cand, k - 1, n).then_some(gens)
            });
            if let Some(gens) = found {
                let generators = gens.iter().map(|&i| self.element(i).cloned()).collect::<Result<_, _>>()?;
                return Ok(MinGenerators { d: k, generators });
            }
        }
        Err(GroupError::CapExceeded(format!("no generating set with at most {cap_k} elements")))
    }

    fn extend_to_generating(&self, gens: &mut Vec<u32>, span: &[u32], cand: &[u32], remaining: usize, n: usize) -> bool {
        if remaining == 0 {
            return span.len() == n;
        }
        let mut member = vec![false; n];
        for &x in span {
            member[x as usize] = true;
        }
        for (pos, &x) in cand.iter().enumerate() {
            if member[x as usize] {
                continue;
            }
            gens.push(x);
            let Ok(next) = self.closure_idx(gens) else {
                gens.pop();
                return false;
            };
            let done = if remaining == 1 {
                next.len() == n
            } else {
                next.len() < n && self.extend_to_generating(gens, &next, &cand[pos + 1..], remaining - 1, n)
            };
            if done {
                return true;
            }
            gens.pop();
        }
        false
    }

    /// Multiset of element orders, sorted.
    pub fn order_statistics(&self) -> Result<Vec<u64>, GroupError> {
        let mut v: Vec<u64> = self.elements()?.iter().map(|g| g.order()).collect();
        v.sort_unstable();
        Ok(v)
    }

    /// Abstract isomorphism by backtracking over generator images.
    pub fn is_isomorphic(&self, other: &PermGroup) -> Result<bool, GroupError> {
        let n = self.order()?;
        if n != other.order()? || self.is_abelian() != other.is_abelian() {
            return Ok(false);
        }
        if self.order_statistics()? != other.order_statistics()? {
            return Ok(false);
        }
        if n == 1 {
            return Ok(true);
        }
        // irredundant generators of self
        let mut gens: Vec<u32> = Vec::new();
        let mut span = vec![0u32];
        for g in self.generator_indices()? {
            if span.binary_search(&g).is_err() {
                gens.push(g);
                span = self.closure_idx(&gens)?;
            }
        }
        let orders: Vec<u64> = gens.iter().map(|&g| self.order_idx(g)).collect::<Result<_, _>>()?;
        let mut cands: Vec<Vec<u32>> = Vec::new();
        for &o in &orders {
            let mut c = Vec::new();
            for y in 0..n as u32 {
                if other.order_idx(y)? == o {
                    c.push(y);
                }
            }
            cands.push(c);
        }
        let mut imgs = Vec::with_capacity(gens.len());
        self.iso_search(other, &gens, &cands, &mut imgs)
    }

    fn iso_search(&self, other: &PermGroup, gens: &[u32], cands: &[Vec<u32>], imgs: &mut Vec<u32>) -> Result<bool, GroupError> {
        let k = imgs.len();
        if k == gens.len() {
            return self.extends_to_iso(other, gens, imgs);
        }
        for &y in &cands[k] {
            let mut ok = true;
            for j in 0..k {
                let a = self.order_idx(self.mul_idx(gens[j], gens[k])?)?;
                let b = other.order_idx(other.mul_idx(imgs[j], y)?)?;
                if a != b {
                    ok = false;
                    break;
                }
            }
            if !ok {
                continue;
            }
            imgs.push(y);
            if self.iso_search(other, gens, cands, imgs)? {
                return Ok(true);
            }
            imgs.pop();
        }
        Ok(false)
    }

    fn extends_to_iso(&self, other: &PermGroup, gens: &[u32], imgs: &[u32]) -> Result<bool, GroupError> {
        let n = self.order()?;
        let mut map = vec![u32::MAX; n];
        let mut hit = vec![false; n];
        map[0] = 0;
        hit[0] = true;
        let mut queue = VecDeque::from([0u32]);
        while let Some(x) = queue.pop_front() {
            for (&g, &h) in gens.iter().zip(imgs) {
                let y = self.mul_idx(x, g)?;
                let img = other.mul_idx(map[x as usize], h)?;
                if map[y as usize] == u32::MAX {
                    if hit[img as usize] {
                        return Ok(false);
                    }
                    map[y as usize] = img;
                    hit[img as usize] = true;
                    queue.push_back(y);
                } else if map[y as usize] != img {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Closure of `atoms` under the binary join `join`, sorted by size then
/// lexicographically; includes the trivial subgroup.
fn joins_of<F>(atoms: &[Vec<u32>], join: F) -> Result<Vec<Vec<u32>>, GroupError>
where
    F: Fn(&[u32], &[u32]) -> Result<Vec<u32>, GroupError>,
{
    let mut all: Vec<Vec<u32>> = vec![vec![0]];
    let mut known: HashSet<Vec<u32>> = HashSet::from([vec![0]]);
    for a in atoms {
        if known.insert(a.clone()) {
            all.push(a.clone());
        }
    }
    let mut i = 1;
    while i < all.len() {
        let cur = all[i].clone();
        for a in atoms {
            if is_subset(a, &cur) {
                continue;
            }
            let j = join(&cur, a)?;
            if known.insert(j.clone()) {
                all.push(j);
            }
        }
        i += 1;
    }
    all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(all)
}

/// Invariant factors of an abelian quotient, from counts of elements
/// killed by `l^k`.
pub(crate) fn abelian_type_of(q: &QuotientGroup) -> AbelianType {
    let n = q.order() as u64;
    let orders: Vec<u64> = (0..q.order() as u32).map(|c| q.element_order(c)).collect();
    let mut primary: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
    for (l, a) in factorize(n) {
        // s[k] = log_l #{x : x^{l^k} = 1}
        let mut s = vec![0u32];
        let mut k = 1;
        loop {
            let lk = l.pow(k);
            let cnt = orders.iter().filter(|&&o| lk % o == 0).count() as u64;
            let e = cnt.ilog(l);
            s.push(e);
            if e == a {
                break;
            }
            k += 1;
        }
        // number of cyclic factors with exponent >= k
        let ge: Vec<u32> = (1..s.len()).map(|k| s[k] - s[k - 1]).collect();
        let mut es = Vec::new();
        for k in 0..ge.len() {
            let next = ge.get(k + 1).copied().unwrap_or(0);
            for _ in 0..ge[k] - next {
                es.push(k as u32 + 1);
            }
        }
        primary.insert(l, es);
    }
    AbelianType::from_primary(&primary)
}

/// Decompose a characteristically simple group as `S^m`.
fn decompose_char_simple(h: &PermGroup) -> Result<(SimpleFactor, u32), GroupError> {
    let order = h.order()? as u64;
    if h.is_abelian() {
        let (l, m) = prime_power(order).expect("abelian minimal normal subgroups are elementary abelian");
        debug_assert!(h.elements()?.iter().all(|g| g.order() == 1 || g.order() == l));
        let factor = SimpleFactor { order: l, abelian: true, perfect: false, name: simple_name(l, true) };
        return Ok((factor, m));
    }
    let mins = h.minimal_normal_subgroups_shallow()?;
    let s = &mins[0];
    let s_order = s.len() as u64;
    let m = mins.len() as u32;
    debug_assert_eq!(s_order.checked_pow(m), Some(order));
    let sg = h.subgroup_from_indices(s)?;
    let perfect = sg.is_perfect()?;
    let factor = SimpleFactor { order: s_order, abelian: false, perfect, name: simple_name(s_order, false) };
    Ok((factor, m))
}

impl PermGroup {
    /// Minimal normal subgroups as index sets, without decomposing them.
    fn minimal_normal_subgroups_shallow(&self) -> Result<Vec<Vec<u32>>, GroupError> {
        let ncls = self.element_normal_closures()?;
        let mut mins: Vec<Vec<u32>> = ncls
            .iter()
            .filter(|a| !ncls.iter().any(|b| b.len() < a.len() && is_subset(b, a)))
            .cloned()
            .collect();
        mins.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Ok(mins)
    }
}
