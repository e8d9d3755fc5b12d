use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock};

use super::perm::Perm;
use super::GroupError;

/// Default bound on materialized group orders.
pub const DEFAULT_CAP: usize = 10_000;
/// Groups up to this order get a full multiplication table.
const TABLE_LIMIT: usize = 2000;

/// Materialized element list; index 0 is the identity.
pub struct Elements {
    elems: Vec<Perm>,
    index: HashMap<Perm, u32>,
    table: Option<Vec<u32>>,
    inv: Vec<u32>,
}

impl Elements {
    fn from_list(elems: Vec<Perm>) -> Elements {
        let index: HashMap<Perm, u32> = elems.iter().enumerate().map(|(i, p)| (p.clone(), i as u32)).collect();
        let n = elems.len();
        let table = (n <= TABLE_LIMIT).then(|| {
            let mut t = vec![0u32; n * n];
            for (a, pa) in elems.iter().enumerate() {
                for (b, pb) in elems.iter().enumerate() {
                    t[a * n + b] = index[&pa.compose(pb)];
                }
            }
            t
        });
        let inv = elems.iter().map(|p| index[&p.inverse()]).collect();
        Elements { elems, index, table, inv }
    }
}

/// A permutation group given by generators, with its element set built
/// lazily (once) under an order cap.
pub struct PermGroup {
    degree: usize,
    gens: Vec<Perm>,
    cap: usize,
    mat: OnceLock<Result<Arc<Elements>, GroupError>>,
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        PermGroup { degree: self.degree, gens: self.gens.clone(), cap: self.cap, mat: self.mat.clone() }
    }
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.descriptor())
    }
}

impl PermGroup {
    pub fn new(degree: usize, gens: Vec<Perm>) -> Result<PermGroup, GroupError> {
        if let Some(g) = gens.iter().find(|g| g.degree() != degree) {
            return Err(GroupError::DegreeMismatch { expected: degree, got: g.degree() });
        }
        // identity generators carry no information
        let gens = gens.into_iter().filter(|g| !g.is_identity()).collect();
        Ok(PermGroup { degree, gens, cap: DEFAULT_CAP, mat: OnceLock::new() })
    }

    pub fn with_cap(mut self, cap: usize) -> PermGroup {
        self.cap = cap;
        self.mat = OnceLock::new();
        self
    }

    pub fn trivial(degree: usize) -> PermGroup {
        PermGroup::new(degree, Vec::new()).unwrap()
    }

    pub fn symmetric(n: usize) -> PermGroup {
        let mut gens = Vec::new();
        if n >= 2 {
            let cyc: Vec<u32> = (0..n as u32).collect();
            gens.push(Perm::from_cycles(n, &[cyc]).unwrap());
            gens.push(Perm::from_cycles(n, &[vec![0, 1]]).unwrap());
        }
        PermGroup::new(n, gens).unwrap()
    }

    pub fn alternating(n: usize) -> PermGroup {
        let gens = (2..n as u32).map(|k| Perm::from_cycles(n, &[vec![0, 1, k]]).unwrap()).collect();
        PermGroup::new(n, gens).unwrap()
    }

    pub fn cyclic(n: usize) -> PermGroup {
        let gens = if n >= 2 { vec![Perm::from_cycles(n, &[(0..n as u32).collect()]).unwrap()] } else { vec![] };
        PermGroup::new(n.max(1), gens).unwrap()
    }

    /// Parse `deg=N; gens=(0 1 2),(0 1)`.
    pub fn parse(s: &str) -> Result<PermGroup, GroupError> {
        let mut degree = None;
        let mut gens_src = None;
        for part in s.split(';') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let (k, v) = part.split_once('=').ok_or_else(|| GroupError::Parse(format!("expected key=value in `{part}`")))?;
            match k.trim() {
                "deg" => degree = Some(v.trim().parse::<usize>().map_err(|_| GroupError::Parse(format!("bad degree `{v}`")))?),
                "gens" => gens_src = Some(v.trim().to_string()),
                other => return Err(GroupError::Parse(format!("unknown key `{other}`"))),
            }
        }
        let degree = degree.ok_or_else(|| GroupError::Parse("missing `deg=`".into()))?;
        let mut gens = Vec::new();
        if let Some(src) = gens_src {
            // generators are separated by commas between `)` and `(`
            let mut cur = String::new();
            let mut depth = 0;
            for ch in src.chars() {
                match ch {
                    '(' => depth += 1,
                    ')' => depth -= 1,
                    ',' if depth == 0 => {
                        gens.push(Perm::parse(degree, &cur)?);
                        cur.clear();
                        continue;
                    }
                    _ => {}
                }
                cur.push(ch);
            }
            if !cur.trim().is_empty() {
                gens.push(Perm::parse(degree, &cur)?);
            }
        }
        PermGroup::new(degree, gens)
    }

    pub fn descriptor(&self) -> String {
        let gs: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        format!("deg={}; gens={}", self.degree, gs.join(","))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.gens
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn identity(&self) -> Perm {
        Perm::identity(self.degree)
    }

    fn materialize(&self) -> Result<&Arc<Elements>, GroupError> {
        self.mat
            .get_or_init(|| {
                let id = self.identity();
                let mut elems = vec![id.clone()];
                let mut seen: HashMap<Perm, ()> = HashMap::new();
                seen.insert(id, ());
                let mut i = 0;
                while i < elems.len() {
                    for s in &self.gens {
                        let y = elems[i].compose(s);
                        if !seen.contains_key(&y) {
                            if elems.len() >= self.cap {
                                return Err(GroupError::OrderCapExceeded { cap: self.cap });
                            }
                            seen.insert(y.clone(), ());
                            elems.push(y);
                        }
                    }
                    i += 1;
                }
                Ok(Arc::new(Elements::from_list(elems)))
            })
            .as_ref()
            .map_err(|e| e.clone())
    }

    pub fn order(&self) -> Result<usize, GroupError> {
        Ok(self.materialize()?.elems.len())
    }

    pub fn elements(&self) -> Result<&[Perm], GroupError> {
        Ok(&self.materialize()?.elems)
    }

    pub fn element(&self, i: u32) -> Result<&Perm, GroupError> {
        Ok(&self.materialize()?.elems[i as usize])
    }

    pub fn index_of(&self, g: &Perm) -> Result<Option<u32>, GroupError> {
        Ok(self.materialize()?.index.get(g).copied())
    }

    pub fn contains(&self, g: &Perm) -> Result<bool, GroupError> {
        Ok(g.degree() == self.degree && self.index_of(g)?.is_some())
    }

    /// Product of elements by index.
    pub fn mul_idx(&self, a: u32, b: u32) -> Result<u32, GroupError> {
        let m = self.materialize()?;
        let n = m.elems.len();
        Ok(match &m.table {
            Some(t) => t[a as usize * n + b as usize],
            None => m.index[&m.elems[a as usize].compose(&m.elems[b as usize])],
        })
    }

    pub fn inv_idx(&self, a: u32) -> Result<u32, GroupError> {
        Ok(self.materialize()?.inv[a as usize])
    }

    /// `a b a^{-1}`
    pub fn conj_idx(&self, a: u32, b: u32) -> Result<u32, GroupError> {
        let ab = self.mul_idx(a, b)?;
        self.mul_idx(ab, self.inv_idx(a)?)
    }

    pub fn generator_indices(&self) -> Result<Vec<u32>, GroupError> {
        let m = self.materialize()?;
        Ok(self.gens.iter().map(|g| m.index[g]).collect())
    }

    pub fn order_idx(&self, a: u32) -> Result<u64, GroupError> {
        Ok(self.element(a)?.order())
    }

    /// Sorted indices of the subgroup generated by `gens` (indices into self).
    pub fn closure_idx(&self, gens: &[u32]) -> Result<Vec<u32>, GroupError> {
        let n = self.order()?;
        let mut member = vec![false; n];
        member[0] = true;
        let mut queue = VecDeque::from([0u32]);
        let mut out = vec![0u32];
        while let Some(x) = queue.pop_front() {
            for &s in gens {
                let y = self.mul_idx(x, s)?;
                if !member[y as usize] {
                    member[y as usize] = true;
                    out.push(y);
                    queue.push_back(y);
                }
            }
        }
        out.sort_unstable();
        Ok(out)
    }

    /// Indices (into self) of the elements of a subgroup `h`.
    pub fn indices_of(&self, h: &PermGroup) -> Result<Vec<u32>, GroupError> {
        let mut out = Vec::with_capacity(h.order()?);
        for g in h.elements()? {
            out.push(self.index_of(g)?.ok_or(GroupError::NotSubgroup)?);
        }
        out.sort_unstable();
        Ok(out)
    }

    /// Subgroup with the given (sorted) element indices. The element list
    /// is handed over directly, so nothing is re-enumerated.
    pub fn subgroup_from_indices(&self, idx: &[u32]) -> Result<PermGroup, GroupError> {
        let mut member = vec![false; self.order()?];
        for &i in idx {
            member[i as usize] = true;
        }
        // greedy generating set
        let mut gens: Vec<u32> = Vec::new();
        let mut span = vec![0u32];
        let mut in_span = vec![false; member.len()];
        in_span[0] = true;
        for &i in idx {
            if !in_span[i as usize] {
                gens.push(i);
                span = self.closure_idx(&gens)?;
                for &j in &span {
                    in_span[j as usize] = true;
                }
            }
        }
        let mut elems: Vec<Perm> = Vec::with_capacity(idx.len());
        for &i in idx {
            elems.push(self.element(i)?.clone());
        }
        let gens = gens.iter().map(|&i| self.element(i).cloned()).collect::<Result<Vec<_>, _>>()?;
        let g = PermGroup { degree: self.degree, gens, cap: self.cap, mat: OnceLock::new() };
        let _ = g.mat.set(Ok(Arc::new(Elements::from_list(elems))));
        Ok(g)
    }

    pub fn subgroup(&self, gens: Vec<Perm>) -> Result<PermGroup, GroupError> {
        Ok(PermGroup::new(self.degree, gens)?.with_cap(self.cap))
    }

    pub fn is_subgroup_of(&self, g: &PermGroup) -> Result<bool, GroupError> {
        if self.degree != g.degree {
            return Ok(false);
        }
        for s in &self.gens {
            if !g.contains(s)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether `self` is a normal subgroup of `g`.
    pub fn is_normal_in(&self, g: &PermGroup) -> Result<bool, GroupError> {
        if !self.is_subgroup_of(g)? {
            return Ok(false);
        }
        for t in g.generators() {
            let ti = t.inverse();
            for s in &self.gens {
                if !self.contains(&t.compose(s).compose(&ti))? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Elements sorted lexicographically by image list.
    pub fn sorted_elements(&self) -> Result<Vec<Perm>, GroupError> {
        let mut v = self.elements()?.to_vec();
        v.sort();
        Ok(v)
    }

    pub fn is_trivial(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_abelian(&self) -> bool {
        self.gens.iter().all(|a| self.gens.iter().all(|b| a.compose(b) == b.compose(a)))
    }

    /// Same element set (as subgroups of a common symmetric group).
    pub fn same_elements(&self, other: &PermGroup) -> Result<bool, GroupError> {
        Ok(self.degree == other.degree
            && self.order()? == other.order()?
            && self.is_subgroup_of(other)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_orders() {
        assert_eq!(PermGroup::symmetric(4).order().unwrap(), 24);
        assert_eq!(PermGroup::alternating(5).order().unwrap(), 60);
        assert_eq!(PermGroup::cyclic(6).order().unwrap(), 6);
        assert_eq!(PermGroup::trivial(3).order().unwrap(), 1);
    }

    #[test]
    fn cap_is_enforced() {
        let g = PermGroup::symmetric(8).with_cap(1000);
        assert_eq!(g.order(), Err(GroupError::OrderCapExceeded { cap: 1000 }));
    }

    #[test]
    fn descriptor_roundtrip() {
        let g = PermGroup::parse("deg=5; gens=(0 1 2 3 4),(0 1)").unwrap();
        assert_eq!(g.order().unwrap(), 120);
        let h = PermGroup::parse(&g.descriptor()).unwrap();
        assert!(h.same_elements(&g).unwrap());
    }

    #[test]
    fn normality() {
        let s4 = PermGroup::symmetric(4);
        let v4 = PermGroup::parse("deg=4; gens=(0 1)(2 3),(0 2)(1 3)").unwrap();
        assert!(v4.is_normal_in(&s4).unwrap());
        let c2 = PermGroup::parse("deg=4; gens=(0 1)").unwrap();
        assert!(!c2.is_normal_in(&s4).unwrap());
    }
}
