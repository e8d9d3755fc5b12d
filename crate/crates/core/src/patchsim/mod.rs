//! Covers modeled as finite group actions: induction, quotients by normal
//! subgroups, and the component count of a glued pair of covers.

use std::collections::VecDeque;

use thiserror::Error;

use crate::groups::{GroupError, Perm, PermGroup, QuotientGroup};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PatchError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("generator images do not define an action")]
    NotAnAction,
    #[error("G-sets are over different groups")]
    GroupMismatch,
    #[error("cover is not transitive")]
    NotTransitive,
}

/// Finite set `{0..M-1}` with an action of `group`, given on generators.
#[derive(Clone, Debug)]
pub struct GSet {
    group: PermGroup,
    size: usize,
    action: Vec<Perm>,
    // action of every group element, by element index
    table: Vec<Perm>,
}

impl GSet {
    /// `action[k]` is the permutation attached to `group.generators()[k]`.
    pub fn new(group: &PermGroup, size: usize, action: Vec<Perm>) -> Result<GSet, PatchError> {
        if action.len() != group.generators().len() || action.iter().any(|a| a.degree() != size) {
            return Err(PatchError::NotAnAction);
        }
        let gens = group.generator_indices()?;
        let n = group.order()?;
        let mut table: Vec<Option<Perm>> = vec![None; n];
        table[0] = Some(Perm::identity(size));
        let mut queue = VecDeque::from([0u32]);
        // x s acts as act(x) o act(s)
        while let Some(x) = queue.pop_front() {
            for (k, &s) in gens.iter().enumerate() {
                let y = group.mul_idx(x, s)? as usize;
                let img = table[x as usize].as_ref().unwrap().compose(&action[k]);
                match &table[y] {
                    None => {
                        table[y] = Some(img);
                        queue.push_back(y as u32);
                    }
                    Some(old) if *old != img => return Err(PatchError::NotAnAction),
                    Some(_) => {}
                }
            }
        }
        let table = table.into_iter().map(|t| t.unwrap()).collect();
        Ok(GSet { group: group.clone(), size, action, table })
    }

    /// The group acting on itself by left multiplication.
    pub fn regular(group: &PermGroup) -> Result<GSet, PatchError> {
        let n = group.order()?;
        let action = group
            .generator_indices()?
            .iter()
            .map(|&s| Perm::from_images((0..n as u32).map(|x| group.mul_idx(s, x)).collect::<Result<_, _>>()?))
            .collect::<Result<_, _>>()?;
        GSet::new(group, n, action)
    }

    /// `size` fixed points.
    pub fn trivial(group: &PermGroup, size: usize) -> Result<GSet, PatchError> {
        GSet::new(group, size, vec![Perm::identity(size); group.generators().len()])
    }

    /// Left cosets `G/K`, numbered by first appearance in `G`'s element order.
    pub fn cosets(group: &PermGroup, k: &PermGroup) -> Result<GSet, PatchError> {
        let (coset_of, reps) = left_cosets(group, k)?;
        let action = group
            .generator_indices()?
            .iter()
            .map(|&s| {
                let img = reps.iter().map(|&r| Ok(coset_of[group.mul_idx(s, r)? as usize])).collect::<Result<_, GroupError>>()?;
                Ok(Perm::from_images(img)?)
            })
            .collect::<Result<_, PatchError>>()?;
        GSet::new(group, reps.len(), action)
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn generator_action(&self) -> &[Perm] {
        &self.action
    }

    /// Action of the group element with index `g`.
    pub fn act_idx(&self, g: u32, x: u32) -> u32 {
        self.table[g as usize].apply(x)
    }

    pub fn act(&self, g: &Perm, x: u32) -> Result<u32, PatchError> {
        let i = self.group.index_of(g)?.ok_or(GroupError::NotSubgroup)?;
        Ok(self.act_idx(i, x))
    }

    /// Orbits, each sorted, ordered by least point.
    pub fn orbits(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.size];
        let mut out = Vec::new();
        for x in 0..self.size as u32 {
            if seen[x as usize] {
                continue;
            }
            seen[x as usize] = true;
            let mut orb = vec![x];
            let mut i = 0;
            while i < orb.len() {
                for a in &self.action {
                    let y = a.apply(orb[i]);
                    if !seen[y as usize] {
                        seen[y as usize] = true;
                        orb.push(y);
                    }
                }
                i += 1;
            }
            orb.sort_unstable();
            out.push(orb);
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.size > 0 && self.orbits().len() == 1
    }

    pub fn stabilizer(&self, x: u32) -> Result<PermGroup, PatchError> {
        let idx: Vec<u32> = (0..self.table.len() as u32).filter(|&g| self.act_idx(g, x) == x).collect();
        Ok(self.group.subgroup_from_indices(&idx)?)
    }

    /// `X` followed by `Y` (points of `Y` shifted by `|X|`).
    pub fn disjoint_union(&self, other: &GSet) -> Result<GSet, PatchError> {
        if !same_group(&self.group, &other.group)? {
            return Err(PatchError::GroupMismatch);
        }
        let size = self.size + other.size;
        let action = self
            .group
            .generators()
            .iter()
            .zip(&self.action)
            .map(|(s, a)| {
                let b = other.table_of(s)?;
                let mut img: Vec<u32> = a.images().to_vec();
                img.extend(b.images().iter().map(|&y| y + self.size as u32));
                Ok(Perm::from_images(img)?)
            })
            .collect::<Result<_, PatchError>>()?;
        GSet::new(&self.group, size, action)
    }

    /// Restriction to a subgroup `k`.
    pub fn restrict(&self, k: &PermGroup) -> Result<GSet, PatchError> {
        let action = k.generators().iter().map(|s| self.table_of(s)).collect::<Result<_, _>>()?;
        GSet::new(k, self.size, action)
    }

    fn table_of(&self, g: &Perm) -> Result<Perm, PatchError> {
        let i = self.group.index_of(g)?.ok_or(GroupError::NotSubgroup)?;
        Ok(self.table[i as usize].clone())
    }
}

fn same_group(a: &PermGroup, b: &PermGroup) -> Result<bool, GroupError> {
    a.same_elements(b)
}

/// Left cosets `gK`: coset id per element index, and representatives.
fn left_cosets(g: &PermGroup, k: &PermGroup) -> Result<(Vec<u32>, Vec<u32>), GroupError> {
    let kidx = g.indices_of(k)?;
    let n = g.order()?;
    let mut coset_of = vec![u32::MAX; n];
    let mut reps = Vec::new();
    for x in 0..n as u32 {
        if coset_of[x as usize] != u32::MAX {
            continue;
        }
        let id = reps.len() as u32;
        reps.push(x);
        for &m in &kidx {
            coset_of[g.mul_idx(x, m)? as usize] = id;
        }
    }
    Ok((coset_of, reps))
}

/// `Ind_G^Gamma X`: points `(i, x) -> i |X| + x` for left coset
/// representatives `t_i` of `G` (with `t_0 = e`); `gamma (t_i, x) = (t_j, g x)`
/// where `gamma t_i = t_j g`.
pub fn induce(gamma: &PermGroup, g: &PermGroup, x: &GSet) -> Result<GSet, PatchError> {
    if !g.is_subgroup_of(gamma)? {
        return Err(GroupError::NotSubgroup.into());
    }
    if !same_group(g, x.group())? {
        return Err(PatchError::GroupMismatch);
    }
    let (coset_of, reps) = left_cosets(gamma, g)?;
    let m = x.size();
    let k = reps.len();
    let action = gamma
        .generator_indices()?
        .iter()
        .map(|&s| {
            let mut img = vec![0u32; k * m];
            for (i, &t) in reps.iter().enumerate() {
                let st = gamma.mul_idx(s, t)?;
                let j = coset_of[st as usize];
                // g = t_j^{-1} s t_i
                let gi = gamma.mul_idx(gamma.inv_idx(reps[j as usize])?, st)?;
                let gperm = gamma.element(gi)?;
                for p in 0..m as u32 {
                    img[i * m + p as usize] = j * m as u32 + x.act(gperm, p)?;
                }
            }
            Ok(Perm::from_images(img)?)
        })
        .collect::<Result<_, PatchError>>()?;
    GSet::new(gamma, k * m, action)
}

/// `W/H` as a `Gamma/H`-set, plus the quotient group. Orbits of `H` are
/// numbered by least point.
pub fn quotient_action(w: &GSet, h: &PermGroup) -> Result<(GSet, QuotientGroup), PatchError> {
    let gamma = w.group();
    let q = QuotientGroup::new(gamma, h)?;
    let hset = w.restrict(h)?;
    let orbits = hset.orbits();
    let mut orbit_of = vec![0u32; w.size()];
    for (i, o) in orbits.iter().enumerate() {
        for &x in o {
            orbit_of[x as usize] = i as u32;
        }
    }
    // lift each generator of the quotient to a coset representative
    let action = q
        .as_perm_group()
        .generators()
        .iter()
        .map(|c| {
            let r = q.rep(q.coset_of_perm(c));
            Perm::from_images(orbits.iter().map(|o| orbit_of[w.act_idx(r, o[0]) as usize]).collect())
        })
        .collect::<Result<_, _>>()?;
    let qset = GSet::new(q.as_perm_group(), orbits.len(), action)?;
    Ok((qset, q))
}

/// Whether `a` and `b` are conjugate subgroups of `g`.
pub fn are_conjugate(g: &PermGroup, a: &PermGroup, b: &PermGroup) -> Result<bool, GroupError> {
    if a.order()? != b.order()? {
        return Ok(false);
    }
    for t in g.elements()? {
        let ti = t.inverse();
        let mut ok = true;
        for s in a.generators() {
            if !b.contains(&t.compose(s).compose(&ti))? {
                ok = false;
                break;
            }
        }
        if ok {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Isomorphism of `G`-sets: orbits matched one-to-one with conjugate
/// point stabilizers.
pub fn is_isomorphic_gsets(x: &GSet, y: &GSet) -> Result<bool, PatchError> {
    if !same_group(x.group(), y.group())? {
        return Err(PatchError::GroupMismatch);
    }
    if x.size() != y.size() {
        return Ok(false);
    }
    let g = x.group();
    let xs: Vec<PermGroup> = x.orbits().iter().map(|o| x.stabilizer(o[0])).collect::<Result<_, _>>()?;
    let mut ys: Vec<Option<PermGroup>> = y.orbits().iter().map(|o| y.stabilizer(o[0]).map(Some)).collect::<Result<_, _>>()?;
    if xs.len() != ys.len() {
        return Ok(false);
    }
    // conjugacy is an equivalence relation, so greedy matching is exact
    for a in &xs {
        let mut matched = false;
        for slot in ys.iter_mut() {
            if let Some(b) = slot {
                if are_conjugate(g, a, b)? {
                    *slot = None;
                    matched = true;
                    break;
                }
            }
        }
        if !matched {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Two transitive covers `X` (a `G`-set) and `Y` (an `H`-set) glued inside
/// `Gamma`.
#[derive(Clone, Debug)]
pub struct PatchDiagram {
    pub gamma: PermGroup,
    pub g: PermGroup,
    pub h: PermGroup,
    pub x: GSet,
    pub y: GSet,
}

#[derive(Clone, Debug)]
pub struct PatchReport {
    /// `[Gamma : <G', H'>]`
    pub components: usize,
    /// Component count from the gluing graph.
    pub glued_components: usize,
    pub generated: PermGroup,
}

/// Stabilizer in `Gamma` of the component of `Ind X` through the base point.
fn component_stabilizer(gamma: &PermGroup, sub: &PermGroup, x: &GSet) -> Result<PermGroup, PatchError> {
    if !x.is_transitive() {
        return Err(PatchError::NotTransitive);
    }
    let w = induce(gamma, sub, x)?;
    let m = x.size() as u32;
    // component i is the block of points i m .. (i+1) m
    let idx: Vec<u32> = (0..gamma.order()? as u32).filter(|&g| w.act_idx(g, 0) < m).collect();
    Ok(gamma.subgroup_from_indices(&idx)?)
}

pub fn patch_components(d: &PatchDiagram) -> Result<PatchReport, PatchError> {
    let gp = component_stabilizer(&d.gamma, &d.g, &d.x)?;
    let hp = component_stabilizer(&d.gamma, &d.h, &d.y)?;
    let mut gens = gp.generators().to_vec();
    gens.extend(hp.generators().iter().cloned());
    let generated = d.gamma.subgroup(gens)?;
    let n = d.gamma.order()?;
    let components = n / generated.order()?;
    // gluing graph: every gamma joins its X-side component gamma G' to its
    // Y-side component gamma H'
    let (cg, rg) = left_cosets(&d.gamma, &gp)?;
    let (ch, rh) = left_cosets(&d.gamma, &hp)?;
    let mut uf = UnionFind::new(rg.len() + rh.len());
    for x in 0..n {
        uf.union(cg[x] as usize, rg.len() + ch[x] as usize);
    }
    let glued_components = uf.count();
    Ok(PatchReport { components, glued_components, generated })
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }

    fn count(&mut self) -> usize {
        (0..self.parent.len()).filter(|&x| self.find(x) == x).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> PermGroup {
        PermGroup::parse(s).unwrap()
    }

    #[test]
    fn induce_regular() {
        let s3 = PermGroup::symmetric(3);
        let c2 = g("deg=3; gens=(0 1)");
        let x = GSet::regular(&c2).unwrap();
        let w = induce(&s3, &c2, &x).unwrap();
        assert_eq!(w.size(), 6);
        assert!(is_isomorphic_gsets(&w, &GSet::regular(&s3).unwrap()).unwrap());
        assert!(!is_isomorphic_gsets(&w, &GSet::trivial(&s3, 6).unwrap()).unwrap());
        // induction from the whole group is the identity
        let r = GSet::regular(&s3).unwrap();
        assert!(is_isomorphic_gsets(&induce(&s3, &s3, &r).unwrap(), &r).unwrap());
    }

    #[test]
    fn quotient_recovers_x() {
        let s3 = PermGroup::symmetric(3);
        let a3 = PermGroup::alternating(3);
        let c2 = g("deg=3; gens=(0 1)");
        let x = GSet::regular(&c2).unwrap();
        let w = induce(&s3, &c2, &x).unwrap();
        let (wq, q) = quotient_action(&w, &a3).unwrap();
        assert_eq!((wq.size(), q.order()), (2, 2));
        assert!(wq.is_transitive());
        let (same, _) = quotient_action(&w, &PermGroup::trivial(3)).unwrap();
        assert_eq!(same.size(), 6);
    }

    #[test]
    fn conjugate_stabilizers() {
        let s3 = PermGroup::symmetric(3);
        let a = GSet::cosets(&s3, &g("deg=3; gens=(0 1)")).unwrap();
        let b = GSet::cosets(&s3, &g("deg=3; gens=(0 2)")).unwrap();
        assert!(is_isomorphic_gsets(&a, &b).unwrap());
        assert!(!is_isomorphic_gsets(&a, &GSet::cosets(&s3, &PermGroup::alternating(3)).unwrap().disjoint_union(&GSet::trivial(&s3, 1).unwrap()).unwrap()).unwrap());
    }

    #[test]
    fn components() {
        let s3 = PermGroup::symmetric(3);
        let gg = g("deg=3; gens=(0 1)");
        let hh = PermGroup::alternating(3);
        let d = PatchDiagram {
            gamma: s3.clone(),
            g: gg.clone(),
            h: hh.clone(),
            x: GSet::regular(&gg).unwrap(),
            y: GSet::regular(&hh).unwrap(),
        };
        let r = patch_components(&d).unwrap();
        assert_eq!((r.components, r.glued_components), (1, 1));
        let v4 = g("deg=4; gens=(0 1),(2 3)");
        let a = g("deg=4; gens=(0 1)");
        let d = PatchDiagram { gamma: v4, g: a.clone(), h: a.clone(), x: GSet::regular(&a).unwrap(), y: GSet::regular(&a).unwrap() };
        let r = patch_components(&d).unwrap();
        assert_eq!((r.components, r.glued_components), (2, 2));
    }

    #[test]
    fn bad_action() {
        let c3 = PermGroup::cyclic(3);
        let t = Perm::parse(2, "(0 1)").unwrap();
        assert_eq!(GSet::new(&c3, 2, vec![t]).unwrap_err(), PatchError::NotAnAction);
    }
}
