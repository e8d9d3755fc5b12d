use std::collections::VecDeque;

use super::abelian::AbelianType;
use super::group::{PermGroup, DEFAULT_CAP};
use super::perm::Perm;
use super::GroupError;
use crate::algebra::prime::checked_pow;

/// Heisenberg group of unitriangular 3x3 matrices over `Z/p^m`, acting on
/// its own elements by right multiplication.
pub fn heisenberg(p: u64, m: u32) -> Result<PermGroup, GroupError> {
    heisenberg_capped(p, m, DEFAULT_CAP)
}

fn heisenberg_capped(p: u64, m: u32, cap: usize) -> Result<PermGroup, GroupError> {
    let q = checked_pow(p, m).ok_or(GroupError::OrderCapExceeded { cap })? as usize;
    let order = q.checked_pow(3).filter(|&o| o <= cap).ok_or(GroupError::OrderCapExceeded { cap })?;
    // (a, b, c) <-> a + q b + q^2 c; product (a+a', b+b', c+c'+ab')
    let idx = |a: usize, b: usize, c: usize| (a % q + q * (b % q) + q * q * (c % q)) as u32;
    let mut x = Vec::with_capacity(order);
    let mut y = Vec::with_capacity(order);
    for c in 0..q {
        for b in 0..q {
            for a in 0..q {
                x.push(idx(a + 1, b, c));
                y.push(idx(a, b + 1, c + a));
            }
        }
    }
    let gens = vec![Perm::from_images(x)?, Perm::from_images(y)?];
    Ok(PermGroup::new(order, gens)?.with_cap(cap))
}

/// Product of Heisenberg groups over `Z/p^{m_i}`, one per cyclic factor of
/// the abelian `p`-group `a`. Its commutator subgroup is isomorphic to `a`.
pub fn heisenberg_product(a: &AbelianType) -> Result<PermGroup, GroupError> {
    if a.is_trivial() {
        return Ok(PermGroup::trivial(1));
    }
    let p = a.prime().ok_or_else(|| GroupError::NotPGroup(a.to_string()))?;
    let ms = a.p_exponents(p).ok_or_else(|| GroupError::NotPGroup(a.to_string()))?;
    let cap = DEFAULT_CAP;
    let total = ms.iter().try_fold(1u64, |acc, &m| checked_pow(p, 3 * m).and_then(|o| acc.checked_mul(o)));
    if total.is_none_or(|t| t > cap as u64) {
        return Err(GroupError::OrderCapExceeded { cap });
    }
    let mut acc: Option<PermGroup> = None;
    for &m in &ms {
        let b = heisenberg_capped(p, m, cap)?;
        acc = Some(match acc {
            None => b,
            Some(prev) => direct_product(&prev, &b),
        });
    }
    Ok(acc.expect("nontrivial type has a factor"))
}

/// `A x B` acting on the disjoint union of the two point sets.
pub fn direct_product(a: &PermGroup, b: &PermGroup) -> PermGroup {
    let deg = a.degree() + b.degree();
    let mut gens: Vec<Perm> = a.generators().iter().map(|g| g.shifted(0, deg)).collect();
    gens.extend(b.generators().iter().map(|g| g.shifted(a.degree(), deg)));
    PermGroup::new(deg, gens).unwrap().with_cap(a.cap().max(b.cap()))
}

/// `H^l` on `l` disjoint copies of the points.
pub fn direct_power(h: &PermGroup, l: usize) -> PermGroup {
    let mut acc = PermGroup::trivial(0).with_cap(h.cap());
    for _ in 0..l {
        acc = direct_product(&acc, h);
    }
    acc
}

/// `H x| G` realized on the set `H x G` by left multiplication.
#[derive(Clone, Debug)]
pub struct Semidirect {
    pub group: PermGroup,
    pub h: PermGroup,
    pub g: PermGroup,
    // phi[g][h] = index of g(h) in H
    phi: Vec<Vec<u32>>,
}

/// Extend generator images to a homomorphism table `src -> dst` by index,
/// failing on inconsistency.
fn extend_hom(src: &PermGroup, dst: &PermGroup, images: &[u32]) -> Result<Option<Vec<u32>>, GroupError> {
    let n = src.order()?;
    let gens = src.generator_indices()?;
    let mut map = vec![u32::MAX; n];
    map[0] = 0;
    let mut queue = VecDeque::from([0u32]);
    while let Some(x) = queue.pop_front() {
        for (&s, &t) in gens.iter().zip(images) {
            let y = src.mul_idx(x, s)?;
            let img = dst.mul_idx(map[x as usize], t)?;
            if map[y as usize] == u32::MAX {
                map[y as usize] = img;
                queue.push_back(y);
            } else if map[y as usize] != img {
                return Ok(None);
            }
        }
    }
    Ok(Some(map))
}

/// `action[s][t]` is the image of `h.generators()[t]` under the
/// automorphism attached to `g.generators()[s]`.
pub fn semidirect(h: &PermGroup, g: &PermGroup, action: &[Vec<Perm>]) -> Result<Semidirect, GroupError> {
    let hn = h.order()?;
    let gn = g.order()?;
    let cap = h.cap().max(g.cap());
    if hn.checked_mul(gn).is_none_or(|o| o > cap) {
        return Err(GroupError::OrderCapExceeded { cap });
    }
    if action.len() != g.generators().len() {
        return Err(GroupError::ActionNotHomomorphic);
    }
    // automorphisms of H for each generator of G
    let mut gen_auts = Vec::new();
    for imgs in action {
        if imgs.len() != h.generators().len() {
            return Err(GroupError::ActionNotHomomorphic);
        }
        let mut idx = Vec::new();
        for im in imgs {
            idx.push(h.index_of(im)?.ok_or(GroupError::ActionNotHomomorphic)?);
        }
        let map = extend_hom(h, h, &idx)?.ok_or(GroupError::ActionNotHomomorphic)?;
        let mut hit = vec![false; hn];
        for &y in &map {
            hit[y as usize] = true;
        }
        if hit.iter().any(|&b| !b) {
            return Err(GroupError::ActionNotHomomorphic);
        }
        gen_auts.push(map);
    }
    // extend to all of G: phi_{x s} = phi_x o phi_s
    let ggens = g.generator_indices()?;
    let mut phi: Vec<Option<Vec<u32>>> = vec![None; gn];
    phi[0] = Some((0..hn as u32).collect());
    let mut queue = VecDeque::from([0u32]);
    while let Some(x) = queue.pop_front() {
        for (k, &s) in ggens.iter().enumerate() {
            let y = g.mul_idx(x, s)? as usize;
            let px = phi[x as usize].as_ref().unwrap();
            let comp: Vec<u32> = gen_auts[k].iter().map(|&t| px[t as usize]).collect();
            match &phi[y] {
                None => {
                    phi[y] = Some(comp);
                    queue.push_back(y as u32);
                }
                Some(old) if *old != comp => return Err(GroupError::ActionNotHomomorphic),
                Some(_) => {}
            }
        }
    }
    let phi: Vec<Vec<u32>> = phi.into_iter().map(|v| v.unwrap()).collect();
    let sd = Semidirect { group: PermGroup::trivial(1), h: h.clone(), g: g.clone(), phi };
    let mut gens = Vec::new();
    for t in h.generator_indices()? {
        gens.push(sd.element(t, 0)?);
    }
    for &s in &ggens {
        gens.push(sd.element(0, s)?);
    }
    let group = PermGroup::new(hn * gn, gens)?.with_cap(cap);
    Ok(Semidirect { group, ..sd })
}

/// `H x| G` for subgroups of a common group, `G` acting by conjugation.
pub fn semidirect_by_conjugation(h: &PermGroup, g: &PermGroup) -> Result<Semidirect, GroupError> {
    let action: Vec<Vec<Perm>> = g
        .generators()
        .iter()
        .map(|s| {
            let si = s.inverse();
            h.generators().iter().map(|t| s.compose(t).compose(&si)).collect()
        })
        .collect();
    semidirect(h, g, &action)
}

impl Semidirect {
    /// Permutation of `(h, g)` by index into `H` and `G`.
    pub fn element(&self, hi: u32, gi: u32) -> Result<Perm, GroupError> {
        let gn = self.g.order()?;
        let hn = self.h.order()?;
        let ph = &self.phi[gi as usize];
        let mut img = vec![0u32; hn * gn];
        for h2 in 0..hn as u32 {
            let nh = self.h.mul_idx(hi, ph[h2 as usize])?;
            for g2 in 0..gn as u32 {
                let ng = self.g.mul_idx(gi, g2)?;
                img[h2 as usize * gn + g2 as usize] = nh * gn as u32 + ng;
            }
        }
        Perm::from_images(img)
    }

    /// Indices `(h, g)` of an element of `group`.
    pub fn pair_of(&self, x: &Perm) -> Result<(u32, u32), GroupError> {
        let gn = self.g.order()? as u32;
        let v = x.apply(0);
        Ok((v / gn, v % gn))
    }

    /// Projection onto `G`, as an index into `G`.
    pub fn project(&self, x: &Perm) -> Result<u32, GroupError> {
        Ok(self.pair_of(x)?.1)
    }

    /// `H x {e}`.
    pub fn kernel(&self) -> Result<PermGroup, GroupError> {
        let gens = self.h.generator_indices()?.iter().map(|&t| self.element(t, 0)).collect::<Result<_, _>>()?;
        self.group.subgroup(gens)
    }

    /// `{e} x G`.
    pub fn complement(&self) -> Result<PermGroup, GroupError> {
        let gens = self.g.generator_indices()?.iter().map(|&s| self.element(0, s)).collect::<Result<_, _>>()?;
        self.group.subgroup(gens)
    }

    /// Automorphism of `H` (as an index table) attached to `G`'s element `gi`.
    pub fn action_of(&self, gi: u32) -> &[u32] {
        &self.phi[gi as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn heisenberg_orders() {
        let b = heisenberg(2, 1).unwrap();
        assert_eq!(b.order().unwrap(), 8);
        assert_eq!(b.commutator_subgroup().unwrap().order().unwrap(), 2);
        let b = heisenberg(3, 1).unwrap();
        assert_eq!(b.order().unwrap(), 27);
        assert_eq!(b.abelianization().unwrap().factors(), &[3, 3]);
        let a = AbelianType::from_cyclic_orders(&[2, 2]);
        let b = heisenberg_product(&a).unwrap();
        assert_eq!(b.order().unwrap(), 64);
        assert_eq!(b.commutator_subgroup().unwrap().abelianization().unwrap(), a);
        assert!(matches!(heisenberg(5, 2), Err(GroupError::OrderCapExceeded { .. })));
        assert!(matches!(heisenberg_product(&AbelianType::from_cyclic_orders(&[6])), Err(GroupError::NotPGroup(_))));
    }

    #[test]
    fn inverting_action_gives_s3() {
        let h = PermGroup::cyclic(3);
        let g = PermGroup::cyclic(2);
        let inv = h.generators()[0].inverse();
        let sd = semidirect(&h, &g, &[vec![inv]]).unwrap();
        assert_eq!(sd.group.order().unwrap(), 6);
        assert!(sd.group.is_isomorphic(&PermGroup::symmetric(3)).unwrap());
        assert!(sd.kernel().unwrap().is_normal_in(&sd.group).unwrap());
        // trivial action gives the direct product
        let dp = semidirect(&h, &g, &[vec![h.generators()[0].clone()]]).unwrap();
        assert!(dp.group.is_isomorphic(&PermGroup::cyclic(6)).unwrap());
    }

    #[test]
    fn bad_action_is_rejected() {
        let h = PermGroup::cyclic(3);
        let g = PermGroup::cyclic(2);
        // sending the generator to the identity is not an automorphism
        let e = Perm::identity(3);
        assert_eq!(semidirect(&h, &g, &[vec![e]]).unwrap_err(), GroupError::ActionNotHomomorphic);
        // an order-3 automorphism cannot come from Z/2
        let c = PermGroup::cyclic(2);
        let v4 = PermGroup::parse("deg=4; gens=(0 1)(2 3),(0 2)(1 3)").unwrap();
        let a = v4.generators()[1].clone();
        let b = v4.generators()[0].compose(&v4.generators()[1]);
        assert_eq!(semidirect(&v4, &c, &[vec![a, b]]).unwrap_err(), GroupError::ActionNotHomomorphic);
    }

    #[test]
    fn pair_roundtrip() {
        let s3 = PermGroup::symmetric(3);
        let a3 = PermGroup::alternating(3);
        let c2 = s3.subgroup(vec![Perm::parse(3, "(0 1)").unwrap()]).unwrap();
        let sd = semidirect_by_conjugation(&a3, &c2).unwrap();
        for hi in 0..3 {
            for gi in 0..2 {
                assert_eq!(sd.pair_of(&sd.element(hi, gi).unwrap()).unwrap(), (hi, gi));
            }
        }
    }
}
