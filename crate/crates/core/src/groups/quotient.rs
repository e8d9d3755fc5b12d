use super::group::PermGroup;
use super::perm::Perm;
use super::GroupError;

/// `G/N` as a coset table. Coset ids follow first appearance in `G`'s
/// element order, so the identity coset is 0.
#[derive(Clone, Debug)]
pub struct QuotientGroup {
    parent: PermGroup,
    normal: Vec<u32>,
    coset_of: Vec<u32>,
    reps: Vec<u32>,
    table: Vec<u32>,
    regular: PermGroup,
}

impl QuotientGroup {
    pub fn new(g: &PermGroup, n: &PermGroup) -> Result<QuotientGroup, GroupError> {
        let normal = g.indices_of(n)?;
        if !n.is_normal_in(g)? {
            return Err(GroupError::NotNormal);
        }
        QuotientGroup::from_indices(g, &normal)
    }

    /// `normal` are sorted element indices of a normal subgroup of `g`.
    pub(crate) fn from_indices(g: &PermGroup, normal: &[u32]) -> Result<QuotientGroup, GroupError> {
        let order = g.order()?;
        let mut coset_of = vec![u32::MAX; order];
        let mut reps = Vec::new();
        for x in 0..order as u32 {
            if coset_of[x as usize] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            reps.push(x);
            for &m in normal {
                coset_of[g.mul_idx(x, m)? as usize] = id;
            }
        }
        let k = reps.len();
        let mut table = vec![0u32; k * k];
        for a in 0..k {
            for b in 0..k {
                table[a * k + b] = coset_of[g.mul_idx(reps[a], reps[b])? as usize];
            }
        }
        // left-regular permutations of the cosets
        let gens: Vec<Perm> = g
            .generator_indices()?
            .iter()
            .map(|&s| {
                let c = coset_of[s as usize] as usize;
                Perm::from_images((0..k).map(|b| table[c * k + b]).collect())
            })
            .collect::<Result<_, _>>()?;
        let regular = PermGroup::new(k, gens)?.with_cap(g.cap().max(k));
        Ok(QuotientGroup { parent: g.clone(), normal: normal.to_vec(), coset_of, reps, table, regular })
    }

    pub fn order(&self) -> usize {
        self.reps.len()
    }

    pub fn parent(&self) -> &PermGroup {
        &self.parent
    }

    pub fn normal_indices(&self) -> &[u32] {
        &self.normal
    }

    /// Coset of the parent element with index `i`.
    pub fn coset_of_idx(&self, i: u32) -> u32 {
        self.coset_of[i as usize]
    }

    pub fn project(&self, g: &Perm) -> Result<u32, GroupError> {
        let i = self.parent.index_of(g)?.ok_or(GroupError::NotSubgroup)?;
        Ok(self.coset_of[i as usize])
    }

    pub fn rep(&self, c: u32) -> u32 {
        self.reps[c as usize]
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.table[a as usize * self.order() + b as usize]
    }

    /// Left multiplication by coset `c` as a permutation of coset ids.
    pub fn coset_perm(&self, c: u32) -> Perm {
        let k = self.order();
        Perm::from_images((0..k).map(|b| self.table[c as usize * k + b]).collect()).expect("group table rows are bijections")
    }

    /// The quotient as a permutation group (left-regular on cosets).
    pub fn as_perm_group(&self) -> &PermGroup {
        &self.regular
    }

    /// Image in `as_perm_group()` of a parent element.
    pub fn project_perm(&self, g: &Perm) -> Result<Perm, GroupError> {
        Ok(self.coset_perm(self.project(g)?))
    }

    /// Coset id of an element of `as_perm_group()`.
    pub fn coset_of_perm(&self, q: &Perm) -> u32 {
        q.apply(0)
    }

    /// Order of coset `c`.
    pub fn element_order(&self, c: u32) -> u64 {
        let mut x = c;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, c);
            k += 1;
        }
        k
    }
}
