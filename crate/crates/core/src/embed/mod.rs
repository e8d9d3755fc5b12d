//! Finite embedding problems `Gamma -> G` with kernel `H`: split reduction,
//! recursive reduction to minimal normal kernels, and the quotient test
//! for prime-to-`p` parts.

use thiserror::Error;

use crate::groups::{semidirect_by_conjugation, GroupError, Perm, PermGroup, QuotientGroup, Semidirect};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbedError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("the subgroup does not surject onto G")]
    NotSurjectiveOnGp,
    #[error("the kernel is not a minimal normal subgroup")]
    NotMinimalNormal,
    #[error("the given subgroup is not a complement to the kernel")]
    NotASection,
    #[error("kernel classification is not exclusive: {0}")]
    Trichotomy(String),
    #[error("punctures must be at least 1")]
    NoPunctures,
}

/// `alpha: Gamma -> G = Gamma/H`, optionally with a complement to `H`
/// witnessing a splitting.
#[derive(Clone, Debug)]
pub struct EmbeddingProblem {
    gamma: PermGroup,
    kernel: PermGroup,
    quotient: QuotientGroup,
    section: Option<PermGroup>,
}

impl EmbeddingProblem {
    pub fn new(gamma: &PermGroup, kernel: &PermGroup) -> Result<EmbeddingProblem, EmbedError> {
        let quotient = QuotientGroup::new(gamma, kernel)?;
        let kernel = gamma.subgroup_from_indices(quotient.normal_indices())?;
        Ok(EmbeddingProblem { gamma: gamma.clone(), kernel, quotient, section: None })
    }

    /// Attach a complement `C` (so `alpha|_C` is an isomorphism onto `G`).
    pub fn with_section(mut self, c: &PermGroup) -> Result<EmbeddingProblem, EmbedError> {
        if !c.is_subgroup_of(&self.gamma)? || c.order()? != self.g_order() {
            return Err(EmbedError::NotASection);
        }
        let mut seen = vec![false; self.g_order()];
        for x in c.elements()? {
            let q = self.alpha(x)? as usize;
            if seen[q] {
                return Err(EmbedError::NotASection);
            }
            seen[q] = true;
        }
        self.section = Some(c.clone());
        Ok(self)
    }

    pub fn gamma(&self) -> &PermGroup {
        &self.gamma
    }

    pub fn kernel(&self) -> &PermGroup {
        &self.kernel
    }

    pub fn quotient(&self) -> &QuotientGroup {
        &self.quotient
    }

    /// `G` as a permutation group.
    pub fn g(&self) -> &PermGroup {
        self.quotient.as_perm_group()
    }

    pub fn g_order(&self) -> usize {
        self.quotient.order()
    }

    pub fn section(&self) -> Option<&PermGroup> {
        self.section.as_ref()
    }

    pub fn is_split(&self) -> bool {
        self.section.is_some()
    }

    /// `alpha(x)` as a coset id.
    pub fn alpha(&self, x: &Perm) -> Result<u32, EmbedError> {
        Ok(self.quotient.project(x)?)
    }

    /// Whether `alpha` maps `gp` onto `G`.
    pub fn surjects(&self, gp: &PermGroup) -> Result<bool, EmbedError> {
        let mut seen = vec![false; self.g_order()];
        for x in gp.elements()? {
            seen[self.alpha(x)? as usize] = true;
        }
        Ok(seen.iter().all(|&b| b))
    }
}

/// Split problem `H x| G' -> G'` with the comparison map
/// `beta(h, g) = hg` back to `Gamma`.
#[derive(Clone, Debug)]
pub struct Splitified {
    pub problem: EmbeddingProblem,
    pub semidirect: Semidirect,
    gamma: PermGroup,
}

impl Splitified {
    pub fn beta(&self, x: &Perm) -> Result<Perm, EmbedError> {
        let (hi, gi) = self.semidirect.pair_of(x)?;
        let h = self.semidirect.h.element(hi)?;
        let g = self.semidirect.g.element(gi)?;
        Ok(h.compose(g))
    }

    /// Image of `beta` as sorted indices into `Gamma`.
    pub fn beta_image(&self) -> Result<Vec<u32>, EmbedError> {
        let mut out = Vec::new();
        for x in self.problem.gamma().elements()? {
            out.push(self.gamma.index_of(&self.beta(x)?)?.ok_or(GroupError::NotSubgroup)?);
        }
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }
}

/// Replace `ep` by the split problem `H x| G' -> G'` (conjugation action)
/// together with `beta: H x| G' -> Gamma`.
pub fn splitify(ep: &EmbeddingProblem, gp: &PermGroup) -> Result<Splitified, EmbedError> {
    if !gp.is_subgroup_of(ep.gamma())? {
        return Err(GroupError::NotSubgroup.into());
    }
    if !ep.surjects(gp)? {
        return Err(EmbedError::NotSurjectiveOnGp);
    }
    let sd = semidirect_by_conjugation(ep.kernel(), gp)?;
    let problem = EmbeddingProblem::new(&sd.group, &sd.kernel()?)?.with_section(&sd.complement()?)?;
    Ok(Splitified { problem, semidirect: sd, gamma: ep.gamma().clone() })
}

/// Leaf types for a minimal normal kernel.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Case {
    /// perfect and quasi-`p`
    Case1,
    /// elementary abelian `p`-group
    Case2,
    /// order prime to `p`
    Case3,
}

impl Case {
    pub fn as_str(self) -> &'static str {
        match self {
            Case::Case1 => "Case1",
            Case::Case2 => "Case2",
            Case::Case3 => "Case3",
        }
    }
}

/// Which of the three leaf conditions hold for `h`.
pub fn case_flags(h: &PermGroup, p: u64) -> Result<[bool; 3], EmbedError> {
    let n = h.order()? as u64;
    let c1 = h.is_perfect()? && h.is_quasi_p(p)?;
    let c2 = n > 1 && h.is_abelian() && h.elements()?.iter().all(|g| g.order() == 1 || g.order() == p);
    let c3 = n % p != 0;
    Ok([c1, c2, c3])
}

pub fn classify_kernel(gamma: &PermGroup, h: &PermGroup, p: u64) -> Result<Case, EmbedError> {
    if !gamma.is_minimal_normal(h)? {
        return Err(EmbedError::NotMinimalNormal);
    }
    let flags = case_flags(h, p)?;
    let cases = [Case::Case1, Case::Case2, Case::Case3];
    let hits: Vec<Case> = cases.iter().zip(flags).filter(|(_, f)| *f).map(|(c, _)| *c).collect();
    // a minimal normal subgroup is S^m with S simple, so exactly one holds
    match hits[..] {
        [c] => Ok(c),
        _ => Err(EmbedError::Trichotomy(format!("{h:?} at p = {p} matches {hits:?}"))),
    }
}

/// Node of the reduction along a chain of `Gamma`-normal subgroups of `H`.
#[derive(Clone, Debug)]
pub enum ReductionTree {
    /// Kernel is trivial; nothing to solve.
    Trivial { gamma_order: usize },
    Leaf { gamma_order: usize, kernel_order: usize, case: Case },
    /// `H_1` splits the problem into `Gamma/H_1 -> G` (kernel `H/H_1`)
    /// and `Gamma -> Gamma/H_1` (kernel `H_1`).
    Node { gamma_order: usize, kernel_order: usize, h1_order: usize, upper: Box<ReductionTree>, lower: Box<ReductionTree> },
}

impl ReductionTree {
    pub fn kernel_order(&self) -> usize {
        match self {
            ReductionTree::Trivial { .. } => 1,
            ReductionTree::Leaf { kernel_order, .. } | ReductionTree::Node { kernel_order, .. } => *kernel_order,
        }
    }

    /// Leaves from left (top quotient) to right.
    pub fn leaves(&self) -> Vec<(usize, Case)> {
        match self {
            ReductionTree::Trivial { .. } => vec![],
            ReductionTree::Leaf { kernel_order, case, .. } => vec![(*kernel_order, *case)],
            ReductionTree::Node { upper, lower, .. } => {
                let mut v = upper.leaves();
                v.extend(lower.leaves());
                v
            }
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            ReductionTree::Node { upper, lower, .. } => 1 + upper.depth().max(lower.depth()),
            _ => 0,
        }
    }
}

/// Smallest proper nontrivial `Gamma`-normal subgroup of `H`, ties broken
/// by the lexicographically least sorted element list.
pub fn choose_h1(gamma: &PermGroup, h: &PermGroup) -> Result<Option<PermGroup>, EmbedError> {
    let hidx = gamma.indices_of(h)?;
    let mut best: Option<(usize, Vec<Perm>, Vec<u32>)> = None;
    for n in gamma.normal_subgroup_indices()? {
        if n.len() == 1 || n.len() >= hidx.len() || hidx.len() % n.len() != 0 {
            continue;
        }
        if !n.iter().all(|x| hidx.binary_search(x).is_ok()) {
            continue;
        }
        if best.as_ref().is_some_and(|b| b.0 < n.len()) {
            continue;
        }
        let mut elems: Vec<Perm> = n.iter().map(|&i| gamma.element(i).cloned()).collect::<Result<_, _>>()?;
        elems.sort();
        if best.as_ref().is_none_or(|b| n.len() < b.0 || elems < b.1) {
            best = Some((n.len(), elems, n));
        }
    }
    best.map(|(_, _, idx)| gamma.subgroup_from_indices(&idx)).transpose().map_err(Into::into)
}

pub fn reduction_tree(ep: &EmbeddingProblem, p: u64) -> Result<ReductionTree, EmbedError> {
    reduce_node(ep.gamma(), ep.kernel(), p)
}

fn reduce_node(gamma: &PermGroup, h: &PermGroup, p: u64) -> Result<ReductionTree, EmbedError> {
    let gamma_order = gamma.order()?;
    let kernel_order = h.order()?;
    if kernel_order == 1 {
        return Ok(ReductionTree::Trivial { gamma_order });
    }
    let Some(h1) = choose_h1(gamma, h)? else {
        let case = classify_kernel(gamma, h, p)?;
        return Ok(ReductionTree::Leaf { gamma_order, kernel_order, case });
    };
    let q = QuotientGroup::new(gamma, &h1)?;
    let qg = q.as_perm_group();
    let h_img: Vec<Perm> = h.generators().iter().map(|x| q.project_perm(x)).collect::<Result<_, _>>()?;
    let h_bar = qg.subgroup(h_img)?;
    let upper = reduce_node(qg, &h_bar, p)?;
    let lower = reduce_node(gamma, &h1, p)?;
    Ok(ReductionTree::Node {
        gamma_order,
        kernel_order,
        h1_order: h1.order()?,
        upper: Box::new(upper),
        lower: Box::new(lower),
    })
}

/// Outcome of testing `d(G/p(G)) <= 2g + r - 1`.
#[derive(Clone, Debug)]
pub struct AbhyankarReport {
    pub accepted: bool,
    pub bound: usize,
    pub quasi_p_order: usize,
    pub quotient_order: usize,
    /// `d(G/p(G))`
    pub rank: usize,
    /// Coset representatives in `G` whose images generate `G/p(G)`;
    /// present when accepted.
    pub certificate: Option<Vec<Perm>>,
}

pub fn abhyankar_quotient_check(g: &PermGroup, p: u64, genus: usize, punctures: usize) -> Result<AbhyankarReport, EmbedError> {
    if punctures == 0 {
        return Err(EmbedError::NoPunctures);
    }
    let bound = 2 * genus + punctures - 1;
    let pg = g.quasi_p_part(p)?;
    let q = QuotientGroup::new(g, &pg)?;
    let qg = q.as_perm_group();
    let qn = q.order();
    // d(Q) <= log2 |Q|, so this cap never truncates the search
    let cap_k = (usize::BITS - qn.leading_zeros()) as usize;
    let mg = qg.min_generators(cap_k)?;
    let accepted = mg.d <= bound;
    let certificate = accepted
        .then(|| mg.generators.iter().map(|x| g.element(q.rep(q.coset_of_perm(x))).cloned()).collect::<Result<Vec<_>, _>>())
        .transpose()?;
    Ok(AbhyankarReport { accepted, bound, quasi_p_order: pg.order()?, quotient_order: qn, rank: mg.d, certificate })
}
