use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::prime::factorize;

/// Finite abelian group as invariant factors `d_1 | d_2 | ...`, all `> 1`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct AbelianType {
    factors: Vec<u64>,
}

impl AbelianType {
    pub fn trivial() -> AbelianType {
        AbelianType::default()
    }

    /// Normalize an arbitrary list of cyclic orders (`Z/a x Z/b x ...`).
    pub fn from_cyclic_orders(orders: &[u64]) -> AbelianType {
        let mut primary: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
        for &o in orders {
            for (l, e) in factorize(o) {
                primary.entry(l).or_default().push(e);
            }
        }
        AbelianType::from_primary(&primary)
    }

    /// From exponent lists per prime: `{l: [e_1, e_2, ...]}`.
    pub fn from_primary(primary: &BTreeMap<u64, Vec<u32>>) -> AbelianType {
        let len = primary.values().map(|v| v.len()).max().unwrap_or(0);
        let mut factors = vec![1u64; len];
        for (&l, es) in primary {
            let mut es = es.clone();
            es.sort_unstable_by(|a, b| b.cmp(a));
            // largest exponents go to the last factors
            for (k, &e) in es.iter().enumerate() {
                factors[len - 1 - k] *= l.pow(e);
            }
        }
        factors.retain(|&d| d > 1);
        AbelianType { factors }
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    /// Number of cyclic factors in the invariant-factor form.
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    /// `Some(p)` if the group is a nontrivial `p`-group.
    pub fn prime(&self) -> Option<u64> {
        let fs = factorize(self.order());
        (fs.len() == 1).then(|| fs[0].0)
    }

    /// Exponents `m_i` with factors `p^{m_i}`, ascending, when a `p`-group.
    pub fn p_exponents(&self, p: u64) -> Option<Vec<u32>> {
        self.factors
            .iter()
            .map(|&d| {
                let fs = factorize(d);
                (fs.len() == 1 && fs[0].0 == p).then(|| fs[0].1)
            })
            .collect()
    }
}

impl fmt::Display for AbelianType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.factors.iter().map(|d| format!("Z/{d}")).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

impl fmt::Debug for AbelianType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invariant_factors() {
        assert_eq!(AbelianType::from_cyclic_orders(&[2, 3]).factors(), &[6]);
        assert_eq!(AbelianType::from_cyclic_orders(&[4, 6]).factors(), &[2, 12]);
        assert_eq!(AbelianType::from_cyclic_orders(&[1, 1]).factors(), &[] as &[u64]);
        let a = AbelianType::from_cyclic_orders(&[9, 3, 3]);
        assert_eq!(a.factors(), &[3, 3, 9]);
        assert_eq!(a.p_exponents(3), Some(vec![1, 1, 2]));
        assert_eq!(a.to_string(), "Z/3 x Z/3 x Z/9");
    }
}
