use charp_core::curves::{
    choose_family_n, family_bound, family_formula, family_profile, genus_needed_for, tame_hurwitz_genus, CurveError,
    RamificationProfile,
};
use charp_core::groups::corpus::small_groups;
use charp_core::groups::{Perm, PermGroup};
use charp_core::patchsim::{induce, is_isomorphic_gsets, GSet};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

/// `(Gamma, G, K)` with `K <= G <= Gamma`, a sample from the small corpus.
fn chains(max_order: usize) -> Vec<(String, PermGroup, PermGroup, PermGroup)> {
    let mut out = Vec::new();
    for (name, gamma) in small_groups(max_order).unwrap() {
        let subs = gamma.subgroups().unwrap();
        for g in subs.iter().step_by(2) {
            for k in g.subgroups().unwrap().iter().step_by(3) {
                out.push((name.to_string(), gamma.clone(), g.clone(), k.clone()));
            }
        }
    }
    out
}

#[test]
fn induction_size_transitivity_and_identity() {
    for (name, gamma, g, k) in chains(24) {
        let x = GSet::cosets(&g, &k).unwrap();
        let w = induce(&gamma, &g, &x).unwrap();
        let index = gamma.order().unwrap() / g.order().unwrap();
        assert_eq!(w.size(), index * x.size(), "{name}");
        assert!(w.is_transitive(), "{name}");
        // Ind_G^Gamma (G/K) = Gamma/K
        let gk = GSet::cosets(&gamma, &gamma.subgroup(k.generators().to_vec()).unwrap()).unwrap();
        assert!(is_isomorphic_gsets(&w, &gk).unwrap(), "{name}");
        let same = induce(&g, &g, &x).unwrap();
        assert!(is_isomorphic_gsets(&same, &x).unwrap(), "{name}");
    }
}

#[test]
fn induction_commutes_with_disjoint_union_and_stages() {
    for (name, gamma, g, k) in chains(16) {
        let x = GSet::cosets(&g, &k).unwrap();
        let y = GSet::trivial(&g, 2).unwrap().disjoint_union(&GSet::regular(&g).unwrap()).unwrap();
        let lhs = induce(&gamma, &g, &x.disjoint_union(&y).unwrap()).unwrap();
        let rhs = induce(&gamma, &g, &x).unwrap().disjoint_union(&induce(&gamma, &g, &y).unwrap()).unwrap();
        assert!(is_isomorphic_gsets(&lhs, &rhs).unwrap(), "{name}");
        // Ind_K^Gamma = Ind_G^Gamma Ind_K^G
        let z = GSet::regular(&k).unwrap();
        let staged = induce(&gamma, &g, &induce(&g, &k, &z).unwrap()).unwrap();
        let direct = induce(&gamma, &k, &z).unwrap();
        assert!(is_isomorphic_gsets(&staged, &direct).unwrap(), "{name}");
        assert!(is_isomorphic_gsets(&direct, &GSet::regular(&gamma).unwrap()).unwrap(), "{name}");
    }
}

#[test]
fn family_bound_is_monotone_and_matches_profile() {
    for p in [2u64, 3, 5, 7] {
        let mut prev: Option<BigRational> = None;
        for n in 1..=4 {
            let r = family_bound(p, n).unwrap();
            assert!(r.profile_bound >= r.bound);
            assert_eq!(r.profile_bound, r.bound, "p={p} n={n}");
            assert_eq!(r.derivative, -1);
            assert!(r.tame);
            assert_eq!(family_profile(p, n).unwrap().different_degree(), p.pow(n) * p.pow(n));
            if let Some(b) = prev {
                assert!(r.bound > b);
            }
            prev = Some(r.bound);
        }
    }
    assert!(matches!(family_bound(4, 1), Err(CurveError::CompositeP(4))));
}

#[test]
fn family_choice_round_trips() {
    for p in [2u64, 3, 5] {
        for t in 0..400u64 {
            let n = choose_family_n(t, p).unwrap();
            let target = BigRational::from_integer(BigInt::from(t));
            assert!(family_formula(p, n).unwrap() >= target);
            if n > 1 {
                assert!(family_formula(p, n - 1).unwrap() < target, "p={p} t={t}");
            }
        }
    }
}

#[test]
fn genus_choice_is_minimal() {
    for (name, h) in small_groups(24).unwrap() {
        let order = h.order().unwrap() as u64;
        for p in [2u64, 3, 5, 7] {
            if order % p == 0 {
                assert!(genus_needed_for(&h, 1, p).is_err());
                continue;
            }
            for l in 1..=2 {
                let c = genus_needed_for(&h, l, p).unwrap();
                assert!(c.genus >= 2 && 2 * c.genus > c.generators as u64, "{name}");
                assert!(c.genus == 2 || 2 * (c.genus - 1) <= c.generators as u64, "{name}");
            }
        }
    }
}

fn perm(n: usize) -> impl Strategy<Value = Perm> {
    Just((0..n as u32).collect::<Vec<_>>()).prop_shuffle().prop_map(|v| Perm::from_images(v).unwrap())
}

proptest! {
    /// Branch cycles `s_1 ... s_r = 1` in `S_N`: Riemann-Hurwitz from the
    /// cycle types is integral, and equals the Euler-characteristic count.
    #[test]
    fn hurwitz_from_branch_cycles(n in 2usize..7, cycles in prop::collection::vec(perm(6), 1..5), base_genus in 0u64..3) {
        let mut sigma: Vec<Perm> = cycles.iter().map(|c| Perm::from_images(restrict(c, n)).unwrap()).collect();
        let prod = sigma.iter().fold(Perm::identity(n), |a, b| a.compose(b));
        sigma.push(prod.inverse());
        let fibers: Vec<Vec<u64>> = sigma.iter().map(|s| s.cycles().iter().map(|c| c.len() as u64).filter(|&e| e > 1).collect()).collect();
        let rp = RamificationProfile { degree: n as u64, base_genus, p: 7, fibers };
        let g = tame_hurwitz_genus(&rp);
        let moved: u64 = sigma.iter().map(|s| n as u64 - s.cycles().len() as u64 - fixed(s)).sum();
        let twice = n as i64 * (2 * base_genus as i64 - 2) + moved as i64 + 2;
        prop_assert_eq!(twice % 2, 0);
        if twice >= 0 {
            prop_assert_eq!(g.unwrap(), BigInt::from(twice / 2));
        } else {
            prop_assert!(g.is_err());
        }
        let all_fixed = RamificationProfile { degree: n as u64, base_genus, p: 7, fibers: vec![] };
        let unramified = n as i64 * (base_genus as i64 - 1) + 1;
        prop_assert_eq!(tame_hurwitz_genus(&all_fixed).ok(), (unramified >= 0).then(|| BigInt::from(unramified)));
    }
}

/// `c` restricted to `0..n` by following cycles until they land inside.
fn restrict(c: &Perm, n: usize) -> Vec<u32> {
    (0..n as u32)
        .map(|x| {
            let mut y = c.apply(x);
            while y as usize >= n {
                y = c.apply(y);
            }
            y
        })
        .collect()
}

/// `cycles()` may or may not list fixed points; count those it omits.
fn fixed(s: &Perm) -> u64 {
    let listed: usize = s.cycles().iter().map(|c| c.len()).sum();
    (s.degree() - listed) as u64
}
