//! Acceptance criteria 1-10. One line per criterion; exits non-zero if any fails.

use std::collections::{HashMap, HashSet};
use std::process::Command;
use std::time::{Duration, Instant};

use charp_core::algebra::descriptor::parse_ring;
use charp_core::algebra::{CoordinateRing, Fq, FqElem, Mode, RingElem};
use charp_core::asw::{abelianization_report, cokernel_basis, Reducer, Window};
use charp_core::curves::{family_bound, family_profile};
use charp_core::embed::{abhyankar_quotient_check, case_flags, classify_kernel, reduction_tree, EmbeddingProblem};
use charp_core::groups::corpus::small_groups;
use charp_core::groups::{heisenberg_product, AbelianType, PermGroup, QuotientGroup};
use charp_core::patchsim::{induce, is_isomorphic_gsets, patch_components, quotient_action, GSet, PatchDiagram};
use charp_core::witt::{build_structure_cache, structure_cache, structure::x_var, structure::y_var, WittRing, WittVector};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Pow, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn fail<E: std::fmt::Debug>(e: E) -> String {
    format!("{e:?}")
}

// ---------------------------------------------------------------- witt

fn fp_vectors(f: &Fq, n: usize) -> Vec<Vec<FqElem>> {
    let mut out: Vec<Vec<FqElem>> = vec![vec![]];
    for _ in 0..n {
        out = out
            .iter()
            .flat_map(|v| {
                f.elements().map(move |a| {
                    let mut w = v.clone();
                    w.push(a);
                    w
                })
            })
            .collect();
    }
    out
}

fn ghost(p: u32, a: &[BigInt]) -> Vec<BigInt> {
    (1..=a.len())
        .map(|k| (1..=k).map(|j| BigInt::from(p).pow(j as u32 - 1) * a[j - 1].clone().pow(p.pow((k - j) as u32))).sum())
        .collect()
}

/// Witt components over `Z` with the given ghost components.
fn unghost(p: u32, g: &[BigInt]) -> Option<Vec<BigInt>> {
    let mut a: Vec<BigInt> = Vec::new();
    for k in 1..=g.len() {
        let mut rest = g[k - 1].clone();
        for j in 1..k {
            rest -= BigInt::from(p).pow(j as u32 - 1) * a[j - 1].clone().pow(p.pow((k - j) as u32));
        }
        let pk = BigInt::from(p).pow(k as u32 - 1);
        let (q, r) = rest.div_rem(&pk);
        if !r.is_zero() {
            return None;
        }
        a.push(q);
    }
    Some(a)
}

fn lift(f: &Fq, v: &WittVector<FqElem>) -> Vec<BigInt> {
    v.components().iter().map(|c| BigInt::from(f.coeffs(*c)[0])).collect()
}

fn reduce_mod(p: u32, a: &[BigInt]) -> Vec<u32> {
    a.iter().map(|x| x.mod_floor(&BigInt::from(p)).to_u32().unwrap()).collect()
}

fn criterion1() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut pairs = 0usize;
    for p in [2u32, 3, 5] {
        let f = Fq::prime(p as u64).map_err(fail)?;
        for n in 1..=3usize {
            let w = WittRing::new(f.clone(), n).map_err(fail)?;
            let pn = (p as u64).pow(n as u32);
            // k -> k * 1 is a bijection Z/p^n -> W_n(F_p) respecting + and *
            let mut of: HashMap<Vec<u32>, u64> = HashMap::new();
            let mut multiples = Vec::new();
            for k in 0..pn {
                let v = w.scalar_mul(k, &w.one()).map_err(fail)?;
                let key: Vec<u32> = v.components().iter().map(|c| c.index()).collect();
                ensure!(of.insert(key, k).is_none(), "W_{n}(F_{p}): {k} * 1 repeats");
                multiples.push(v);
            }
            ensure!(of.len() as u64 == pn && fp_vectors(&f, n).len() as u64 == pn, "W_{n}(F_{p}) has wrong size");
            for a in 0..pn {
                for b in 0..pn {
                    let (u, v) = (&multiples[a as usize], &multiples[b as usize]);
                    let s = w.add(u, v).map_err(fail)?;
                    let m = w.mul(u, v).map_err(fail)?;
                    ensure!(s == multiples[((a + b) % pn) as usize], "W_{n}(F_{p}): {a} + {b}");
                    ensure!(m == multiples[((a * b) % pn) as usize], "W_{n}(F_{p}): {a} * {b}");
                }
            }
            // ghost oracle on random vectors
            for _ in 0..1000 {
                let rv = |rng: &mut ChaCha8Rng| {
                    w.from_components((0..n).map(|_| f.from_index(rng.gen_range(0..p)).unwrap()).collect()).unwrap()
                };
                let (u, v) = (rv(&mut rng), rv(&mut rng));
                let (gu, gv) = (ghost(p, &lift(&f, &u)), ghost(p, &lift(&f, &v)));
                let gs: Vec<BigInt> = gu.iter().zip(&gv).map(|(a, b)| a + b).collect();
                let gm: Vec<BigInt> = gu.iter().zip(&gv).map(|(a, b)| a * b).collect();
                let s = unghost(p, &gs).ok_or("ghost sum not integral")?;
                let m = unghost(p, &gm).ok_or("ghost product not integral")?;
                let idx = |x: &WittVector<FqElem>| x.components().iter().map(|c| c.index()).collect::<Vec<_>>();
                ensure!(idx(&w.add(&u, &v).map_err(fail)?) == reduce_mod(p, &s), "ghost sum mismatch p={p} n={n}");
                ensure!(idx(&w.mul(&u, &v).map_err(fail)?) == reduce_mod(p, &m), "ghost product mismatch p={p} n={n}");
                pairs += 1;
            }
            // structure polynomials are integral and satisfy the ghost identity over Z
            let cache = build_structure_cache(p as u64, n).map_err(|e| format!("integrality violated: {e}"))?;
            let shared = structure_cache(p as u64, n).map_err(fail)?;
            ensure!(shared.size() == cache.size(), "cached and fresh structure polynomials differ");
            for _ in 0..50 {
                let xs: Vec<BigInt> = (0..n).map(|_| BigInt::from(rng.gen_range(-6i64..=6))).collect();
                let ys: Vec<BigInt> = (0..n).map(|_| BigInt::from(rng.gen_range(-6i64..=6))).collect();
                let mut vals = vec![BigInt::zero(); 2 * n];
                for i in 1..=n {
                    vals[x_var(i)] = xs[i - 1].clone();
                    vals[y_var(i)] = ys[i - 1].clone();
                }
                let (gx, gy) = (ghost(p, &xs), ghost(p, &ys));
                let s = unghost(p, &gx.iter().zip(&gy).map(|(a, b)| a + b).collect::<Vec<_>>()).ok_or("sum not integral")?;
                let m = unghost(p, &gx.iter().zip(&gy).map(|(a, b)| a * b).collect::<Vec<_>>()).ok_or("product not integral")?;
                for k in 1..=n {
                    ensure!(cache.sum_poly(k).eval_int(&vals) == s[k - 1], "S_{k} wrong at p={p}");
                    ensure!(cache.prod_poly(k).eval_int(&vals) == m[k - 1], "M_{k} wrong at p={p}");
                }
            }
        }
    }
    Ok(format!("Z/p^n isomorphism for 9 (p,n); {pairs} ghost-oracle pairs"))
}

// ---------------------------------------------------------------- P, V, reduce

fn criterion2() -> Check {
    let mut checked = 0usize;
    for (p, m) in [(2u64, 1u32), (3, 1), (2, 2), (3, 2)] {
        let f = Fq::new(p, m).map_err(fail)?;
        let w1 = WittRing::new(f.clone(), 1).map_err(fail)?;
        let w2 = WittRing::new(f.clone(), 2).map_err(fail)?;
        let all = fp_vectors(&f, 2);
        let vecs: Vec<_> = all.iter().map(|c| w2.from_components(c.clone()).unwrap()).collect();
        for u in &vecs {
            for v in &vecs {
                let lhs = w2.p_map(&w2.add(u, v).map_err(fail)?).map_err(fail)?;
                let rhs = w2.add(&w2.p_map(u).map_err(fail)?, &w2.p_map(v).map_err(fail)?).map_err(fail)?;
                ensure!(lhs == rhs, "P not additive on W_2(F_{})", f.q());
                checked += 1;
            }
        }
        for a in f.elements() {
            let x = w1.from_components(vec![a]).map_err(fail)?;
            let pv = w2.p_map(&w1.verschiebung(&x)).map_err(fail)?;
            let vp = w1.verschiebung(&w1.p_map(&x).map_err(fail)?);
            ensure!(pv == vp, "P V != V P on F_{}", f.q());
        }
    }
    let configs: [(&str, usize, usize); 5] = [
        ("F(2,1)[x]", 2, 4),
        ("F(3,1)[x,1/x]", 2, 3),
        ("F(2,2)[x,1/(x*(x-1))]", 2, 2),
        ("F(5,1)[x,1/(x*(x-1))]", 1, 10),
        ("F(2,1)[x]", 3, 2),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for (desc, n, d) in configs {
        let ring = parse_ring(desc, Mode::Geometric).map_err(fail)?;
        let red = Reducer::new(&ring, n, Window::new(d)).map_err(fail)?;
        let w = red.witt();
        let dv = d / ring.p() as usize;
        for _ in 0..1000 {
            let a = w.from_components((0..n).map(|_| random_window_elem(&ring, d, &mut rng)).collect()).map_err(fail)?;
            let v = w.from_components((0..n).map(|_| random_window_elem(&ring, dv, &mut rng)).collect()).map_err(fail)?;
            let shifted = w.add(&a, &w.p_map(&v).map_err(fail)?).map_err(fail)?;
            let ra = red.reduce(&a).map_err(fail)?;
            ensure!(red.reduce(&shifted).map_err(fail)? == ra, "reduce(w + P(v)) != reduce(w) over {desc}, n={n}");
            ensure!(red.reduce(&ra).map_err(fail)? == ra, "reduce not idempotent over {desc}");
            checked += 1;
        }
    }
    Ok(format!("{checked} exact checks"))
}

fn random_window_elem(ring: &CoordinateRing, d: usize, rng: &mut ChaCha8Rng) -> RingElem {
    let f = ring.fq();
    let mut c = || f.from_index(rng.gen_range(0..f.q())).unwrap();
    let mut e = ring.constant(c());
    for j in 1..=d {
        e = ring.add(&e, &ring.monomial(c(), j));
        for i in 0..ring.s() {
            e = ring.add(&e, &ring.pole_monomial(c(), i, j as u32));
        }
    }
    e
}

// ---------------------------------------------------------------- cokernel oracles

/// Rank over `F_p` of integer vectors, by elimination.
fn rank_mod_p(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][c] % p != 0) else { continue };
        rows.swap(rank, piv);
        let inv = (1..p).find(|&t| rows[rank][c] * t % p == 1).unwrap();
        let pivot: Vec<u64> = rows[rank].iter().map(|x| x * inv % p).collect();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[c] % p != 0 {
                let k = row[c];
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x = (*x + p * p - k * y % p) % p;
                }
            }
        }
        rows[rank] = pivot;
        rank += 1;
    }
    rank
}

/// `dim span{x..x^d} / span{x^{pj} - x^j : pj <= d}`.
fn level1_oracle(p: u64, d: usize) -> usize {
    let mut rows = Vec::new();
    for j in 1..=d / p as usize {
        let mut r = vec![0u64; d];
        r[p as usize * j - 1] = 1;
        r[j - 1] = p - 1;
        rows.push(r);
    }
    d - rank_mod_p(rows, p)
}

/// Length-two Witt vectors over `F_p[x]`, coefficients low to high.
mod w2 {
    pub type P = Vec<u64>;
    pub type W = (P, P);

    fn trim(mut a: P) -> P {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }
    pub fn add(a: &P, b: &P, p: u64) -> P {
        let n = a.len().max(b.len());
        trim((0..n).map(|i| (a.get(i).unwrap_or(&0) + b.get(i).unwrap_or(&0)) % p).collect())
    }
    pub fn scale(a: &P, c: u64, p: u64) -> P {
        trim(a.iter().map(|x| x * c % p).collect())
    }
    pub fn mul(a: &P, b: &P, p: u64) -> P {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut r = vec![0; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                r[i + j] = (r[i + j] + x * y) % p;
            }
        }
        trim(r)
    }
    pub fn pow(a: &P, e: u64, p: u64) -> P {
        (0..e).fold(vec![1], |acc, _| mul(&acc, a, p))
    }
    fn binom(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }
    pub fn wadd(u: &W, v: &W, p: u64) -> W {
        // S_2 = a2 + b2 - sum_{0<i<p} (C(p,i)/p) a1^i b1^{p-i}
        let mut second = add(&u.1, &v.1, p);
        for i in 1..p {
            let c = binom(p, i) / p % p;
            let t = mul(&pow(&u.0, i, p), &pow(&v.0, p - i, p), p);
            second = add(&second, &scale(&t, p - c, p), p);
        }
        (add(&u.0, &v.0, p), second)
    }
    pub fn wneg(u: &W, p: u64) -> W {
        if p == 2 {
            (u.0.clone(), add(&u.1, &mul(&u.0, &u.0, p), p))
        } else {
            (scale(&u.0, p - 1, p), scale(&u.1, p - 1, p))
        }
    }
    pub fn wsub(u: &W, v: &W, p: u64) -> W {
        wadd(u, &wneg(v, p), p)
    }
    pub fn pmap(u: &W, p: u64) -> W {
        wsub(&(pow(&u.0, p, p), pow(&u.1, p, p)), u, p)
    }
    fn mono(c: u64, j: usize) -> P {
        let mut m = vec![0; j + 1];
        m[j] = c;
        m
    }
    fn offending(a: &P, p: u64) -> Option<(usize, u64)> {
        (0..a.len()).rev().find(|&m| a[m] != 0 && m % p as usize == 0).map(|m| (m, a[m]))
    }
    /// Canonical representative modulo `P(W_2(F_p[x]))` and constants.
    pub fn reduce(mut u: W, p: u64) -> W {
        while let Some((m, c)) = offending(&u.0, p) {
            let t: W = if m == 0 { (vec![c], vec![]) } else { pmap(&(mono(c, m / p as usize), vec![]), p) };
            u = wsub(&u, &t, p);
        }
        while let Some((m, c)) = offending(&u.1, p) {
            let t: W = if m == 0 { (vec![], vec![c]) } else { pmap(&(vec![], mono(c, m / p as usize)), p) };
            u = wsub(&u, &t, p);
        }
        u
    }
    pub fn gen1(c: u64, j: usize) -> W {
        (mono(c, j), vec![])
    }
    pub fn gen2(c: u64, j: usize) -> W {
        (vec![], mono(c, j))
    }
}

/// `log_p |p^k T|` for `k = 0, 1, 2` by closing the generators under addition.
fn level2_oracle(p: u64, d: usize) -> Vec<usize> {
    let mut gens = Vec::new();
    for c in 1..p {
        for j in 1..=d {
            gens.push(w2::reduce(w2::gen1(c, j), p));
            gens.push(w2::reduce(w2::gen2(c, j), p));
        }
    }
    let zero: w2::W = (vec![], vec![]);
    let mut seen: HashSet<w2::W> = HashSet::from([zero.clone()]);
    let mut frontier = vec![zero];
    while let Some(e) = frontier.pop() {
        for g in &gens {
            let s = w2::reduce(w2::wadd(&e, g, p), p);
            if seen.insert(s.clone()) {
                frontier.push(s);
            }
        }
    }
    let times_p = |set: &HashSet<w2::W>| -> HashSet<w2::W> {
        set.iter()
            .map(|e| {
                let mut acc: w2::W = (vec![], vec![]);
                for _ in 0..p {
                    acc = w2::wadd(&acc, e, p);
                }
                w2::reduce(acc, p)
            })
            .collect()
    };
    let t1 = times_p(&seen);
    let t2 = times_p(&t1);
    let log = |n: usize| {
        let mut k = 0;
        let mut m = 1;
        while m < n {
            m *= p as usize;
            k += 1;
        }
        assert_eq!(m, n, "group order {n} is not a power of {p}");
        k
    };
    vec![log(seen.len()), log(t1.len()), log(t2.len())]
}

fn criterion3() -> Check {
    let mut cases = 0;
    for p in [2u64, 3, 5] {
        let ring = parse_ring(&format!("F({p},1)[x]"), Mode::Geometric).map_err(fail)?;
        for d in 1..=12usize {
            let s = cokernel_basis(&ring, 1, Window::new(d)).map_err(fail)?;
            let expect = d - d / p as usize;
            ensure!(s.rank() == expect, "p={p} d={d}: rank {} != {expect}", s.rank());
            ensure!(level1_oracle(p, d) == expect, "p={p} d={d}: linear-algebra oracle disagrees");
            ensure!(s.invariant_factors.iter().all(|&o| o == p), "p={p} d={d}: non-elementary factor");
            let gens: Vec<String> = s.format_generators(&ring);
            let want: Vec<String> = (1..=d).filter(|j| j % p as usize != 0).map(|j| if j == 1 { "x".into() } else { format!("x^{j}") }).collect();
            ensure!(gens == want, "p={p} d={d}: generators {gens:?}");
            cases += 1;
        }
    }
    for p in [2u64, 3] {
        let ring = parse_ring(&format!("F({p},1)[x]"), Mode::Geometric).map_err(fail)?;
        for d in 1..=4usize {
            let s = cokernel_basis(&ring, 2, Window::new(d)).map_err(fail)?;
            let oracle = level2_oracle(p, d);
            ensure!(s.ranks() == oracle, "p={p} n=2 d={d}: ranks {:?} vs oracle {oracle:?}", s.ranks());
            ensure!(s.generator_orders == s.invariant_factors, "p={p} n=2 d={d}: generator orders disagree");
            for g in &s.generators {
                let comp = |e: &RingElem| -> Vec<u64> { e.num().coeffs().iter().map(|c| c.index() as u64).collect() };
                let u: w2::W = (comp(&g.components()[0]), comp(&g.components()[1]));
                ensure!(w2::reduce(u.clone(), p) == u, "p={p} d={d}: generator not in canonical form");
            }
            cases += 1;
        }
    }
    Ok(format!("{cases} (p, n, d) cases match the oracles"))
}

// ---------------------------------------------------------------- tame rank

fn criterion4() -> Check {
    let rings = ["F(5,1)[x]", "F(5,1)[x,1/x]", "F(5,1)[x,1/(x*(x-1))]", "F(5,1)[x,1/(x*(x-1)*(x-2))]"];
    for (r0, desc) in rings.iter().enumerate() {
        let ring = parse_ring(desc, Mode::Geometric).map_err(fail)?;
        let r = r0 as u64 + 1;
        for g in 0..=3u64 {
            let rep = abelianization_report(g, &ring, 1, Window::new(1)).map_err(fail)?;
            ensure!(rep.punctures == r, "{desc}: {} punctures", rep.punctures);
            ensure!(rep.prime_to_p_rank == 2 * g + r - 1, "g={g} r={r}: rank {}", rep.prime_to_p_rank);
        }
    }
    let line = parse_ring(rings[0], Mode::Geometric).map_err(fail)?;
    ensure!(abelianization_report(0, &line, 1, Window::new(1)).map_err(fail)?.prime_to_p_rank == 0, "affine line rank");
    // rank 0 means only quasi-p groups pass the quotient criterion on the affine line
    for (name, g) in small_groups(24).map_err(fail)? {
        for p in [2u64, 3] {
            let acc = abhyankar_quotient_check(&g, p, 0, 1).map_err(fail)?.accepted;
            ensure!(acc == g.is_quasi_p(p).map_err(fail)?, "{name} at p={p}: criterion vs quasi-p");
        }
    }
    Ok("16 (g, r) pairs; affine line rank 0 agrees with quasi-p test".into())
}

// ---------------------------------------------------------------- heisenberg

fn criterion5() -> Check {
    let types: [&[u64]; 9] = [&[2], &[4], &[8], &[2, 2], &[2, 4], &[2, 2, 2], &[3], &[9], &[3, 3]];
    for orders in types {
        let a = AbelianType::from_cyclic_orders(orders);
        let b = heisenberg_product(&a).map_err(fail)?;
        let expect: usize = orders.iter().map(|&o| (o as usize).pow(3)).product();
        ensure!(expect <= 729, "type {orders:?} outside the range");
        ensure!(b.order().map_err(fail)? == expect, "{orders:?}: |B| = {}", b.order().map_err(fail)?);
        let c = b.commutator_subgroup().map_err(fail)?;
        ensure!(c.is_abelian(), "{orders:?}: [B,B] not abelian");
        ensure!(c.abelianization().map_err(fail)? == a, "{orders:?}: [B,B] has type {}", c.abelianization().map_err(fail)?);
    }
    Ok("all 9 abelian p-types with |B| <= 3^6".into())
}

// ---------------------------------------------------------------- trichotomy

fn criterion6() -> Check {
    let (mut minimal, mut trees) = (0, 0);
    for (name, g) in small_groups(200).map_err(fail)? {
        let normals = g.normal_subgroups().map_err(fail)?;
        for p in [2u64, 3, 5, 7] {
            for m in g.minimal_normal_subgroups().map_err(fail)? {
                let flags = case_flags(&m.group, p).map_err(fail)?;
                ensure!(flags.iter().filter(|&&f| f).count() == 1, "{name} p={p}: flags {flags:?}");
                classify_kernel(&g, &m.group, p).map_err(fail)?;
                minimal += 1;
            }
            for h in &normals {
                let ep = EmbeddingProblem::new(&g, h).map_err(fail)?;
                let t = reduction_tree(&ep, p).map_err(|e| format!("{name} p={p}: {e:?}"))?;
                let prod: usize = t.leaves().iter().map(|(o, _)| o).product();
                let order = h.order().map_err(fail)?;
                ensure!(prod == order, "{name} p={p}: leaves multiply to {prod}, |H| = {order}");
                ensure!(1usize << t.depth() <= order.max(1), "{name} p={p}: depth {} too large", t.depth());
                trees += 1;
            }
        }
    }
    Ok(format!("{minimal} minimal normal subgroups classified, {trees} reduction trees"))
}

// ---------------------------------------------------------------- quotient criterion

fn criterion7() -> Check {
    let a5 = PermGroup::alternating(5);
    for p in [2u64, 3, 5] {
        let r = abhyankar_quotient_check(&a5, p, 0, 1).map_err(fail)?;
        ensure!(r.accepted && r.quotient_order == 1, "A5 at p={p} should be quasi-p");
    }
    for r in [1usize, 2] {
        ensure!(!abhyankar_quotient_check(&a5, 7, 0, r).map_err(fail)?.accepted, "A5 at p=7, r={r} accepted");
    }
    let rep = abhyankar_quotient_check(&a5, 7, 0, 3).map_err(fail)?;
    ensure!(rep.accepted, "A5 at p=7, r=3 rejected");
    let cert = rep.certificate.ok_or("no certificate")?;
    ensure!(cert.len() == 2, "certificate has {} elements", cert.len());
    ensure!(a5.subgroup(cert.clone()).map_err(fail)?.order().map_err(fail)? == 60, "certificate does not generate A5");
    Ok(format!("certificate {} , {}", cert[0], cert[1]))
}

// ---------------------------------------------------------------- finite patching

/// `X` (a `G`-set) transported to `Gamma/H` along `G -> Gamma/H`.
fn transport(x: &GSet, g: &PermGroup, q: &QuotientGroup) -> Result<GSet, String> {
    let qg = q.as_perm_group();
    let action = qg
        .generators()
        .iter()
        .map(|c| {
            let coset = q.coset_of_perm(c);
            let lift = g.elements().map_err(fail)?.iter().find(|e| q.project(e).ok() == Some(coset)).cloned().ok_or("G misses a coset")?;
            let img: Vec<u32> = (0..x.size() as u32).map(|pt| x.act(&lift, pt).unwrap()).collect();
            charp_core::groups::Perm::from_images(img).map_err(fail)
        })
        .collect::<Result<Vec<_>, String>>()?;
    GSet::new(qg, x.size(), action).map_err(fail)
}

fn criterion8() -> Check {
    let (mut inductions, mut quotients, mut patches) = (0, 0, 0);
    for (name, gamma) in small_groups(100).map_err(fail)? {
        let reg = GSet::regular(&gamma).map_err(fail)?;
        for g in gamma.subgroups().map_err(fail)? {
            let w = induce(&gamma, &g, &GSet::regular(&g).map_err(fail)?).map_err(fail)?;
            ensure!(is_isomorphic_gsets(&w, &reg).map_err(fail)?, "{name}: Ind of regular from |G|={} not regular", g.order().map_err(fail)?);
            inductions += 1;
        }
    }
    for (name, gamma) in small_groups(60).map_err(fail)? {
        let n = gamma.order().map_err(fail)?;
        let subs = gamma.subgroups().map_err(fail)?;
        for h in gamma.normal_subgroups().map_err(fail)? {
            let ho = h.order().map_err(fail)?;
            for g in &subs {
                let go = g.order().map_err(fail)?;
                if ho * go != n || ho == 1 || go == 1 {
                    continue;
                }
                let meet = gamma.indices_of(&h).map_err(fail)?.into_iter().filter(|&i| g.contains(gamma.element(i).unwrap()).unwrap()).count();
                if meet != 1 {
                    continue;
                }
                // every transitive G-set G/K, K up to the subgroups of G
                for k in g.subgroups().map_err(fail)? {
                    let x = GSet::cosets(g, &k).map_err(fail)?;
                    let w = induce(&gamma, g, &x).map_err(fail)?;
                    let (qx, q) = quotient_action(&w, &h).map_err(fail)?;
                    let xt = transport(&x, g, &q)?;
                    ensure!(is_isomorphic_gsets(&qx, &xt).map_err(fail)?, "{name}: quotient identity fails for |H|={ho}, |G|={go}");
                    quotients += 1;
                }
            }
        }
    }
    for (name, gamma) in small_groups(200).map_err(fail)? {
        let cyclic: Vec<PermGroup> = {
            let mut seen = HashSet::new();
            let mut out = Vec::new();
            for e in gamma.elements().map_err(fail)? {
                let c = gamma.subgroup(vec![e.clone()]).map_err(fail)?;
                if seen.insert(c.sorted_elements().map_err(fail)?) {
                    out.push(c);
                }
            }
            out
        };
        let step = (cyclic.len() / 12).max(1);
        let sample: Vec<&PermGroup> = cyclic.iter().step_by(step).collect();
        for g in &sample {
            for h in &sample {
                let d = PatchDiagram {
                    gamma: gamma.clone(),
                    g: (*g).clone(),
                    h: (*h).clone(),
                    x: GSet::regular(g).map_err(fail)?,
                    y: GSet::regular(h).map_err(fail)?,
                };
                let r = patch_components(&d).map_err(fail)?;
                let mut gens = g.generators().to_vec();
                gens.extend(h.generators().iter().cloned());
                let joined = gamma.subgroup(gens).map_err(fail)?.order().map_err(fail)?;
                let index = gamma.order().map_err(fail)? / joined;
                ensure!(r.components == index && r.glued_components == index, "{name}: {} / {} components, index {index}", r.components, r.glued_components);
                patches += 1;
            }
        }
    }
    Ok(format!("{inductions} inductions, {quotients} quotient identities, {patches} patch diagrams"))
}

// ---------------------------------------------------------------- genus bound

fn criterion9() -> Check {
    for (p, n) in [(2u64, 1u32), (2, 2), (3, 1), (3, 2), (5, 1)] {
        let q = p.pow(n) as i64;
        let formula = BigRational::new(BigInt::from(q * (q - 2)), BigInt::from(2));
        let r = family_bound(p, n).map_err(fail)?;
        ensure!(r.bound == formula, "({p},{n}): bound {}", r.bound);
        // 2g - 2 = N (2 g_X - 2) + sum (e - 1) with N = q + 1, g_X = 0
        let prof = family_profile(p, n).map_err(fail)?;
        let ram: i64 = prof.fibers.iter().flatten().map(|&e| e as i64 - 1).sum();
        let two_g_minus_2 = -2 * prof.degree as i64 + ram;
        let g = BigRational::new(BigInt::from(two_g_minus_2 + 2), BigInt::from(2));
        ensure!(g == formula && r.profile_bound == formula, "({p},{n}): profile gives {g}");
        ensure!(prof.degree as i64 == q + 1 && prof.fibers.len() as i64 == q, "({p},{n}): wrong profile shape");
        // d/du (u^q - u) = q u^{q-1} - 1 = -1 in characteristic p
        let der = (q % p as i64) - 1;
        ensure!(r.derivative == der && der == -1, "({p},{n}): derivative {}", r.derivative);
        ensure!(r.tame && (q as u64 + 1) % p != 0, "({p},{n}): profile not tame");
    }
    Ok("5 (p, n) pairs".into())
}

// ---------------------------------------------------------------- CLI determinism

pub const DOCUMENTED: &[&[&str]] = &[
    &["asw", "cokernel", "--ring", "F(2,1)[x,1/1]", "--n", "1", "--deg", "4", "--mode", "geometric"],
    &["group", "quasip", "--group", "deg=3; gens=(0 1 2),(0 1)", "--p", "3"],
    &["curve", "family", "--p", "2", "--n", "2"],
    &["witt", "add", "--ring", "F(2,1)[x]", "--n", "2", "--u", "(1,0)", "--v", "(1,0)"],
    &["witt", "pmap", "--ring", "F(3,1)[x,1/x]", "--n", "2", "--u", "(x, 1/x)"],
    &["asw", "cokernel", "--ring", "F(3,1)[x]", "--n", "1,2", "--deg", "1..4", "--jobs", "2"],
    &["asw", "covers", "--ring", "F(3,1)[x]", "--n", "2", "--deg", "1"],
    &["asw", "report", "--ring", "F(5,1)[x,1/x]", "--n", "1", "--deg", "2", "--genus", "1"],
    &["group", "perfect", "--group", "deg=5; gens=(0 1 2 3 4),(0 1 2)"],
    &["group", "minnormal", "--group", "deg=4; gens=(0 1 2 3),(0 1)"],
    &["group", "mingen", "--group", "deg=5; gens=(0 1 2 3 4),(0 1 2)"],
    &["group", "heisenberg", "--orders", "2,2"],
    &["embed", "reduce", "--gamma", "deg=4; gens=(0 1 2 3)", "--kernel", "deg=4; gens=(0 1 2 3)", "--p", "2"],
    &["embed", "abhyankar", "--group", "deg=5; gens=(0 1 2 3 4),(0 1 2)", "--p", "7", "--punctures", "3"],
    &["embed", "splitify", "--gamma", "deg=3; gens=(0 1 2),(0 1)", "--kernel", "deg=3; gens=(0 1 2)", "--gp", "deg=3; gens=(0 1)"],
    &["patch", "components", "--gamma", "deg=4; gens=(0 1 2 3),(0 1)", "--g", "deg=4; gens=(0 1)", "--h", "deg=4; gens=(2 3)"],
    &["patch", "induce", "--gamma", "deg=3; gens=(0 1 2),(0 1)", "--g", "deg=3; gens=(0 1)"],
    &["curve", "hurwitz", "--degree", "2", "--p", "3", "--fibers", "2;2;2;2"],
    &["curve", "genus-for", "--group", "deg=5; gens=(0 1 2 3 4),(0 1 2)", "--l", "2", "--p", "7"],
];

fn run_bin(args: &[&str]) -> Result<(i32, Vec<u8>), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_charp")).args(args).output().map_err(fail)?;
    Ok((out.status.code().unwrap_or(-1), out.stdout))
}

fn criterion10() -> Check {
    for cmd in DOCUMENTED {
        let mut strict: Vec<&str> = cmd.to_vec();
        strict.push("--no-timing");
        let runs: Vec<(i32, Vec<u8>)> = (0..3).map(|_| run_bin(&strict)).collect::<Result<_, _>>()?;
        ensure!(runs.iter().all(|(c, _)| *c == 0), "{cmd:?} exited with {:?}", runs.iter().map(|r| r.0).collect::<Vec<_>>());
        ensure!(runs.windows(2).all(|w| w[0].1 == w[1].1), "{cmd:?}: output differs between runs");
        // with timing on, everything but timing_ms must agree
        let timed: Vec<serde_json::Value> = (0..3)
            .map(|_| {
                let (_, out) = run_bin(cmd)?;
                let mut v: serde_json::Value = serde_json::from_slice(&out).map_err(fail)?;
                v.as_object_mut().ok_or("not an object")?.remove("timing_ms");
                Ok(v)
            })
            .collect::<Result<_, String>>()?;
        ensure!(timed.windows(2).all(|w| w[0] == w[1]), "{cmd:?}: results differ with timing on");
        let doc: serde_json::Value = serde_json::from_slice(&runs[0].1).map_err(fail)?;
        for key in ["p", "q", "n", "d", "seed"] {
            ensure!(doc["inputs"].get(key).is_some(), "{cmd:?}: inputs.{key} missing");
        }
    }
    let a = run_json(DOCUMENTED[0])?;
    ensure!(a["result"]["invariant_factors"] == serde_json::json!([2, 2]), "cokernel factors {}", a["result"]["invariant_factors"]);
    ensure!(a["result"]["generators"] == serde_json::json!(["x", "x^3"]), "cokernel generators");
    ensure!(run_json(DOCUMENTED[1])?["result"]["order"] == 3, "quasi-p order");
    ensure!(run_json(DOCUMENTED[2])?["result"]["bound"] == "4", "family bound");
    Ok(format!("{} documented commands, 3 runs each", DOCUMENTED.len()))
}

fn run_json(cmd: &[&str]) -> Result<serde_json::Value, String> {
    let (_, out) = run_bin(cmd)?;
    serde_json::from_slice(&out).map_err(fail)
}

fn main() {
    let criteria: [(&str, fn() -> Check, u64); 10] = [
        ("witt ring correctness", criterion1, 10),
        ("P-map and V plumbing", criterion2, 30),
        ("cokernel dimensions", criterion3, 60),
        ("tame rank report", criterion4, 1),
        ("heisenberg commutators", criterion5, 60),
        ("minimal-normal trichotomy", criterion6, 300),
        ("quotient criterion checker", criterion7, 10),
        ("finite patching model", criterion8, 300),
        ("genus bound", criterion9, 1),
        ("CLI determinism", criterion10, 30),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (i, (name, f, limit)) in criteria.iter().enumerate() {
        let id = format!("criterion {:>2}", i + 1);
        if !filter.is_empty() && !filter.iter().any(|x| id.contains(x.as_str()) || name.contains(x.as_str())) {
            continue;
        }
        let start = Instant::now();
        let res = f();
        let took = start.elapsed();
        let over = took > Duration::from_secs(*limit);
        let (status, detail) = match (&res, over) {
            (Ok(d), false) => ("PASS", d.clone()),
            (Ok(d), true) => ("FAIL", format!("{d}; over the {limit} s budget")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!("{id} {status} [{name}] {:.2} s / {limit} s: {detail}", took.as_secs_f64());
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
