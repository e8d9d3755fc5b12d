use std::io::Read;
use std::path::Path;

use charp_core::algebra::descriptor::{parse_elem, parse_ring, split_tuple};
use charp_core::algebra::{CoordinateRing, RingElem};
use charp_core::asw::{
    abelianization_report, cokernel_basis, cokernel_grid_with, count_cyclic_covers, format_witt, CokernelStructure, Window,
};
use charp_core::curves::{
    format_rational, genus_needed_for, family_bound, tame_hurwitz_genus, RamificationProfile,
};
use charp_core::embed::{abhyankar_quotient_check, reduction_tree, splitify, EmbeddingProblem, ReductionTree};
use charp_core::groups::{heisenberg, heisenberg_product, AbelianType, PermGroup};
use charp_core::par::Exec;
use charp_core::patchsim::{induce, is_isomorphic_gsets, patch_components, GSet, PatchDiagram};
use charp_core::witt::{WittRing, WittVector};
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::args::{AswCmd, Cli, Cmd, CurveCmd, EmbedCmd, GroupCmd, PatchCmd, RingArgs, WittCmd};
use crate::errors::CliError;
use crate::{Meta, Outcome};

type Res = Result<Outcome, CliError>;

fn outcome(result: Value, certificates: Value) -> Res {
    Ok(Outcome { result, certificates })
}

pub fn dispatch(cli: &Cli, meta: &mut Meta) -> Res {
    match &cli.cmd {
        Cmd::Witt { op } => witt(op, meta),
        Cmd::Asw { op } => asw(op, cli.jobs, meta),
        Cmd::Group { op } => group(op, meta),
        Cmd::Embed { op } => embed(op, meta),
        Cmd::Patch { op } => patch(op),
        Cmd::Curve { op } => curve(op, meta),
        Cmd::Replay { .. } => unreachable!("replay is handled before dispatch"),
    }
}

/// `inputs.argv` of a previous report.
pub fn replay_argv(file: Option<&Path>) -> Result<Vec<String>, CliError> {
    let text = match file {
        Some(f) => std::fs::read_to_string(f).map_err(|e| CliError::input("Io", format!("{}: {e}", f.display())))?,
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| CliError::input("Io", e.to_string()))?;
            s
        }
    };
    let doc: Value = serde_json::from_str(&text).map_err(|e| CliError::input("Parse", e.to_string()))?;
    let argv = doc["inputs"]["argv"]
        .as_array()
        .ok_or_else(|| CliError::input("Parse", "report has no inputs.argv"))?;
    argv.iter()
        .map(|a| a.as_str().map(String::from).ok_or_else(|| CliError::input("Parse", "inputs.argv must hold strings")))
        .collect()
}

fn ring(args: &RingArgs, meta: &mut Meta) -> Result<CoordinateRing, CliError> {
    let r = parse_ring(&args.ring, args.mode)?;
    meta.p = Some(r.p() as u64);
    meta.q = Some(r.fq().q() as u64);
    Ok(r)
}

fn big(v: &BigUint) -> Value {
    match v.to_u64() {
        Some(x) => json!(x),
        None => json!(v.to_string()),
    }
}

fn parse_vector(w: &WittRing<CoordinateRing>, ring: &CoordinateRing, s: &str) -> Result<WittVector<RingElem>, CliError> {
    let comps = split_tuple(s).iter().map(|c| parse_elem(c, ring)).collect::<Result<Vec<_>, _>>()?;
    Ok(w.from_components(comps)?)
}

fn witt(op: &WittCmd, meta: &mut Meta) -> Res {
    let (ra, n) = match op {
        WittCmd::Add(a) | WittCmd::Mul(a) => (&a.ring, a.n),
        WittCmd::Pmap(a) => (&a.ring, a.n),
    };
    let r = ring(ra, meta)?;
    meta.n = Some(json!(n));
    let w = WittRing::new(r.clone(), n)?;
    let value = match op {
        WittCmd::Add(a) => w.add(&parse_vector(&w, &r, &a.u)?, &parse_vector(&w, &r, &a.v)?)?,
        WittCmd::Mul(a) => w.mul(&parse_vector(&w, &r, &a.u)?, &parse_vector(&w, &r, &a.v)?)?,
        WittCmd::Pmap(a) => w.p_map(&parse_vector(&w, &r, &a.u)?)?,
    };
    outcome(
        json!({ "value": format_witt(&r, &value), "components": value.components().iter().map(|c| r.format(c)).collect::<Vec<_>>() }),
        json!({ "structure_monomials": w.cache().size() }),
    )
}

fn parse_list(s: &str, what: &str) -> Result<Vec<usize>, CliError> {
    let mut out = Vec::new();
    for part in s.split(',') {
        let part = part.trim();
        if let Some((a, b)) = part.split_once("..") {
            let a: usize = a.trim().parse().map_err(|_| CliError::input("Parse", format!("bad {what} `{part}`")))?;
            let b: usize = b.trim().parse().map_err(|_| CliError::input("Parse", format!("bad {what} `{part}`")))?;
            out.extend(a..=b);
        } else {
            out.push(part.parse().map_err(|_| CliError::input("Parse", format!("bad {what} `{part}`")))?);
        }
    }
    out.sort_unstable();
    out.dedup();
    if out.is_empty() {
        return Err(CliError::input("Parse", format!("empty {what} list")));
    }
    Ok(out)
}

fn cokernel_json(r: &CoordinateRing, s: &CokernelStructure) -> (Value, Value) {
    let result = json!({
        "n": s.n,
        "d": s.d,
        "invariant_factors": s.invariant_factors,
        "generators": s.format_generators(r),
        "order": big(&s.order()),
        "log_order": s.log_order,
        "rank": s.rank(),
    });
    let certs = json!({
        "generator_orders": s.generator_orders,
        "orders_agree": s.generator_orders == s.invariant_factors,
        "ranks": s.ranks(),
        "window_dim": Window::new(s.d).dim(r),
    });
    (result, certs)
}

fn with_jobs<T: Send>(jobs: Option<usize>, f: impl FnOnce(Exec) -> T + Send) -> Result<T, CliError> {
    let exec = if jobs == Some(1) { Exec::Sequential } else { Exec::best() };
    #[cfg(feature = "parallel")]
    if let Some(k) = jobs.filter(|&k| k > 1) {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()
            .map_err(|e| CliError::input("Jobs", e.to_string()))?;
        return Ok(pool.install(|| f(exec)));
    }
    Ok(f(exec))
}

fn asw(op: &AswCmd, jobs: Option<usize>, meta: &mut Meta) -> Res {
    match op {
        AswCmd::Cokernel(a) => {
            let r = ring(&a.ring, meta)?;
            let ns = parse_list(&a.n, "n")?;
            let ds = parse_list(&a.deg, "deg")?;
            if ns.len() == 1 && ds.len() == 1 {
                meta.n = Some(json!(ns[0]));
                meta.d = Some(json!(ds[0]));
                let s = cokernel_basis(&r, ns[0], Window::new(ds[0]))?;
                let (res, certs) = cokernel_json(&r, &s);
                return outcome(res, certs);
            }
            meta.n = Some(json!(ns));
            meta.d = Some(json!(ds));
            let points: Vec<(usize, usize)> = ns.iter().flat_map(|&n| ds.iter().map(move |&d| (n, d))).collect();
            let results = with_jobs(jobs, |exec| cokernel_grid_with(exec, &r, &points))?;
            let mut grid = Vec::new();
            let mut certs = Vec::new();
            for res in results {
                let (a, b) = cokernel_json(&r, &res?);
                grid.push(a);
                certs.push(b);
            }
            outcome(json!({ "grid": grid }), json!({ "grid": certs }))
        }
        AswCmd::Covers(a) => {
            let r = ring(&a.ring, meta)?;
            meta.n = Some(json!(a.n));
            meta.d = Some(json!(a.deg));
            let c = count_cyclic_covers(&r, a.n, Window::new(a.deg))?;
            let s = cokernel_basis(&r, a.n, Window::new(a.deg))?;
            outcome(
                json!({ "total": big(&c.total), "surjective": big(&c.surjective) }),
                json!({ "invariant_factors": s.invariant_factors }),
            )
        }
        AswCmd::Report(a) => {
            let r = ring(&a.ring, meta)?;
            meta.n = Some(json!(a.n));
            meta.d = Some(json!(a.deg));
            let rep = abelianization_report(a.genus, &r, a.n, Window::new(a.deg))?;
            let levels: Vec<Value> = rep
                .p_part
                .iter()
                .map(|s| json!({ "n": s.n, "invariant_factors": s.invariant_factors, "generators": s.format_generators(&r) }))
                .collect();
            outcome(
                json!({
                    "genus": rep.genus,
                    "punctures": rep.punctures,
                    "prime_to_p_rank": rep.prime_to_p_rank,
                    "p_part": levels,
                }),
                json!({ "rank_formula": "2g + r - 1" }),
            )
        }
    }
}

fn parse_group(s: &str) -> Result<PermGroup, CliError> {
    Ok(PermGroup::parse(s)?)
}

fn group_json(g: &PermGroup) -> Result<Value, CliError> {
    let gens: Vec<String> = g.generators().iter().map(|x| x.to_string()).collect();
    Ok(json!({ "degree": g.degree(), "order": g.order()?, "generators": gens }))
}

fn group(op: &GroupCmd, meta: &mut Meta) -> Res {
    match op {
        GroupCmd::Quasip { group, p } => {
            meta.p = Some(*p);
            let g = parse_group(group)?;
            let q = g.quasi_p_part(*p)?;
            let index = g.order()? / q.order()?;
            outcome(
                json!({ "subgroup": group_json(&q)?, "order": q.order()?, "index": index }),
                json!({ "normal": q.is_normal_in(&g)?, "index_prime_to_p": index as u64 % p != 0 }),
            )
        }
        GroupCmd::Perfect { group } => {
            let g = parse_group(group)?;
            let c = g.commutator_subgroup()?;
            outcome(
                json!({ "perfect": c.order()? == g.order()?, "commutator_order": c.order()? }),
                json!({ "abelianization": g.abelianization()?.factors() }),
            )
        }
        GroupCmd::Minnormal { group } => {
            let g = parse_group(group)?;
            let mut list = Vec::new();
            for m in g.minimal_normal_subgroups()? {
                list.push(json!({
                    "subgroup": group_json(&m.group)?,
                    "simple_factor": {
                        "name": m.factor.name,
                        "order": m.factor.order,
                        "abelian": m.factor.abelian,
                        "perfect": m.factor.perfect,
                    },
                    "multiplicity": m.multiplicity,
                }));
            }
            outcome(json!({ "minimal_normal_subgroups": list }), json!({ "group_order": g.order()? }))
        }
        GroupCmd::Mingen { group, cap_k } => {
            let g = parse_group(group)?;
            let mg = g.min_generators(*cap_k)?;
            let gens: Vec<String> = mg.generators.iter().map(|x| x.to_string()).collect();
            outcome(
                json!({ "d": mg.d, "generators": gens }),
                json!({ "abelianization_rank": g.abelianization()?.rank(), "generated_order": g.subgroup(mg.generators)?.order()? }),
            )
        }
        GroupCmd::Heisenberg { p, m, orders } => {
            let (b, a) = match (orders, p, m) {
                (Some(o), _, _) => {
                    let list: Vec<u64> = o
                        .split(',')
                        .map(|t| t.trim().parse().map_err(|_| CliError::input("Parse", format!("bad order `{t}`"))))
                        .collect::<Result<_, _>>()?;
                    let a = AbelianType::from_cyclic_orders(&list);
                    meta.p = a.prime();
                    (heisenberg_product(&a)?, a)
                }
                (None, Some(p), Some(m)) => {
                    meta.p = Some(*p);
                    meta.n = Some(json!(m));
                    let q = p.checked_pow(*m).ok_or_else(|| CliError::input("Overflow", "p^m too large"))?;
                    (heisenberg(*p, *m)?, AbelianType::from_cyclic_orders(&[q]))
                }
                _ => return Err(CliError::input("Usage", "give --orders, or both --p and --m")),
            };
            let c = b.commutator_subgroup()?;
            let ct = c.abelianization()?;
            outcome(
                json!({
                    "order": b.order()?,
                    "degree": b.degree(),
                    "commutator_order": c.order()?,
                    "commutator_type": ct.factors(),
                }),
                json!({ "expected_type": a.factors(), "commutator_matches": ct == a && c.is_abelian() }),
            )
        }
    }
}

fn tree_json(t: &ReductionTree) -> Value {
    match t {
        ReductionTree::Trivial { gamma_order } => json!({ "kind": "trivial", "gamma_order": gamma_order }),
        ReductionTree::Leaf { gamma_order, kernel_order, case } => {
            json!({ "kind": "leaf", "gamma_order": gamma_order, "kernel_order": kernel_order, "case": case.as_str() })
        }
        ReductionTree::Node { gamma_order, kernel_order, h1_order, upper, lower } => json!({
            "kind": "node",
            "gamma_order": gamma_order,
            "kernel_order": kernel_order,
            "h1_order": h1_order,
            "upper": tree_json(upper),
            "lower": tree_json(lower),
        }),
    }
}

fn embed(op: &EmbedCmd, meta: &mut Meta) -> Res {
    match op {
        EmbedCmd::Reduce { gamma, kernel, p } => {
            meta.p = Some(*p);
            let g = parse_group(gamma)?;
            let h = parse_group(kernel)?;
            let ep = EmbeddingProblem::new(&g, &h)?;
            let t = reduction_tree(&ep, *p)?;
            let leaves: Vec<Value> = t.leaves().iter().map(|(o, c)| json!({ "kernel_order": o, "case": c.as_str() })).collect();
            let product: usize = t.leaves().iter().map(|(o, _)| o).product();
            outcome(
                json!({ "tree": tree_json(&t), "leaves": leaves }),
                json!({ "leaf_order_product": product, "kernel_order": ep.kernel().order()?, "depth": t.depth() }),
            )
        }
        EmbedCmd::Abhyankar { group, p, genus, punctures } => {
            meta.p = Some(*p);
            let g = parse_group(group)?;
            let r = abhyankar_quotient_check(&g, *p, *genus, *punctures)?;
            let cert = r.certificate.as_ref().map(|c| c.iter().map(|x| x.to_string()).collect::<Vec<_>>());
            outcome(
                json!({
                    "accepted": r.accepted,
                    "bound": r.bound,
                    "rank": r.rank,
                    "quotient_order": r.quotient_order,
                    "quasi_p_order": r.quasi_p_order,
                }),
                json!({ "generators": cert, "exhaustive": true }),
            )
        }
        EmbedCmd::Splitify { gamma, kernel, gp } => {
            let g = parse_group(gamma)?;
            let h = parse_group(kernel)?;
            let gp = parse_group(gp)?;
            let ep = EmbeddingProblem::new(&g, &h)?;
            let sp = splitify(&ep, &gp)?;
            let image = sp.beta_image()?.len();
            let sec = sp.problem.section().map(|s| s.generators().iter().map(|x| x.to_string()).collect::<Vec<_>>());
            outcome(
                json!({
                    "gamma_prime_order": sp.problem.gamma().order()?,
                    "kernel_order": sp.problem.kernel().order()?,
                    "beta_image_order": image,
                    "beta_surjective": image == g.order()?,
                }),
                json!({ "section_generators": sec }),
            )
        }
    }
}

fn patch(op: &PatchCmd) -> Res {
    match op {
        PatchCmd::Components { gamma, g, h } => {
            let gamma = parse_group(gamma)?;
            let g = parse_group(g)?;
            let h = parse_group(h)?;
            let d = PatchDiagram {
                x: GSet::regular(&g)?,
                y: GSet::regular(&h)?,
                gamma,
                g,
                h,
            };
            let r = patch_components(&d)?;
            outcome(
                json!({ "components": r.components, "generated_order": r.generated.order()? }),
                json!({ "glued_components": r.glued_components, "agree": r.glued_components == r.components }),
            )
        }
        PatchCmd::Induce { gamma, g, stab } => {
            let gamma = parse_group(gamma)?;
            let g = parse_group(g)?;
            let k = match stab {
                Some(s) => parse_group(s)?,
                None => PermGroup::trivial(g.degree()),
            };
            let x = GSet::cosets(&g, &k)?;
            let w = induce(&gamma, &g, &x)?;
            let regular = is_isomorphic_gsets(&w, &GSet::regular(&gamma)?)?;
            outcome(
                json!({ "size": w.size(), "orbits": w.orbits().len(), "transitive": w.is_transitive(), "regular": regular }),
                json!({ "index": gamma.order()? / g.order()?, "x_size": x.size() }),
            )
        }
    }
}

fn curve(op: &CurveCmd, meta: &mut Meta) -> Res {
    match op {
        CurveCmd::Hurwitz { degree, base_genus, p, fibers } => {
            meta.p = Some(*p);
            let mut fs = Vec::new();
            for f in fibers.split(';').map(str::trim).filter(|f| !f.is_empty()) {
                let fiber = f
                    .split(',')
                    .map(|e| e.trim().parse::<u64>().map_err(|_| CliError::input("Parse", format!("bad index `{e}`"))))
                    .collect::<Result<Vec<_>, _>>()?;
                fs.push(fiber);
            }
            let rp = RamificationProfile { degree: *degree, base_genus: *base_genus, p: *p, fibers: fs };
            let g = tame_hurwitz_genus(&rp)?;
            outcome(
                json!({ "genus": g.to_u64().map(Value::from).unwrap_or_else(|| json!(g.to_string())) }),
                json!({ "different_degree": rp.different_degree() }),
            )
        }
        CurveCmd::Family { p, n } => {
            meta.p = Some(*p);
            meta.n = Some(json!(n));
            let r = family_bound(*p, *n)?;
            let ceil = r.bound.ceil().to_integer();
            outcome(
                json!({ "bound": format_rational(&r.bound), "min_genus": ceil.to_u64() }),
                json!({
                    "profile_bound": format_rational(&r.profile_bound),
                    "derivative": r.derivative,
                    "ramification_index": r.ramification_index,
                    "tame": r.tame,
                }),
            )
        }
        CurveCmd::GenusFor { group, l, p } => {
            meta.p = Some(*p);
            let h = parse_group(group)?;
            let c = genus_needed_for(&h, *l, *p)?;
            outcome(json!({ "genus": c.genus, "generators": c.generators }), json!({ "rule": "smallest g >= 2 with 2g > d(H^l)" }))
        }
    }
}
