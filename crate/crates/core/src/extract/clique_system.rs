use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use serde_json::json;

use super::bracket_system::require;
use super::mcguinness::mcguinness_in;
use super::skeleton::find_in;
use super::{big, fail, unsigned, BoundParams, Ctx, ExtractError, ExtractionReport, HypothesisMode, StepFailure, Trace};
use crate::bounds::{f_bound, g2_beta, pigeonhole_m};
use crate::geom::{curves_intersect, first_hit, CurveFamily, Subcurve};
use crate::graph::VertexSet;
use crate::structures::{
    clique_anchors, side_for_clique, signature_in, support_window, validate_clique_system, CliqueAnchors, Side,
    Signature,
};

/// Cliques as sorted vertex lists.
type System = Vec<Vec<usize>>;

type Hyp<'h> = dyn Fn(&Ctx, &VertexSet, &mut Trace) -> Result<System, StepFailure> + 'h;

/// Node budget of the exhaustive clique-system search.
const SEARCH_BUDGET: usize = 200_000;

/// Largest `n` the pipelines accept; `m = 2ⁿ + 1` grows quickly.
const MAX_N: u64 = 4;

fn anchors(ctx: &Ctx, clique: &[usize], step: &str) -> Result<CliqueAnchors, StepFailure> {
    let ids: Vec<String> = clique.iter().map(|&v| ctx.id(v)).collect();
    clique_anchors(&ids, ctx.family).map_err(|e| fail(step, e.to_string(), clique.len()))
}

fn system_ids(ctx: &Ctx, sys: &System) -> Vec<Vec<String>> {
    sys.iter().map(|k| k.iter().map(|&v| ctx.id(v)).collect()).collect()
}

fn validate(ctx: &Ctx, sys: &System, step: &str) -> Result<(), StepFailure> {
    validate_clique_system(&system_ids(ctx, sys), ctx.family)
        .map(|_| ())
        .map_err(|e| fail(step, format!("result is a clique system: {e}"), sys.len()))
}

fn sig(ctx: &Ctx, v: usize, anchors: &[CliqueAnchors], step: &str) -> Result<Signature, StepFailure> {
    signature_in(&ctx.id(v), anchors, ctx.family)
        .ok()
        .flatten()
        .ok_or_else(|| fail(step, format!("{} meets ℓ′ ∪ r′ of every clique", ctx.id(v)), 0))
}

fn cliques_of_size(ctx: &Ctx, within: &VertexSet, size: usize, out: &mut Vec<Vec<usize>>, budget: &mut usize) {
    fn grow(ctx: &Ctx, cand: &VertexSet, cur: &mut Vec<usize>, size: usize, out: &mut Vec<Vec<usize>>, budget: &mut usize) {
        if *budget == 0 {
            return;
        }
        *budget -= 1;
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for v in cand.iter() {
            let rest = ctx.g.set(cand.intersection(ctx.g.neighbors(v)).iter().filter(|&w| w > v));
            if rest.len() + cur.len() + 1 < size {
                continue;
            }
            cur.push(v);
            grow(ctx, &rest, cur, size, out, budget);
            cur.pop();
        }
    }
    grow(ctx, within, &mut Vec::new(), size, out, budget);
}

/// Depth-first search for a clique system with the given sizes inside `within`,
/// cliques tried in lexicographic order.
fn search(ctx: &Ctx, within: &VertexSet, sizes: &[usize], budget: &mut usize) -> Option<System> {
    fn go(
        ctx: &Ctx,
        window: &VertexSet,
        sizes: &[usize],
        prefix: &mut Vec<(Vec<usize>, CliqueAnchors)>,
        budget: &mut usize,
    ) -> Option<System> {
        let j = prefix.len();
        if j == sizes.len() {
            return Some(prefix.iter().map(|(k, _)| k.clone()).collect());
        }
        let mut cands = Vec::new();
        cliques_of_size(ctx, window, sizes[j], &mut cands, budget);
        'next: for k in cands {
            if *budget == 0 {
                return None;
            }
            *budget -= 1;
            for (_, a) in prefix.iter() {
                let mut common = None;
                for &c in &k {
                    let side = side_for_clique(&ctx.id(c), a, ctx.family).ok()?;
                    if side == Side::Neither || common.is_some_and(|s| s != side) {
                        continue 'next;
                    }
                    common = Some(side);
                }
            }
            let Ok(a) = anchors(ctx, &k, "search") else { continue };
            let inner = ctx.between(window, k[0], k[1]);
            prefix.push((k, a));
            if let Some(found) = go(ctx, &inner, sizes, prefix, budget) {
                return Some(found);
            }
            prefix.pop();
        }
        None
    }
    go(ctx, within, sizes, &mut Vec::new(), budget)
}

/// Exhaustive search for a clique system with the given clique sizes in `family`.
pub fn search_clique_system(family: &CurveFamily, sizes: &[usize]) -> Option<Vec<Vec<String>>> {
    if sizes.iter().any(|&s| s < 2) {
        return None;
    }
    let ctx = Ctx::new(family);
    let mut budget = SEARCH_BUDGET;
    let sys = search(&ctx, &ctx.g.all(), sizes, &mut budget)?;
    Some(system_ids(&ctx, &sys))
}

fn search_hyp(sizes: Vec<usize>) -> impl Fn(&Ctx, &VertexSet, &mut Trace) -> Result<System, StepFailure> {
    move |ctx, within, trace| {
        let mut budget = SEARCH_BUDGET;
        let found = search(ctx, within, &sizes, &mut budget);
        let chi = ctx.chi(within);
        match found {
            Some(sys) => {
                trace.step(
                    "hypothesis",
                    &[("family", chi as u64), ("cliques", sys.len() as u64)],
                    sys.iter().flatten().map(|&v| ctx.id(v)).collect(),
                );
                Ok(sys)
            }
            None => Err(fail(
                "hypothesis",
                format!("a clique system of sizes {sizes:?} exists in the family"),
                chi,
            )),
        }
    }
}

/// The assumed `(2, …, 2)` system of length `n`, by search or by the lemma itself.
fn base_hyp(ctx: &Ctx, within: &VertexSet, n: u64, params: &BoundParams, trace: &mut Trace) -> Result<System, StepFailure> {
    if n == 0 {
        return Ok(Vec::new());
    }
    match params.hypothesis {
        HypothesisMode::Search => search_hyp(vec![2; n as usize])(ctx, within, trace),
        HypothesisMode::Proof => {
            let inner = move |c: &Ctx, w: &VertexSet, tr: &mut Trace| base_hyp(c, w, n - 1, params, tr);
            let mut sub = Trace::default();
            let res = attempt_level(ctx, within, 2, n - 1, params, &inner, &mut sub);
            trace.extend(&format!("hypothesis-{n}/"), sub);
            res
        }
    }
}

fn attempt_level(
    ctx: &Ctx,
    within: &VertexSet,
    t: u64,
    n: u64,
    params: &BoundParams,
    hyp: &Hyp,
    trace: &mut Trace,
) -> Result<System, StepFailure> {
    if n > MAX_N {
        return Err(fail("params", format!("n ≤ {MAX_N}"), n as usize));
    }
    if t == 2 {
        attempt_two(ctx, within, n, params, hyp, trace)
    } else {
        attempt_merge(ctx, within, t, n, params, hyp, trace)
    }
}

/// Threshold of the `i`-th nested skeleton, `f^{(m−i)}(β)` unless overridden.
fn chain_threshold(params: &BoundParams, i: usize, m: usize, beta: &BigUint) -> BigInt {
    if let Some(list) = &params.skeleton_chain {
        return big(list.get(i - 1).or(list.last()).copied().unwrap_or(0));
    }
    let xi = BigUint::from(params.xi);
    let mut v = beta.clone();
    for _ in 0..(m - i) {
        v = f_bound(&v, params.k, &xi);
    }
    unsigned(&v)
}

fn attempt_two(
    ctx: &Ctx,
    within: &VertexSet,
    n: u64,
    params: &BoundParams,
    hyp: &Hyp,
    trace: &mut Trace,
) -> Result<System, StepFailure> {
    let chi_f = ctx.chi(within);
    if n == 0 {
        // two intersecting curves form a (2)-clique system
        require(chi_f > 1, "pair", || "χ(F) > 1".into(), chi_f)?;
        let (u, v) = within
            .iter()
            .find_map(|u| within.iter().find(|&v| v > u && ctx.g.adjacent(u, v)).map(|v| (u, v)))
            .ok_or_else(|| fail("pair", "χ(F) > 1 gives an edge", chi_f))?;
        trace.step("pair", &[("F", chi_f as u64)], vec![ctx.id(u), ctx.id(v)]);
        return Ok(vec![vec![u, v]]);
    }
    let xi = params.xi;
    let m = pigeonhole_m(n) as usize;
    let mn = m * n as usize;
    let beta_p = g2_beta(&BigUint::from(params.alpha), n, &BigUint::from(xi));
    let gap = match params.gap {
        Some(g) => big(g),
        None => unsigned(&(((BigUint::from(1u8) << (mn + 2)) + BigUint::from(2 * m as u64)) * BigUint::from(xi))),
    };

    // F = F₀ ⊃ F₁ ⊃ … ⊃ F_m, F_i supported by a skeleton in F_{i−1}
    let mut fams = vec![within.clone()];
    let mut skeletons: Vec<(usize, usize, Vec<usize>)> = Vec::new();
    for i in 1..=m {
        let th = chain_threshold(params, i, m, &beta_p);
        let prev = &fams[i - 1];
        let th_u64: Option<u64> = th.clone().try_into().ok();
        let found = th_u64.and_then(|a| find_in(ctx, prev, a));
        let Some(found) = found else {
            return Err(fail(
                format!("skeleton-{i}"),
                format!("a subfamily of F_{} with χ > {th} is supported by a skeleton", i - 1),
                ctx.chi(prev),
            ));
        };
        let sk = &found.skeleton;
        let c = ctx.chi(&found.supported);
        trace.step(
            format!("skeleton-{i}"),
            &[(&format!("F_{i}"), c as u64)],
            std::iter::once(sk.u.clone()).chain([sk.v.clone()]).chain(sk.supports.clone()).collect(),
        );
        skeletons.push((ctx.index(&sk.u), ctx.index(&sk.v), sk.supports.iter().map(|s| ctx.index(s)).collect()));
        fams.push(found.supported);
    }
    let fm = fams[m].clone();

    // H ⊂ F_m with χ(H) > α and χ(F_m(p, q)) > gap for intersecting p, q ∈ H
    let gap_u64: u64 = gap.clone().try_into().map_err(|_| fail("mcguinness", "gap fits in 64 bits", 0))?;
    let mut sub = Trace::default();
    let res = mcguinness_in(ctx, &fm, params.alpha, gap_u64, &mut sub);
    trace.extend("mcguinness/", sub);
    let h = res.map_err(|e| match e {
        ExtractError::PreconditionFailure { reason, measured } => fail("mcguinness", reason, measured as usize),
        other => fail("mcguinness", other.to_string(), 0),
    })?;

    let k_sys = hyp(ctx, &h, trace)?;
    if k_sys.len() != n as usize {
        return Err(fail("hypothesis", format!("system of length {n}"), k_sys.len()));
    }
    let k_anchors: Vec<CliqueAnchors> = k_sys.iter().map(|k| anchors(ctx, k, "hypothesis")).collect::<Result<_, _>>()?;
    let (l, r) = (k_sys[n as usize - 1][0], k_sys[n as usize - 1][1]);
    let fm_lr = ctx.between(&fm, l, r);
    let chi_lr = ctx.chi(&fm_lr);
    trace.step("anchors", &[("F_m(l,r)", chi_lr as u64)], vec![ctx.id(l), ctx.id(r)]);
    require(
        BigInt::from(chi_lr) > gap,
        "anchors",
        || format!("χ(F_m(ℓ, r)) > {gap}"),
        chi_lr,
    )?;

    // s_i(p): the support of skeleton i whose window p meets first along p
    let windows: Vec<Vec<Subcurve>> = skeletons
        .iter()
        .map(|(u, v, s)| {
            let (u, v) = (ctx.family.curve(*u), ctx.family.curve(*v));
            s.iter().map(|&x| support_window(ctx.family.curve(x), u, v)).collect()
        })
        .collect();
    let first_support = |c: usize, i: usize| -> Option<usize> {
        first_hit(ctx.family.curve(c), &windows[i]).map(|hit| skeletons[i].2[hit.obstacle])
    };
    let mut s_of: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for p in fm_lr.iter() {
        let mut row = Vec::with_capacity(m);
        for i in 0..m {
            let s = first_support(p, i)
                .ok_or_else(|| fail("supports", format!("{} is supported by skeleton {}", ctx.id(p), i + 1), 0))?;
            row.push(s);
        }
        s_of.insert(p, row);
    }
    let g = ctx.g.set(fm_lr.iter().filter(|p| s_of[p].iter().all(|&s| l < s && s < r)));
    let chi_g = ctx.chi(&g);
    let g_th = &gap - big(2 * m as u64 * xi);
    trace.step("G", &[("G", chi_g as u64)], ctx.ids(&g));
    require(BigInt::from(chi_g) > g_th, "G", || format!("χ(G) > {g_th}"), chi_g)?;

    // pigeonhole over sequences of signatures
    let mut classes: BTreeMap<Vec<Signature>, VertexSet> = BTreeMap::new();
    for p in g.iter() {
        let key: Vec<Signature> = s_of[&p]
            .iter()
            .map(|&s| sig(ctx, s, &k_anchors, "signatures"))
            .collect::<Result<_, _>>()?;
        classes.entry(key).or_insert_with(|| VertexSet::new(ctx.g.len())).insert(p);
    }
    let (seq, p_set) = classes
        .iter()
        .max_by_key(|(k, s)| (ctx.chi(s), std::cmp::Reverse((*k).clone())))
        .map(|(k, s)| (k.clone(), s.clone()))
        .ok_or_else(|| fail("signatures", "G is nonempty", 0))?;
    let chi_p = ctx.chi(&p_set);
    trace.step(
        "signature-class",
        &[("P", chi_p as u64), ("classes", classes.len() as u64)],
        ctx.ids(&p_set),
    );
    let scaled = BigInt::from(chi_p) << mn;
    require(scaled >= BigInt::from(chi_g), "signature-class", || format!("χ(P) ≥ χ(G)/2^{mn}"), chi_p)?;
    require(scaled > g_th, "signature-class", || format!("χ(P) > {g_th}/2^{mn}"), chi_p)?;
    let (i, j) = (0..m)
        .flat_map(|i| (i + 1..m).map(move |j| (i, j)))
        .find(|&(i, j)| seq[i] == seq[j])
        .ok_or_else(|| fail("signature-class", "two equal signatures among m = 2ⁿ + 1", m))?;
    let sigma = seq[i].clone();

    // window between s_i^L and s_i^R
    let si: Vec<usize> = p_set.iter().map(|p| s_of[&p][i]).collect();
    let (sil, sir) = (*si.iter().min().unwrap(), *si.iter().max().unwrap());
    let sj: Vec<usize> = p_set.iter().map(|p| s_of[&p][j]).collect();
    let sjl = sj.iter().copied().filter(|&s| s < sil).max();
    let sjr = sj.iter().copied().filter(|&s| s > sir).min();
    let inner = ctx.between(&p_set, sil, sir);
    let chi_inner = ctx.chi(&inner);
    let mut chosen = vec![ctx.id(sil), ctx.id(sir)];
    chosen.extend(sjl.into_iter().chain(sjr).map(|x| ctx.id(x)));
    trace.step(
        "window",
        &[("P(s_i^L,s_i^R)", chi_inner as u64), ("i", i as u64 + 1), ("j", j as u64 + 1)],
        chosen,
    );
    let p = inner
        .iter()
        .find(|p| {
            let s = s_of[p][j];
            sil < s && s < sir
        })
        .ok_or_else(|| {
            fail(
                "window",
                "some p ∈ P(s_i^L, s_i^R) has s_j(p) ∈ F(s_i^L, s_i^R)",
                chi_inner,
            )
        })?;
    let sjp = s_of[&p][j];

    // s: first support of skeleton i met by s_j(p)
    let s = first_support(sjp, i)
        .ok_or_else(|| fail("merge", format!("{} is supported by skeleton {}", ctx.id(sjp), i + 1), 0))?;
    if !(sil <= s && s <= sir) {
        return Err(fail("merge", format!("{} lies between s_i^L and s_i^R", ctx.id(s)), 0));
    }
    let sig_s = sig(ctx, s, &k_anchors, "merge")?;
    if sig_s != sigma {
        return Err(fail("merge", format!("Σ({}) = {sigma}", ctx.id(s)), 0));
    }
    if s == sjp || !curves_intersect(ctx.family.curve(s), ctx.family.curve(sjp)) {
        return Err(fail("merge", "s and s_j(p) are distinct and intersect", 0));
    }
    let mut pair = vec![s, sjp];
    pair.sort_unstable();
    trace.step("merge", &[], pair.iter().map(|&x| ctx.id(x)).collect());
    let mut sys = k_sys;
    sys.push(pair);
    validate(ctx, &sys, "merge")?;
    Ok(sys)
}

/// Length `n + count` system whose last `count` cliques have size `t`,
/// obtained from `count` nested applications of the level-`t` lemma.
fn chain(
    ctx: &Ctx,
    within: &VertexSet,
    t: u64,
    n: u64,
    count: u64,
    params: &BoundParams,
    trace: &mut Trace,
) -> Result<System, StepFailure> {
    if count == 0 {
        return base_hyp(ctx, within, n, params, trace);
    }
    let inner = move |c: &Ctx, w: &VertexSet, tr: &mut Trace| chain(c, w, t, n, count - 1, params, tr);
    let mut sub = Trace::default();
    let res = attempt_level(ctx, within, t, n + count - 1, params, &inner, &mut sub);
    trace.extend(&format!("level-{t}-{}/", n + count - 1), sub);
    res
}

fn attempt_merge(
    ctx: &Ctx,
    within: &VertexSet,
    t: u64,
    n: u64,
    params: &BoundParams,
    hyp: &Hyp,
    trace: &mut Trace,
) -> Result<System, StepFailure> {
    let m = pigeonhole_m(n);
    let nn = n as usize;
    let sys = match params.hypothesis {
        HypothesisMode::Search => {
            let mut sizes = vec![2; nn];
            sizes.extend(std::iter::repeat_n(t as usize - 1, m as usize));
            search_hyp(sizes)(ctx, within, trace)?
        }
        HypothesisMode::Proof => {
            // the prefix comes from `hyp`, the m cliques of size t−1 from the level below
            let _ = hyp;
            chain(ctx, within, t - 1, n, m, params, trace)?
        }
    };
    if sys.len() != nn + m as usize {
        return Err(fail("system", format!("length n + m = {}", nn + m as usize), sys.len()));
    }
    let all_anchors: Vec<CliqueAnchors> = sys.iter().map(|k| anchors(ctx, k, "system")).collect::<Result<_, _>>()?;
    let (k_anchors, l_anchors) = all_anchors.split_at(nn);
    let mut sigs = Vec::with_capacity(m as usize);
    for (idx, l) in sys[nn..].iter().enumerate() {
        let s0 = sig(ctx, l[0], k_anchors, "signatures")?;
        for &c in &l[1..] {
            if sig(ctx, c, k_anchors, "signatures")? != s0 {
                return Err(fail("signatures", format!("members of L_{} share a signature", idx + 1), 0));
            }
        }
        sigs.push(s0);
    }
    trace.step(
        "signatures",
        &[("cliques", m)],
        sigs.iter().map(|s| s.to_string()).collect(),
    );
    let (i, j) = (0..m as usize)
        .flat_map(|i| (i + 1..m as usize).map(move |j| (i, j)))
        .find(|&(i, j)| sigs[i] == sigs[j])
        .ok_or_else(|| fail("signatures", "two equal signatures among m = 2ⁿ + 1", m as usize))?;
    let lj = &sys[nn + j];
    let side = side_for_clique(&ctx.id(lj[0]), &l_anchors[i], ctx.family)
        .map_err(|e| fail("merge", e.to_string(), 0))?;
    let extra = match side {
        Side::Left => ctx.index(&l_anchors[i].l),
        Side::Right => ctx.index(&l_anchors[i].r),
        Side::Neither => return Err(fail("merge", format!("L_{} is left or right for L_{}", j + 1, i + 1), 0)),
    };
    let mut merged = lj.clone();
    merged.push(extra);
    merged.sort_unstable();
    let members: Vec<String> = merged.iter().map(|&v| ctx.id(v)).collect();
    trace.step(format!("merge L_{} with an anchor of L_{}", j + 1, i + 1), &[("size", merged.len() as u64)], members);
    if merged.len() != t as usize || !ctx.g.is_clique(&merged) {
        return Err(fail("merge", format!("L is a {t}-clique"), merged.len()));
    }
    let mut out: System = sys[..nn].to_vec();
    out.push(merged);
    validate(ctx, &out, "merge")?;
    Ok(out)
}

/// Runs the clique-system construction for `t` and `n`, reporting the
/// extended `(2, …, 2, t)` system or the first failed step.
pub fn attempt_clique_system(family: &CurveFamily, t: u64, n: u64, params: &BoundParams) -> ExtractionReport {
    let mut trace = Trace::default();
    if t < 2 {
        return trace.failed(fail("params", "t ≥ 2", t as usize));
    }
    if let Err(e) = params.validate() {
        return trace.failed(fail("params", e.to_string(), 0));
    }
    let ctx = Ctx::new(family);
    let hyp = |c: &Ctx, w: &VertexSet, tr: &mut Trace| base_hyp(c, w, n, params, tr);
    match attempt_level(&ctx, &ctx.g.all(), t, n, params, &hyp, &mut trace) {
        Ok(sys) => {
            let ids = system_ids(&ctx, &sys);
            match validate_clique_system(&ids, family) {
                Ok(cs) => trace.found(json!({
                    "kind": "clique-system",
                    "system": cs.to_json(),
                })),
                Err(e) => trace.failed(fail("validate", e.to_string(), sys.len())),
            }
        }
        Err(f) => trace.failed(f),
    }
}
