//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::Instant;

use num_bigint::BigUint;

use outerstring::bounds::{explicit_chi_bound, f_bound, g2_bound};
use outerstring::extract::{bfs_supported, mcguinness};
use outerstring::gen::{bracket_crossing_instances, figure_fixture, signature_triples, two_bracket_system};
use outerstring::geom::{curve_intersections, curves_intersect, exterior_membership, CurveFamily, GroundedCurve, Probe};
use outerstring::graph::{chromatic_number, clique_number, intersection_graph};
use outerstring::structures::{
    build_bracket, check_signature_betweenness, extract_clique, interior_classify, validate_clique_system,
    verify_bracket_crossing, Classification,
};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let mut mismatches = 0;
    let families = common::corpus(200, 8, 10_000);
    for f in &families {
        let g = intersection_graph(f);
        let m = common::adjacency(f);
        let (omega, clique) = clique_number(&g);
        let (chi, witness) = chromatic_number(&g);
        let clique_ok = clique.len() == omega;
        let coloring_ok = witness.is_proper(g.adjacency()) && witness.num_colors() == chi;
        if omega != common::brute_omega(&m) || chi != common::brute_chi(&m) || !clique_ok || !coloring_ok {
            mismatches += 1;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(
        mismatches == 0 && secs < 60.0,
        format!("{} families, {mismatches} mismatches, {secs:.1} s", families.len()),
    )
}

fn ids_between(f: &CurveFamily, u: &str, v: &str) -> Vec<usize> {
    let (a, b) = (f.index_of(u).unwrap(), f.index_of(v).unwrap());
    (a.min(b) + 1..a.max(b)).collect()
}

/// `χ(S) > x` for `x ≤ 1`: nonempty, or containing an edge.
fn chi_exceeds(f: &CurveFamily, s: &[usize], x: u64) -> bool {
    match x {
        0 => !s.is_empty(),
        1 => s.iter().any(|&a| s.iter().any(|&b| a < b && curves_intersect(f.curve(a), f.curve(b)))),
        _ => unreachable!("thresholds are 0 or 1"),
    }
}

fn mcguinness_suite(corpus: &[CurveFamily]) -> Outcome {
    let (mut runs, mut failures) = (0, 0);
    for f in corpus {
        let g = intersection_graph(f);
        let chi = g.chi(&g.all()) as u64;
        for alpha in 0..=1u64 {
            for beta in 0..=1u64 {
                if chi <= 2 * alpha * (beta + 1) {
                    continue;
                }
                runs += 1;
                let Ok((h, _)) = mcguinness(f, alpha, beta) else {
                    failures += 1;
                    continue;
                };
                let hi: Vec<usize> = h.iter().map(|x| f.index_of(x).unwrap()).collect();
                let mut ok = chi_exceeds(f, &hi, alpha);
                for &u in &hi {
                    for &v in hi.iter().filter(|&&v| v > u) {
                        if curves_intersect(f.curve(u), f.curve(v)) {
                            let between = ids_between(f, f.curve(u).id(), f.curve(v).id());
                            ok &= chi_exceeds(f, &between, beta);
                        }
                    }
                }
                failures += usize::from(!ok);
            }
        }
    }
    outcome(failures == 0 && runs > 0, format!("{runs} runs, {failures} failures"))
}

fn bfs_suite(corpus: &[CurveFamily]) -> Outcome {
    let (mut runs, mut failures) = (0, 0);
    for f in corpus {
        let g = intersection_graph(f);
        if g.omega(&g.all()) < 2 {
            continue;
        }
        runs += 1;
        let Ok(r) = bfs_supported(f) else {
            failures += 1;
            continue;
        };
        let gi: Vec<usize> = r.g.iter().map(|x| f.index_of(x).unwrap()).collect();
        let sub = f.subfamily(&gi);
        let chi_g = g.chi(&g.set(gi.iter().copied()));
        let chi_f = g.chi(&g.all());
        let members: Vec<GroundedCurve> = sub.curves().to_vec();
        // some s ∈ F meets p and ext(G)
        let supported = gi.iter().all(|&p| {
            (0..f.len()).any(|s| {
                !gi.contains(&s)
                    && curves_intersect(f.curve(p), f.curve(s))
                    && exterior_membership(&members, Probe::Curve(f.curve(s))).unwrap_or(false)
            })
        });
        if 2 * chi_g < chi_f || !supported {
            failures += 1;
        }
    }
    outcome(failures == 0 && runs > 0, format!("{runs} families with ω ≥ 2, {failures} failures"))
}

fn bracket_crossing() -> Outcome {
    let instances = bracket_crossing_instances(500, 20_000);
    let mut failures = 0;
    for inst in &instances {
        let br = build_bracket(&inst.p, &inst.s, &inst.family).unwrap();
        let probe = inst.family.get(&inst.probe).unwrap();
        let meets_both =
            interior_classify(&br, probe) != Classification::Outside && br.exterior().meets_curve(probe).unwrap();
        if !meets_both || !verify_bracket_crossing(&br, probe, &inst.family).unwrap_or(false) {
            failures += 1;
        }
    }
    outcome(
        failures == 0 && instances.len() == 500,
        format!("{} instances, {failures} failures", instances.len()),
    )
}

fn signature_betweenness() -> Outcome {
    let triples = signature_triples(200, 30_000);
    let mut failures = 0;
    for t in &triples {
        let cs = validate_clique_system(&t.cliques, &t.family).unwrap();
        let [a, b, c] = &t.triple;
        if !check_signature_betweenness(&cs, a, b, c, &t.family).unwrap_or(false) {
            failures += 1;
        }
    }
    outcome(
        failures == 0 && triples.len() == 200,
        format!("{} triples, {failures} failures", triples.len()),
    )
}

fn figures() -> Outcome {
    let mut bad = Vec::new();
    let mut checked = 0;
    for which in 1..=4u8 {
        match figure_fixture(which).map_err(|e| e.to_string()).and_then(|(f, rel)| rel.check(&f)) {
            Ok(lines) => checked += lines.len(),
            Err(e) => bad.push(format!("figure {which}: {e}")),
        }
    }
    outcome(bad.is_empty(), format!("{checked} relations reproduced {}", bad.join("; ")).trim().to_string())
}

fn two_bracket_cliques() -> Outcome {
    let (mut built, mut failures) = (0, 0);
    for seed in 0..50u64 {
        let Ok(sys) = two_bracket_system(40_000 + seed) else {
            failures += 1;
            continue;
        };
        built += 1;
        let f = &sys.family;
        let bs: Vec<_> = sys.brackets.iter().map(|(p, s)| build_bracket(p, s, f).unwrap()).collect();
        let ok = match extract_clique(&bs, 1, f) {
            Ok(k) => {
                k.len() == 2 && !curve_intersections(f.get(&k[0]).unwrap(), f.get(&k[1]).unwrap()).is_empty()
            }
            Err(_) => false,
        };
        failures += usize::from(!ok);
    }
    outcome(failures == 0, format!("{built} systems, {failures} failures"))
}

/// Hand evaluation of `β₀ = 0`, `β_{i+1} = 2βᵢ + (2α + 6k)ξ + 2`, `γ = 2^{k+2}(β_{k+1} + 2ξ + 1)`.
fn f_hand(alpha: u128, k: u32, xi: u128) -> u128 {
    let mut beta = 0u128;
    for _ in 0..=k {
        beta = 2 * beta + (2 * alpha + 6 * k as u128) * xi + 2;
    }
    (1u128 << (k + 2)) * (beta + 2 * xi + 1)
}

fn bounds() -> Outcome {
    let one = BigUint::from(1u8);
    let zero = BigUint::from(0u8);
    let f0 = f_bound(&zero, 2, &one);
    // n = 0: m = 2, β = 0, g₂ = f(f(0)) + 1
    let g2 = g2_bound(&zero, 0, 2, &one);
    let hand_f0 = f_hand(0, 2, 1);
    let hand_g2 = f_hand(f_hand(0, 2, 1), 2, 1) + 1;
    let ok = hand_f0 == 1616
        && hand_g2 == 363_601
        && f0 == BigUint::from(hand_f0)
        && g2 == BigUint::from(hand_g2)
        && explicit_chi_bound(1) == one;
    outcome(ok, format!("f(0) = {f0}, g2(0,0) = {g2}, bound(1) = {}", explicit_chi_bound(1)))
}

fn cli_determinism() -> Outcome {
    let exe = env!("CARGO_BIN_EXE_outerstring");
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data");
    let dir = std::env::temp_dir().join(format!("outerstring-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let d = |n: &str| data.join(n).to_string_lossy().into_owned();
    let o = |n: &str| dir.join(n).to_string_lossy().into_owned();

    let runs: Vec<(Vec<String>, Option<PathBuf>)> = vec![
        (vec!["validate".into(), d("fig3.json")], None),
        (vec!["stats".into(), d("fig3.json")], None),
        (vec!["extract".into(), "mcguinness".into(), d("fig3.json")], None),
        (vec!["extract".into(), "bfs".into(), d("fig3.json")], None),
        (vec!["extract".into(), "bracket-system".into(), d("fig3.json"), "--k".into(), "3".into()], None),
        (
            vec!["extract".into(), "clique-system".into(), d("fig3.json"), "--t".into(), "3".into()],
            None,
        ),
        (vec!["skeleton".into(), d("fig3.json")], None),
        (vec!["bounds".into(), "--k".into(), "2".into()], None),
        (
            vec!["generate".into(), "--kind".into(), "polylines".into(), "--n".into(), "9".into(), "--seed".into(), "5".into(), "--out".into(), o("gen.json")],
            Some(dir.join("gen.json")),
        ),
        (
            vec!["render".into(), d("fig3.json"), "--out".into(), o("fig3.svg"), "--bracket".into(), d("fig3_bracket.json"), "--highlight".into(), "p1".into()],
            Some(dir.join("fig3.svg")),
        ),
    ];
    let mut differing = Vec::new();
    for (args, file) in &runs {
        let mut outputs = Vec::new();
        for _ in 0..2 {
            let out = Command::new(exe).args(args).env_remove("OUTERSTRING_SEED_OVERRIDE").output().unwrap();
            let written = file.as_ref().map(|p| std::fs::read(p).unwrap_or_default());
            outputs.push((out.status.code(), out.stdout, written));
        }
        if outputs[0] != outputs[1] || outputs[0].0 != Some(0) {
            differing.push(args[0].clone());
        }
    }
    let golden = std::fs::read(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/fig3.svg")).unwrap();
    let golden_ok = std::fs::read(dir.join("fig3.svg")).map(|b| b == golden).unwrap_or(false);
    if !golden_ok {
        differing.push("render golden".into());
    }
    outcome(
        differing.is_empty(),
        format!("{} invocations twice each, differing: {differing:?}", runs.len()),
    )
}

fn main() {
    let corpus = common::corpus(100, 12, 50_000);
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("exact solvers agree with brute force", Box::new(oracle_equivalence)),
        ("partition lemma postconditions", Box::new(|| mcguinness_suite(&corpus))),
        ("BFS layer is externally supported with half the chromatic number", Box::new(|| bfs_suite(&corpus))),
        ("bracket crossing", Box::new(bracket_crossing)),
        ("signature betweenness", Box::new(signature_betweenness)),
        ("figure relations", Box::new(figures)),
        ("two-bracket systems yield intersecting supports", Box::new(two_bracket_cliques)),
        ("bound recurrences", Box::new(bounds)),
        ("CLI determinism", Box::new(cli_determinism)),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let r = run();
        let verdict = if r.pass { "PASS" } else { "FAIL" };
        println!("criterion {}: {verdict}: {name}: {} [{:.1} s]", i + 1, r.detail, start.elapsed().as_secs_f64());
        failed += usize::from(!r.pass);
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
