//! The `verify` verb: worked-example reproduction and property suites over
//! the bundled fixtures.

use std::collections::HashSet;
use std::sync::Arc;

use orbifold_core::gentle::PathAlgebra;
use orbifold_core::invariants::{
    cc_function, cluster_module, e_inj, e_inj_ar, e_invariant, f_polynomial_by_recurrence, flip_along, g_vector,
    g_vector_from_copresentation, is_tau_rigid_pair, lf_f_polynomial, mutation_chain, verify_recurrences, FSource,
    OracleConfig,
};
use orbifold_core::io::{module_from_json, ModuleJson};
use orbifold_core::laurent::{var_names, LaurentPoly};
use orbifold_core::mutation::{check_involution, mutate_decorated};
use orbifold_core::orbifold::{GentleQuiver, Triangulation};
use orbifold_core::rep::{DecoratedRep, Rep};
use orbifold_core::seed::{
    exchange_graph_bfs, extract_f_polynomial, extract_g_vector, reconstruct, reduced_addresses, CoefficientMode,
    ExchangeMatrix, Pattern, Seed,
};
use orbifold_core::strings::replay_all;
use orbifold_core::{fixtures, Q};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use crate::{CliError, CliResult, Output};

struct Check {
    name: String,
    ok: bool,
    detail: String,
}

fn check(name: impl Into<String>, f: impl FnOnce() -> Result<String, String>) -> Check {
    let name = name.into();
    match f() {
        Ok(detail) => Check { name, ok: true, detail },
        Err(detail) => Check { name, ok: false, detail },
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

pub fn run(fixture: &str, depth: Option<usize>, seed: u64) -> CliResult<Output> {
    let mut checks = Vec::new();
    let c2 = || fixtures::c2tilde_triangulations()[0].clone();
    let hex = fixtures::hexagon_two_orbifold_points;
    match fixture {
        "c2tilde" => {
            checks.extend(worked_example());
            checks.extend(property_suites("c2tilde", &c2(), 4, depth.unwrap_or(5), seed));
            checks.push(tables());
            checks.push(rank_two());
        }
        "hexagon" => checks.extend(property_suites("hexagon", &hex(), 3, depth.unwrap_or(5), seed)),
        "disk-m3" | "disk-m4" | "disk-m5" => {
            let m: usize = fixture[6..].parse().expect("matched above");
            let t = fixtures::disk_one_orbifold_point(m);
            checks.push(disk_closure(m));
            checks.extend(property_suites(fixture, &t, 3, depth.unwrap_or(4), seed));
        }
        "all" => {
            checks.extend(worked_example());
            checks.extend(property_suites("c2tilde", &c2(), 4, depth.unwrap_or(5), seed));
            checks.extend(property_suites("hexagon", &hex(), 3, depth.unwrap_or(5), seed));
            for m in 3..=5 {
                checks.push(disk_closure(m));
                let t = fixtures::disk_one_orbifold_point(m);
                checks.extend(property_suites(&format!("disk-m{m}"), &t, 3, depth.unwrap_or(4), seed));
            }
            checks.push(tables());
            checks.push(rank_two());
        }
        other => {
            return Err(CliError::Invalid(format!(
                "unknown fixture `{other}` (known: c2tilde, hexagon, disk-m3, disk-m4, disk-m5, all)"
            )))
        }
    }
    let lines = checks
        .iter()
        .map(|c| format!("{} {} — {}", if c.ok { "PASS" } else { "FAIL" }, c.name, c.detail))
        .collect();
    let failed = checks.iter().filter(|c| !c.ok).count();
    let json = json!(checks.iter().map(|c| json!({"check": c.name, "ok": c.ok, "detail": c.detail})).collect::<Vec<_>>());
    Ok(Output {
        json,
        summary: format!("{} of {} checks pass", checks.len() - failed, checks.len()),
        lines,
        failure: (failed > 0).then(|| format!("{failed} checks failed")),
    })
}

// ---------------------------------------------------------------------------
// Worked example on the C̃2 orbifold.

const GOLDEN_B: [[[i64; 3]; 3]; 5] = [
    [[0, -1, 0], [2, 0, -2], [0, 1, 0]],
    [[0, 1, 0], [-2, 0, -2], [0, 1, 0]],
    [[0, 1, 0], [-2, 0, 2], [0, -1, 0]],
    [[0, -1, 2], [2, 0, -2], [-2, 1, 0]],
    [[0, 1, -2], [-2, 0, 2], [2, -1, 0]],
];

/// (name, g, F, CC) for `M_{3;0}`, `N`, `M_{1;0}`, `M_{2;0}`.
const GOLDEN: [(&str, [i64; 3], &str, &str); 4] = [
    (
        "M_{3;0}",
        [0, 0, -1],
        "1 + y3 + 2*y2*y3 + 2*y1*y2*y3 + y2^2*y3 + 2*y1*y2^2*y3 + y1^2*y2^2*y3",
        "x3^-1 + x2^-2*x3^-1 + 2*x1^-1*x2^-2 + 2*x1^-1 + x1^-2*x2^-2*x3 + 2*x1^-2*x3 + x1^-2*x2^2*x3",
    ),
    ("N", [0, 2, -1], "1 + y3", "x2^2*x3^-1 + x3^-1"),
    ("M_{1;0}", [-1, 0, 0], "1 + y1", "x1^-1 + x1^-1*x2^2"),
    ("M_{2;0}", [0, 1, -1], "1 + y3 + y2*y3 + y1*y2*y3", "x2*x3^-1 + x2^-1*x3^-1 + x1^-1*x2^-1 + x1^-1*x2"),
];

fn module(q: &Arc<GentleQuiver>, v: serde_json::Value) -> Result<DecoratedRep<Q>, String> {
    let j: ModuleJson = serde_json::from_value(v).map_err(err)?;
    module_from_json(&j, q.clone()).map_err(err)
}

/// The E-rigid modules `M_{ℓ;j}` over `Q(T_j)`, ℓ = 1, 2, 3.
fn table_row(j: usize, q: &Arc<GentleQuiver>) -> Result<Vec<DecoratedRep<Q>>, String> {
    let neg = |id: &str| q.vertex_index(id).map(|i| DecoratedRep::negative_simple(q.clone(), i)).ok_or("vertex");
    let eps = json!([[0, 1], [0, 0]]);
    let free3 = json!({"id": "3", "dim": 2, "eps": eps});
    Ok(match j {
        0 => vec![
            module(q, json!({"vertices": [{"id": "1", "dim": 2, "eps": eps}]}))?,
            module(
                q,
                json!({
                    "vertices": [{"id": "1", "dim": 2, "eps": eps}, {"id": "2", "dim": 1}, free3],
                    "arrows": [{"label": "1>2", "matrix": [[1, 0]]}, {"label": "2>3", "matrix": [[0], [1]]}]
                }),
            )?,
            module(
                q,
                json!({
                    "vertices": [
                        {"id": "1", "dim": 4, "eps": [[0, 0, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 0, 0]]},
                        {"id": "2", "dim": 2},
                        free3
                    ],
                    "arrows": [
                        {"label": "1>2", "matrix": [[0, 1, 0, 0], [0, 0, 1, 0]]},
                        {"label": "2>3", "matrix": [[1, 0], [0, 1]]}
                    ]
                }),
            )?,
        ],
        1 => vec![
            neg("1")?,
            module(q, json!({"vertices": [{"id": "2", "dim": 1}, free3], "arrows": [{"label": "2>3", "matrix": [[0], [1]]}]}))?,
            module(
                q,
                json!({"vertices": [{"id": "2", "dim": 2}, free3], "arrows": [{"label": "2>3", "matrix": [[1, 0], [0, 1]]}]}),
            )?,
        ],
        2 => vec![
            neg("1")?,
            module(q, json!({"vertices": [{"id": "2", "dim": 1}]}))?,
            module(
                q,
                json!({"vertices": [{"id": "2", "dim": 2}, free3], "arrows": [{"label": "3>2", "matrix": [[1, 0], [0, 1]]}]}),
            )?,
        ],
        3 => vec![neg("1")?, neg("2")?, module(q, json!({"vertices": [free3]}))?],
        _ => vec![neg("1")?, neg("2")?, neg("3")?],
    })
}

fn worked_example() -> Vec<Check> {
    let ts = fixtures::c2tilde_triangulations();
    let t0 = ts[0].clone();
    let addr = fixtures::C2TILDE_ADDRESS;
    let mut out = Vec::new();
    out.push(check("c2tilde: exchange matrices B(T0)..B(T4)", || {
        let mut t = t0.clone();
        for (j, want) in GOLDEN_B.iter().enumerate() {
            if j > 0 {
                t = t.flip(addr[j - 1]).map_err(err)?;
            }
            ensure(t.same_triangles(&ts[j]), || format!("flip chain leaves T{j}"))?;
            let b = t.b_matrix().map_err(err)?;
            let want: Vec<Vec<i64>> = want.iter().map(|r| r.to_vec()).collect();
            ensure(b.b == want, || format!("B(T{j}) = {:?}", b.b))?;
        }
        Ok("5 matrices".into())
    }));
    out.push(check("c2tilde: table of E-rigid modules", || {
        for l in 0..3 {
            let chain = mutation_chain(&ts[4], l, &[2, 1, 2, 0]).map_err(err)?;
            for (i, step) in chain.iter().enumerate() {
                let j = 4 - i;
                let want = &table_row(j, &step.rep.module.quiver)?[l];
                ensure(step.rep.is_isomorphic(want), || format!("M_{{{};{j}}} differs", l + 1))?;
            }
        }
        Ok("15 modules".into())
    }));
    out.push(check("c2tilde: g, F, CC and the exchange relation", || {
        let q0 = Arc::new(t0.quiver().map_err(err)?);
        let m: Vec<DecoratedRep<Q>> =
            (0..3).map(|l| cluster_module(&t0, l, &addr)).collect::<Result<_, _>>().map_err(err)?;
        let n = DecoratedRep::plain(Rep::local_free(q0, 2));
        ensure(n.is_isomorphic(&cluster_module(&t0, 2, &addr[..3]).map_err(err)?), || "N".into())?;
        let mods = [&m[2], &n, &m[0], &m[1]];
        let cfg = OracleConfig::default();
        let (yv, xv) = (var_names("y", 3), var_names("x", 3));
        let mut cc = Vec::new();
        for (mm, (name, g, f, c)) in mods.iter().zip(GOLDEN) {
            let g1 = g_vector(mm).map_err(err)?;
            let g2 = g_vector_from_copresentation(mm).map_err(err)?;
            ensure(g1 == g && g2 == g, || format!("g({name}) = {g1:?} / {g2:?}"))?;
            let fo = lf_f_polynomial(&mm.module, &cfg).map_err(err)?;
            ensure(fo == LaurentPoly::parse(f, &yv).map_err(err)?, || format!("F({name}) = {fo}"))?;
            let cv = cc_function(&t0, mm, &fo).map_err(err)?;
            ensure(cv == LaurentPoly::parse(c, &xv).map_err(err)?, || format!("CC({name}) = {cv}"))?;
            cc.push(cv);
        }
        let t4 = flip_along(&t0, &addr).map_err(err)?;
        for (l, (name, _, f, _)) in [(2, GOLDEN[0]), (0, GOLDEN[2]), (1, GOLDEN[3])] {
            let fr = f_polynomial_by_recurrence(&t4, l, &[2, 1, 2, 0]).map_err(err)?;
            ensure(fr == LaurentPoly::parse(f, &yv).map_err(err)?, || format!("recurrence F({name}) = {fr}"))?;
        }
        let lhs = cc[0].try_mul(&cc[1]).map_err(err)?;
        let rhs = cc[2].pow(2).try_add(&cc[3].pow(2)).map_err(err)?;
        ensure(lhs == rhs, || format!("{lhs} ≠ {rhs}"))?;
        Ok("4 modules".into())
    }));
    out
}

// ---------------------------------------------------------------------------
// Property suites.

struct Reached {
    t: Triangulation,
    rep: DecoratedRep<Q>,
    l: usize,
    seq: Vec<usize>,
}

fn corpus(start: &Triangulation, depth: usize) -> Result<Vec<Reached>, String> {
    let q = Arc::new(start.quiver().map_err(err)?);
    let mut items = Vec::new();
    let mut seen = HashSet::new();
    let mut frontier: Vec<Reached> = (0..start.n())
        .map(|l| Reached { t: start.clone(), rep: DecoratedRep::negative_simple(q.clone(), l), l, seq: vec![] })
        .collect();
    for _ in 0..=depth {
        let mut next = Vec::new();
        for r in frontier {
            if !seen.insert((format!("{:?}", r.t.normalized().triangles), g_vector(&r.rep).map_err(err)?)) {
                continue;
            }
            for k in (0..r.t.n()).filter(|&k| r.seq.last() != Some(&k)) {
                let (t, rep) = mutate_decorated(&r.t, &r.rep, k).map_err(err)?;
                let mut seq = r.seq.clone();
                seq.push(k);
                next.push(Reached { t, rep, l: r.l, seq });
            }
            items.push(r);
        }
        frontier = next;
    }
    Ok(items)
}

fn property_suites(name: &str, t0: &Triangulation, pattern_depth: usize, depth: usize, seed: u64) -> Vec<Check> {
    let mut out = vec![pattern_vs_modules(name, t0, pattern_depth), e_inj_pairs(name, t0, pattern_depth, seed)];
    let items = match corpus(t0, depth) {
        Ok(c) => c,
        Err(e) => {
            out.push(Check { name: format!("{name}: corpus"), ok: false, detail: e });
            return out;
        }
    };
    out.push(check(format!("{name}: oracle = recurrence"), || {
        let picked: Vec<&Reached> = items.iter().filter(|r| (1..=8).contains(&r.rep.module.total_dim())).take(20).collect();
        let cfg = OracleConfig::default();
        picked.par_iter().try_for_each(|r| {
            let a = lf_f_polynomial(&r.rep.module, &cfg).map_err(err)?;
            let b = f_polynomial_by_recurrence(t0, r.l, &r.seq).map_err(err)?;
            ensure(a == b, || format!("ℓ = {}, {:?}: {a} vs {b}", r.l + 1, r.seq))
        })?;
        Ok(format!("{} modules", picked.len()))
    }));
    out.push(check(format!("{name}: mutation is an involution"), || {
        items.par_iter().try_for_each(|r| {
            (0..r.t.n()).try_for_each(|k| {
                let rep = check_involution(&r.t, &r.rep, k).map_err(err)?;
                ensure(rep.holds() && rep.free_case, || format!("{:?} at {}: {rep:?}", r.seq, k + 1))
            })
        })?;
        Ok(format!("{} reps, depth {depth}", items.len()))
    }));
    out.push(check(format!("{name}: E = 0 and the recurrences across every mutation"), || {
        items.par_iter().try_for_each(|r| {
            let e = e_invariant(&r.rep).map_err(err)?;
            ensure(e == 0, || format!("E = {e} at {:?}", r.seq))?;
            (0..r.t.n()).try_for_each(|k| {
                let rep = verify_recurrences(&r.t, &r.rep, k, &FSource::None).map_err(err)?;
                ensure(rep.all_hold(), || format!("{:?} at {}: {:?}", r.seq, k + 1, rep.failures()))
            })
        })?;
        Ok(format!("{} reps", items.len()))
    }));
    out.push(check(format!("{name}: reached modules are τ-rigid"), || {
        items.par_iter().try_for_each(|r| {
            let alg = PathAlgebra::build(r.rep.module.quiver.clone()).map_err(err)?;
            ensure(is_tau_rigid_pair(&alg, &r.rep).map_err(err)?, || format!("{:?}", r.seq))
        })?;
        Ok(format!("{} reps", items.len()))
    }));
    out
}

fn pattern_vs_modules(name: &str, t0: &Triangulation, depth: usize) -> Check {
    check(format!("{name}: pattern (g, F) = module (g, F), addresses ≤ {depth}"), || {
        let b0 = t0.b_matrix().map_err(err)?;
        let mut pattern = Pattern::new(Seed::initial(b0, CoefficientMode::Principal));
        let mut jobs = Vec::new();
        for a in reduced_addresses(t0.n(), depth) {
            for (l, gf) in pattern.g_and_f(&a).map_err(err)?.into_iter().enumerate() {
                jobs.push((a.clone(), l, gf));
            }
        }
        let cfg = OracleConfig::default();
        jobs.par_iter().try_for_each(|(a, l, (g, f))| {
            let m = cluster_module(t0, *l, a).map_err(err)?;
            ensure(&g_vector(&m).map_err(err)? == g, || format!("g at {a:?}, ℓ = {}", l + 1))?;
            let fm = if m.module.total_dim() <= cfg.max_dim {
                lf_f_polynomial(&m.module, &cfg).map_err(err)?
            } else {
                let rev: Vec<usize> = a.iter().rev().copied().collect();
                f_polynomial_by_recurrence(&flip_along(t0, a).map_err(err)?, *l, &rev).map_err(err)?
            };
            ensure(&fm == f, || format!("F at {a:?}, ℓ = {}: {fm} vs {f}", l + 1))
        })?;
        Ok(format!("{} cluster variables", jobs.len()))
    })
}

fn e_inj_pairs(name: &str, t0: &Triangulation, depth: usize, seed: u64) -> Check {
    check(format!("{name}: E^inj by definition = by the AR formula"), || {
        let mut pool = Vec::new();
        let mut seen = HashSet::new();
        for a in reduced_addresses(t0.n(), depth) {
            for l in 0..t0.n() {
                let m = cluster_module(t0, l, &a).map_err(err)?;
                if !m.module.is_zero() && seen.insert(g_vector(&m).map_err(err)?) {
                    pool.push(m);
                }
            }
        }
        let alg = PathAlgebra::build(Arc::new(t0.quiver().map_err(err)?)).map_err(err)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut nonzero = 0;
        for _ in 0..100 {
            let m = &pool[rng.gen_range(0..pool.len())];
            let n = &pool[rng.gen_range(0..pool.len())];
            let a = e_inj(m, n).map_err(err)?;
            let b = e_inj_ar(&alg, m, n).map_err(err)?;
            ensure(a == b, || format!("{a} vs {b}"))?;
            nonzero += usize::from(a != 0);
        }
        Ok(format!("100 pairs, {nonzero} with E^inj ≠ 0"))
    })
}

fn tables() -> Check {
    check("string and band mutation tables", || {
        let runs = replay_all();
        for (id, r) in &runs {
            r.as_ref().map_err(|e| format!("{id}: {e}"))?;
        }
        Ok(format!("{} replays", runs.len()))
    })
}

fn rank_two() -> Check {
    check("rank-2 closures A2 and C2", || {
        for (b, want) in [(vec![vec![0, 1], vec![-1, 0]], 5), (vec![vec![0, 1], vec![-2, 0]], 6)] {
            let m = ExchangeMatrix::from_b(b).map_err(err)?;
            let g = exchange_graph_bfs(&Seed::initial(m, CoefficientMode::CoefficientFree), 10).map_err(err)?;
            ensure(g.closed && g.nodes.len() == want, || format!("{} seeds, expected {want}", g.nodes.len()))?;
        }
        Ok("5 and 6 seeds".into())
    })
}

fn disk_closure(marked: usize) -> Check {
    check(format!("disk-m{marked}: finite exchange graph with Laurent cluster variables"), || {
        let t = fixtures::disk_one_orbifold_point(marked);
        let b0 = t.b_matrix().map_err(err)?;
        let n = b0.n();
        let g = exchange_graph_bfs(&Seed::initial(b0.clone(), CoefficientMode::Principal), 4 * n * n).map_err(err)?;
        ensure(g.closed && g.collisions.is_empty(), || "not closed".into())?;
        let mut vars = HashSet::new();
        for x in g.nodes.iter().flat_map(|s| &s.cluster) {
            if vars.insert(x.clone()) {
                let gv = extract_g_vector(x, &b0).map_err(err)?;
                let f = extract_f_polynomial(x, n).map_err(err)?;
                ensure(f.is_polynomial() && f.coeff(&vec![0; n]) == 1.into(), || format!("F = {f}"))?;
                let back = reconstruct(&gv, &f, &b0, CoefficientMode::Principal).map_err(err)?;
                ensure(&back == x, || format!("{x} is not x^g F(ŷ)"))?;
            }
        }
        Ok(format!("{} seeds, {} cluster variables", g.nodes.len(), vars.len()))
    })
}
