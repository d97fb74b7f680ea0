//! The acceptance run: eight criteria, one line each on stderr, then a single
//! assertion that all of them passed.

use std::io::Write;
use std::time::Instant;

use rainbow_forest::coloring::Construction;
use rainbow_forest::construct::{build, Method, Options};
use rainbow_forest::contraction::contract;
use rainbow_forest::forest::{
    forest_number_via_fvs, max_induced_forest, max_induced_forest_min_components, max_induced_tree_size,
    min_feedback_vertex_set_size,
};
use rainbow_forest::generators::{
    complete, erdos_renyi_connected, k_with_pendants, path, planted_forest, random_connected, random_tree, star,
};
use rainbow_forest::harness::random_corpus;
use rainbow_forest::skeleton::{build_skeleton_take3, exhaustive_best_skeleton};
use rainbow_forest::verify::{check_witness, rc_exact, rc_unpruned, verify_rainbow};
use rainbow_forest::Graph;

const CORPUS_SIZE: usize = 220;
const CORPUS_SEED: u64 = 20_240_601;

struct Instance {
    name: String,
    g: Graph,
    f: usize,
}

fn corpus() -> Vec<Instance> {
    random_corpus(CORPUS_SIZE, CORPUS_SEED)
        .into_iter()
        .map(|e| {
            let g = e.family.generate(e.seed).unwrap();
            assert!(g.n() <= 14 && g.is_connected());
            let f = max_induced_forest(&g).unwrap().f_value();
            Instance { name: format!("{}#{}", e.family.name(), e.seed), g, f }
        })
        .collect()
}

fn rainbow(g: &Graph, m: Method) -> Result<(usize, Construction), String> {
    let out = build(g, &Options::new(m)).map_err(|e| e.to_string())?;
    let c = out.coloring();
    let r = verify_rainbow(g, &c.colors, Some(c.palette), false).map_err(|e| e.to_string())?;
    if !r.rainbow_connected {
        return Err(format!("not rainbow, pair {:?}", r.failing_pair));
    }
    Ok((c.colors_used().max(c.max_color() as usize), out.construction()))
}

/// Collects failures; an empty list means the criterion passed.
type Check = Vec<String>;

fn bound_compliance(corpus: &[Instance]) -> Check {
    let mut bad = Vec::new();
    for inst in corpus {
        match rainbow(&inst.g, Method::Take3) {
            Ok((k, _)) if k <= inst.f + 2 => {}
            Ok((k, _)) => bad.push(format!("{}: take3 used {k} > f+2 = {}", inst.name, inst.f + 2)),
            Err(e) => bad.push(format!("{}: {e}", inst.name)),
        }
    }
    bad
}

fn intermediate_bounds(corpus: &[Instance]) -> Check {
    let mut bad = Vec::new();
    for inst in corpus {
        for (m, bound) in [(Method::Take1, 3 * inst.f - 1), (Method::Take2, 2 * inst.f + 2)] {
            match rainbow(&inst.g, m) {
                Ok((k, _)) if k <= bound => {}
                Ok((k, _)) => bad.push(format!("{}: {m:?} used {k} > {bound}", inst.name)),
                Err(e) => bad.push(format!("{}: {m:?} {e}", inst.name)),
            }
        }
    }
    bad
}

fn extremal_fixtures() -> Check {
    let mut bad = Vec::new();
    for n in 3..=6 {
        let rc = rc_exact(&complete(n).unwrap()).unwrap().0;
        if rc != 1 {
            bad.push(format!("rc(K{n}) = {rc}"));
        }
    }
    let mut trees: Vec<(String, Graph)> = Vec::new();
    for n in 2..=11 {
        trees.push((format!("path {n}"), path(n).unwrap()));
        trees.push((format!("star {n}"), star(n - 1).unwrap()));
        for seed in 0..4 {
            trees.push((format!("tree {n}#{seed}"), random_tree(n, seed).unwrap()));
        }
    }
    for (name, t) in &trees {
        if t.n() <= 10 {
            match rainbow(t, Method::Take3) {
                Ok((k, _)) if k == t.n() - 1 => {}
                Ok((k, _)) => bad.push(format!("{name}: take3 used {k}, want {}", t.n() - 1)),
                Err(e) => bad.push(format!("{name}: {e}")),
            }
        }
        let rc = rc_exact(t).unwrap().0;
        if rc != t.m() {
            bad.push(format!("{name}: rc = {rc}, want m = {}", t.m()));
        }
    }
    bad
}

fn pendant_family() -> Check {
    let mut bad = Vec::new();
    for k in 3..=6 {
        let g = k_with_pendants(k).unwrap();
        let tree = max_induced_tree_size(&g).unwrap();
        if tree != 4 {
            bad.push(format!("k = {k}: largest induced tree {tree}, want 4"));
        }
        if k <= 4 {
            let rc = rc_exact(&g).unwrap().0;
            if rc != k {
                bad.push(format!("k = {k}: rc = {rc}, want {k}"));
            }
        } else {
            let diam = g.diameter().unwrap();
            let f = max_induced_forest(&g).unwrap().f_value();
            match rainbow(&g, Method::Take3) {
                Ok((c, _)) if diam == 3 && diam <= c && c <= f + 2 => {}
                other => bad.push(format!("k = {k}: diameter {diam}, take3 {other:?}, f+2 = {}", f + 2)),
            }
        }
    }
    bad
}

fn skeleton_optimality() -> (Check, usize) {
    let mut bad = Vec::new();
    let mut compared = 0;
    for seed in 0..400u64 {
        let g = match seed % 3 {
            0 => planted_forest(3 + (seed % 4) as usize, 3, 3, 0.05, seed).unwrap(),
            1 => erdos_renyi_connected(8 + (seed % 7) as usize, 0.2, seed).unwrap(),
            _ => random_connected(8 + (seed % 6) as usize, 3 + (seed % 5) as usize, seed).unwrap(),
        };
        if g.n() > 18 {
            continue;
        }
        let cg = contract(&g, &max_induced_forest_min_components(&g).unwrap()).unwrap();
        let local = build_skeleton_take3(&cg).unwrap();
        if let Err(e) = local.check_invariants(&cg) {
            bad.push(format!("seed {seed}: {e}"));
        }
        if cg.num_vertices() >= 3 && cg.num_vertices() <= 9 && compared < 80 {
            compared += 1;
            let best = exhaustive_best_skeleton(&cg).unwrap();
            if best.two_edge_count() != local.two_edge_count() {
                bad.push(format!(
                    "seed {seed}: local |E2| {} vs exhaustive {}",
                    local.two_edge_count(),
                    best.two_edge_count()
                ));
            }
        }
    }
    if compared < 50 {
        bad.push(format!("only {compared} contracted graphs small enough to compare"));
    }
    (bad, compared)
}

fn invariant_suite(corpus: &[Instance]) -> (Check, usize) {
    let mut bad = Vec::new();
    let mut pairs = 0;
    for inst in corpus {
        let out = match build(&inst.g, &Options::new(Method::Take3)) {
            Ok(o) => o,
            Err(e) => {
                bad.push(format!("{}: {e}", inst.name));
                continue;
            }
        };
        if let Some(why) = &out.fallback {
            bad.push(format!("{}: fell back ({why})", inst.name));
            continue;
        }
        let t3 = out.take3().expect("take3 kept");
        let colors = &t3.coloring.colors;
        let mut wrong = 0;
        match t3.check_all_pairs(|a, b, p| {
            if !check_witness(&inst.g, colors, a, b, p) {
                wrong += 1;
            }
        }) {
            Ok(k) => pairs += k,
            Err(e) => bad.push(format!("{}: {e}", inst.name)),
        }
        if wrong > 0 {
            bad.push(format!("{}: {wrong} witnesses fail independent checking", inst.name));
        }
    }
    (bad, pairs)
}

fn oracle_agreement(corpus: &[Instance]) -> (Check, usize) {
    let mut bad = Vec::new();
    for inst in corpus {
        let via_fvs = forest_number_via_fvs(&inst.g).unwrap();
        if via_fvs != inst.f {
            bad.push(format!("{}: n - fvs = {via_fvs}, f = {}", inst.name, inst.f));
        }
    }
    let mut small = 0;
    for seed in 0..200u64 {
        let n = 3 + (seed % 5) as usize;
        let chords = (n * (n - 1) / 2 - (n - 1)).min(9 - n);
        let extra = (seed as usize / 5) % (chords + 1);
        let g = random_connected(n, extra, seed).unwrap();
        if g.m() > 8 {
            continue;
        }
        small += 1;
        let pruned = rc_exact(&g).unwrap().0;
        let plain = rc_unpruned(&g).unwrap();
        if pruned != plain {
            bad.push(format!("seed {seed}: pruned {pruned}, unpruned {plain}"));
        }
        if small >= 60 {
            break;
        }
    }
    if small < 30 {
        bad.push(format!("only {small} graphs with m <= 8"));
    }
    (bad, small)
}

fn forest_number_identity(corpus: &[Instance]) -> Check {
    corpus
        .iter()
        .filter_map(|inst| {
            let fvs = min_feedback_vertex_set_size(&inst.g).unwrap();
            (inst.g.n() - fvs + 2 != inst.f + 2).then(|| format!("{}: n - fvs + 2 = {}", inst.name, inst.g.n() - fvs + 2))
        })
        .collect()
}

fn report(line: &mut Vec<(bool, String)>, id: usize, name: &str, detail: String, bad: Check, started: Instant) {
    let ok = bad.is_empty();
    let mut text = format!(
        "criterion {id} {:<26} {}  {detail} ({:.1}s)",
        name,
        if ok { "PASS" } else { "FAIL" },
        started.elapsed().as_secs_f64()
    );
    for b in bad.iter().take(5) {
        text.push_str(&format!("\n    {b}"));
    }
    if bad.len() > 5 {
        text.push_str(&format!("\n    ... {} more", bad.len() - 5));
    }
    // straight to the handle so the lines show even when the test passes
    #[allow(clippy::explicit_write)]
    writeln!(std::io::stderr(), "{text}").unwrap();
    line.push((ok, text));
}

#[test]
fn acceptance_criteria() {
    let corpus = corpus();
    let n = corpus.len();
    let mut lines = Vec::new();

    let t = Instant::now();
    report(&mut lines, 1, "take3 within f+2", format!("{n} graphs"), bound_compliance(&corpus), t);
    let t = Instant::now();
    report(&mut lines, 2, "take1/take2 bounds", format!("{n} graphs"), intermediate_bounds(&corpus), t);
    let t = Instant::now();
    report(&mut lines, 3, "complete graphs and trees", "K3..K6, trees n<=11".into(), extremal_fixtures(), t);
    let t = Instant::now();
    report(&mut lines, 4, "cliques with pendants", "k = 3..6".into(), pendant_family(), t);
    let t = Instant::now();
    let (bad, compared) = skeleton_optimality();
    report(&mut lines, 5, "skeleton optimality", format!("{compared} compared"), bad, t);
    let t = Instant::now();
    let (bad, pairs) = invariant_suite(&corpus);
    report(&mut lines, 6, "witness invariants", format!("{pairs} pairs"), bad, t);
    let t = Instant::now();
    let (bad, small) = oracle_agreement(&corpus);
    report(&mut lines, 7, "oracle agreement", format!("{n} fvs, {small} rc"), bad, t);
    let t = Instant::now();
    report(&mut lines, 8, "n - fvs + 2 = f + 2", format!("{n} graphs"), forest_number_identity(&corpus), t);

    let failed: Vec<&String> = lines.iter().filter(|(ok, _)| !ok).map(|(_, l)| l).collect();
    assert!(failed.is_empty(), "{} criteria failed:\n{}", failed.len(), failed.iter().map(|s| s.as_str()).collect::<Vec<_>>().join("\n"));
}
