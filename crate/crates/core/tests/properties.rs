use std::collections::BTreeSet;

use proptest::prelude::*;

use rainbow_forest::construct::{build, Method, Options};
use rainbow_forest::contraction::{contract, EdgeKind};
use rainbow_forest::forest::{
    forest_number_via_fvs, heuristic_induced_forest, is_induced_forest, max_induced_forest,
    max_induced_forest_min_components,
};
use rainbow_forest::generators::{clique_with_pendants, cycle, erdos_renyi_connected, path, random_tree};
use rainbow_forest::graph::{path_avoiding_edge, tree_path, RootedTree};
use rainbow_forest::io::{parse_edge_list, parse_json, to_edge_list, to_json};
use rainbow_forest::skeleton::{build_skeleton_take2, build_skeleton_take3};
use rainbow_forest::verify::{check_witness, verify_rainbow};
use rainbow_forest::Graph;

fn connected_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n, 0.1f64..0.7, any::<u64>()).prop_map(|(n, p, seed)| erdos_renyi_connected(n, p, seed).unwrap())
}

fn tree(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n, any::<u64>()).prop_map(|(n, seed)| random_tree(n, seed).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn path_avoiding_edge_avoids_it(g in tree(12), picks in any::<[usize; 4]>()) {
        let n = g.n();
        let all: Vec<usize> = (0..n).collect();
        let (v1, v2, v3) = (picks[0] % n, picks[1] % n, picks[2] % n);
        prop_assume!(v2 != v3);
        let p23 = tree_path(&g, &all, v2, v3).unwrap();
        let e = p23.edges[picks[3] % p23.edges.len()];
        let p = path_avoiding_edge(&g, &all, v1, v2, v3, e).unwrap();
        prop_assert!(!p.contains_edge(e));
        prop_assert_eq!(p.vertices[0], v1);
        let end = *p.vertices.last().unwrap();
        prop_assert!(end == v2 || end == v3);
        prop_assert_eq!(p, tree_path(&g, &all, v1, end).unwrap());
    }

    #[test]
    fn tree_paths_reverse(g in tree(12), u in any::<usize>(), v in any::<usize>()) {
        let all: Vec<usize> = (0..g.n()).collect();
        let t = RootedTree::new(&g, &all).unwrap();
        let (u, v) = (u % g.n(), v % g.n());
        let p = t.path(u, v).unwrap();
        prop_assert_eq!(p.reversed(), t.path(v, u).unwrap());
        prop_assert_eq!(p.len(), t.distance(u, v).unwrap());
        for (i, &e) in p.edges.iter().enumerate() {
            let (a, b) = g.edge(e);
            let (x, y) = (p.vertices[i], p.vertices[i + 1]);
            prop_assert!((a, b) == (x.min(y), x.max(y)));
        }
        prop_assert_eq!(p.vertices.iter().collect::<BTreeSet<_>>().len(), p.vertices.len());
    }

    #[test]
    fn diameter_is_at_most_n_minus_one(g in connected_graph(14)) {
        prop_assert!(g.diameter().unwrap() < g.n());
    }

    #[test]
    fn exact_forest_is_maximum_and_agrees_with_fvs(g in connected_graph(12)) {
        let fo = max_induced_forest(&g).unwrap();
        prop_assert!(is_induced_forest(&g, &fo.vertices));
        prop_assert!(fo.is_maximal(&g));
        prop_assert_eq!(fo.f_value(), forest_number_via_fvs(&g).unwrap());
        for comp in &fo.components {
            prop_assert!(RootedTree::new(&g, comp).is_ok());
        }
        // every vertex outside a maximum forest sends two edges into one tree
        let idx = fo.tree_index(g.n());
        for v in (0..g.n()).filter(|&v| idx[v].is_none()) {
            let mut per_tree = vec![0; fo.t()];
            for w in g.neighbors(v) {
                if let Some(i) = idx[w] {
                    per_tree[i] += 1;
                }
            }
            prop_assert!(per_tree.iter().any(|&c| c >= 2), "vertex {} has no tree with two neighbors", v);
        }
        let fewest = max_induced_forest_min_components(&g).unwrap();
        prop_assert_eq!(fewest.f_value(), fo.f_value());
        prop_assert!(fewest.t() <= fo.t());
    }

    #[test]
    fn heuristic_forest_is_maximal(g in connected_graph(30)) {
        let fo = heuristic_induced_forest(&g);
        prop_assert!(is_induced_forest(&g, &fo.vertices));
        prop_assert!(fo.is_maximal(&g));
    }

    #[test]
    fn contraction_counts_edges(g in connected_graph(14)) {
        let fo = max_induced_forest_min_components(&g).unwrap();
        let cg = contract(&g, &fo).unwrap();
        let idx = fo.tree_index(g.n());
        let s_edges = g.edges().iter().filter(|&&(u, v)| idx[u].is_none() && idx[v].is_none()).count();
        let mut pairs = BTreeSet::new();
        let mut multiplicity = std::collections::BTreeMap::new();
        for &(u, v) in g.edges() {
            match (idx[u], idx[v]) {
                (Some(i), None) | (None, Some(i)) => {
                    let s = if idx[u].is_none() { u } else { v };
                    pairs.insert((s, i));
                    *multiplicity.entry((s, i)).or_insert(0) += 1;
                }
                _ => {}
            }
        }
        prop_assert_eq!(cg.edges().len(), s_edges + pairs.len());
        prop_assert_eq!(cg.num_trees(), fo.t());
        for h in cg.edges() {
            let mut sorted = h.members.clone();
            sorted.sort();
            prop_assert_eq!(&sorted, &h.members);
            if cg.is_tree_vertex(h.a) {
                let s = cg.g_vertex(h.b).unwrap();
                let want = if multiplicity[&(s, h.a)] >= 2 { EdgeKind::Two } else { EdgeKind::One };
                prop_assert_eq!(h.kind, want);
                prop_assert_eq!(h.members.len(), multiplicity[&(s, h.a)]);
            } else {
                prop_assert_eq!(h.kind, EdgeKind::One);
            }
        }
        for e in 0..g.m() {
            let (u, v) = g.edge(e);
            if idx[u].is_some() && idx[u] == idx[v] {
                prop_assert!(cg.h_edge(e).is_err());
            } else {
                let h = cg.edge(cg.h_edge(e).unwrap());
                let ends = [cg.h(u), cg.h(v)];
                prop_assert!(ends.contains(&h.a) && ends.contains(&h.b));
            }
        }
    }

    #[test]
    fn skeletons_span_h_and_keep_their_shape(g in connected_graph(14)) {
        let fo = max_induced_forest_min_components(&g).unwrap();
        let cg = contract(&g, &fo).unwrap();
        let local = build_skeleton_take3(&cg).unwrap();
        prop_assert!(local.check_invariants(&cg).is_ok());
        let kruskal = build_skeleton_take2(&cg).unwrap();
        for sk in [&local, &kruskal] {
            prop_assert_eq!(sk.edges().len(), cg.num_vertices() - 1);
            prop_assert!(cg.is_tree_vertex(sk.root()));
            prop_assert_eq!(sk.config_vector()[0], sk.two_edge_count());
        }
        // local search starts from the Kruskal tree and never loses 2-edges
        prop_assert!(local.two_edge_count() >= kruskal.two_edge_count());
    }

    #[test]
    fn take3_witnesses_are_rainbow(g in connected_graph(11)) {
        let out = build(&g, &Options::new(Method::Take3)).unwrap();
        let c = out.coloring();
        prop_assert!(c.max_color() as usize <= out.forest.f_value() + 2);
        for a in 0..g.n() {
            for b in a + 1..g.n() {
                let p = out.witness(a, b).unwrap();
                prop_assert!(check_witness(&g, &c.colors, a, b, &p), "pair {}-{}", a, b);
            }
        }
    }

    #[test]
    fn failing_pair_iff_not_rainbow(g in connected_graph(9), seed in any::<u64>(), k in 1u32..4) {
        let colors: Vec<u32> = (0..g.m() as u64).map(|e| ((e.wrapping_mul(0x9e37_79b9) ^ seed) % k as u64) as u32 + 1).collect();
        let r = verify_rainbow(&g, &colors, Some(k), false).unwrap();
        prop_assert_eq!(r.failing_pair.is_some(), !r.rainbow_connected);
        let distinct: Vec<u32> = (1..=g.m() as u32).collect();
        prop_assert!(verify_rainbow(&g, &distinct, None, false).unwrap().rainbow_connected);
    }

    #[test]
    fn graph_formats_round_trip(g in connected_graph(14)) {
        let text = parse_edge_list(&to_edge_list(&g), false).unwrap();
        prop_assert_eq!(text.edges(), g.edges());
        let json = parse_json(&to_json(&g)).unwrap();
        prop_assert_eq!(json.edges(), g.edges());
    }
}

#[test]
fn paths_reach_the_diameter_bound() {
    for n in 1..12 {
        assert_eq!(path(n).unwrap().diameter().unwrap(), n - 1);
    }
}

#[test]
fn cycles_are_two_regular() {
    for n in 3..20 {
        let g = cycle(n).unwrap();
        assert!(g.is_connected());
        assert!((0..n).all(|v| g.degree(v) == 2));
        assert_eq!(g.m(), n);
    }
}

#[test]
fn k_with_pendants_degrees() {
    for k in 3..8 {
        let g = clique_with_pendants(k, k).unwrap();
        let mut deg: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
        deg.sort();
        let mut want = vec![1; k];
        want.extend(vec![k; k]);
        assert_eq!(deg, want);
    }
}
