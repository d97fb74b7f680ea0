//! The 2f+2 construction: distinct forest colors, two surplus colors per tree,
//! two global colors for the non-tree leaves of the skeleton.

use crate::coloring::{Color, Construction, RainbowColoring, WitnessPath};
use crate::contraction::{ContractedGraph, EdgeKind, HEdgeId, HVertex};
use crate::error::{Error, Result};
use crate::forest::InducedForest;
use crate::graph::{EdgeId, Graph, VertexId};
use crate::skeleton::Skeleton;

#[derive(Debug, Clone)]
pub struct Take2<'a> {
    g: &'a Graph,
    cg: ContractedGraph,
    sk: Skeleton,
    pub coloring: RainbowColoring,
    /// Color-giving foot-path edge per tree, when its outgoing edge is a 2-edge.
    pub color_giving: Vec<Option<EdgeId>>,
    /// Color of each B1 edge of H.
    pub h_colors: Vec<Option<Color>>,
    pub g1: Color,
    pub g2: Color,
}

pub fn color_take2<'a>(
    g: &'a Graph,
    forest: &InducedForest,
    cg: &ContractedGraph,
    sk: &Skeleton,
) -> Result<Take2<'a>> {
    sk.check_invariants(cg)?;
    let f = forest.f_value() as Color;
    let t = forest.t() as Color;
    let m = g.m();
    let mut colors: Vec<Option<Color>> = vec![None; m];
    let mut rules = vec!["irrelevant"; m];

    let mut next = 1;
    for e in 0..m {
        if cg.tree_of_edge(e).is_some() {
            colors[e] = Some(next);
            rules[e] = "forest";
            next += 1;
        }
    }
    let s1 = |i: usize| f - t + 2 * i as Color + 1;
    let s2 = |i: usize| f - t + 2 * i as Color + 2;
    let (g1, g2) = (f + t + 1, f + t + 2);

    let mut h_colors: Vec<Option<Color>> = vec![None; cg.edges().len()];
    let mut h_rules: Vec<&'static str> = vec![""; cg.edges().len()];
    let mut color_giving = vec![None; cg.num_trees()];
    let mut order: Vec<HVertex> = (0..cg.num_trees()).filter(|&x| x != sk.root()).collect();
    order.sort_by_key(|&x| (sk.level(x), x));
    for x in order {
        let v = sk.parent(x).unwrap();
        let out = sk.parent_edge(x).unwrap();
        let vw = sk.parent_edge(v);
        let w = sk.parent(v);
        let wz = w.and_then(|w| sk.parent_edge(w));
        let mut set = |h: HEdgeId, c: Color, tag: &'static str| {
            if h_colors[h].is_none() {
                h_colors[h] = Some(c);
                h_rules[h] = tag;
            }
        };
        match cg.edge(out).kind {
            EdgeKind::Two => {
                let fp = cg.edge(out).foot_path.as_ref().unwrap();
                let cge = *fp.edges.iter().min().unwrap();
                color_giving[x] = Some(cge);
                set(out, colors[cge].unwrap(), "color-giving");
                if let Some(vw) = vw {
                    set(vw, s1(x), "first-surplus");
                }
                if let Some(wz) = wz {
                    set(wz, s2(x), "second-surplus");
                }
            }
            EdgeKind::One => {
                set(out, s1(x), "first-surplus");
                if let Some(vw) = vw {
                    set(vw, s2(x), "second-surplus");
                }
            }
        }
    }
    for h in sk.b1_edges() {
        let c = h_colors[h].ok_or_else(|| {
            Error::SkeletonInvariantViolated(format!("B1 edge {} left uncolored", h))
        })?;
        for &e in cg.edge(h).reps() {
            colors[e] = Some(c);
            rules[e] = h_rules[h];
        }
    }
    for &x in sk.leaves_s() {
        let h = sk.parent_edge(x).unwrap();
        let reps = cg.edge(h).reps();
        colors[reps[0]] = Some(g1);
        rules[reps[0]] = "leaf-first-global";
        colors[reps[1]] = Some(g2);
        rules[reps[1]] = "leaf-second-global";
    }
    let relevant: Vec<bool> = colors.iter().map(|c| c.is_some()).collect();
    let colors: Vec<Color> = colors.into_iter().map(|c| c.unwrap_or(1)).collect();
    let palette = if cg.num_vertices() == 1 { f - t } else { f + t + 2 };
    let coloring = RainbowColoring {
        palette,
        colors,
        rules,
        relevant,
        shortcut_edges: Vec::new(),
        construction: Construction::Take2,
    };
    Ok(Take2 { g, cg: cg.clone(), sk: sk.clone(), coloring, color_giving, h_colors, g1, g2 })
}

impl Take2<'_> {
    /// Rainbow path between any two vertices: guided by the B1 path between
    /// their images, split at the lowest common ancestor, with non-tree leaves
    /// attached through their global-color edges.
    pub fn witness(&self, a: VertexId, b: VertexId) -> WitnessPath {
        let (g, cg, sk) = (self.g, &self.cg, &self.sk);
        let attach = |v: VertexId, second: bool| -> Option<(VertexId, EdgeId)> {
            let x = cg.h(v);
            if sk.in_b1(x) {
                return None;
            }
            let reps = cg.edge(sk.parent_edge(x).unwrap()).reps();
            let e = if second { reps[1] } else { reps[0] };
            Some((g.other_end(e, v), e))
        };
        if a == b {
            return WitnessPath::single(a);
        }
        let head = attach(a, false);
        let tail = attach(b, true);
        let a2 = head.map_or(a, |p| p.0);
        let b2 = tail.map_or(b, |p| p.0);
        let mut path = WitnessPath::single(a);
        if let Some((_, e)) = head {
            path.push_edge(g, e);
        }
        path.extend(&self.inner_witness(a2, b2));
        if let Some((_, e)) = tail {
            path.push_edge(g, e);
        }
        path
    }

    fn inner_witness(&self, a: VertexId, b: VertexId) -> WitnessPath {
        let (cg, sk) = (&self.cg, &self.sk);
        let (ha, hb) = (cg.h(a), cg.h(b));
        let (verts, _) = sk.b1_path(ha, hb).expect("both in B1");
        let lca = *verts.iter().min_by_key(|&&x| sk.level(x)).unwrap();
        let p1 = self.climb(a, lca);
        let p2 = self.climb(b, lca);
        let mut path = p1;
        if cg.is_tree_vertex(lca) {
            let tp = cg.tree(lca).path(path.end(), p2.end()).unwrap();
            path.extend_tree_path(&tp);
        }
        path.extend(&p2.reversed());
        path
    }

    /// Walks from `v` up B1 until its image is `stop`.
    fn climb(&self, v: VertexId, stop: HVertex) -> WitnessPath {
        let (g, cg, sk) = (self.g, &self.cg, &self.sk);
        let mut path = WitnessPath::single(v);
        while cg.h(path.end()) != stop {
            let cur = path.end();
            let x = cg.h(cur);
            let h = sk.parent_edge(x).unwrap();
            let edge = cg.edge(h);
            if !cg.is_tree_vertex(x) {
                path.push_edge(g, edge.rep1());
                continue;
            }
            let tree = cg.tree(x);
            let rep = match edge.kind {
                EdgeKind::One => edge.rep1(),
                EdgeKind::Two => {
                    let cge = self.color_giving[x].unwrap();
                    *edge
                        .reps()
                        .iter()
                        .find(|&&e| !tree.path(cur, cg.foot(g, e, x)).unwrap().contains_edge(cge))
                        .expect("one foot avoids the color-giving edge")
                }
            };
            let foot = cg.foot(g, rep, x);
            path.extend_tree_path(&tree.path(cur, foot).unwrap());
            path.push_edge(g, rep);
        }
        path
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contraction::contract;
    use crate::forest::max_induced_forest;
    use crate::skeleton::build_skeleton_take2;

    fn distinct(colors: &[Color], p: &WitnessPath) -> bool {
        let mut cs: Vec<Color> = p.edges.iter().map(|&e| colors[e]).collect();
        cs.sort_unstable();
        cs.windows(2).all(|w| w[0] != w[1])
    }

    #[test]
    fn tree_uses_forest_colors_only() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (1, 4)]).unwrap();
        let f = max_induced_forest(&g).unwrap();
        let cg = contract(&g, &f).unwrap();
        let sk = build_skeleton_take2(&cg).unwrap();
        let t2 = color_take2(&g, &f, &cg, &sk).unwrap();
        assert_eq!(t2.coloring.colors_used(), 4);
        assert_eq!(t2.coloring.palette, 4);
    }

    #[test]
    fn wheel_witnesses_are_rainbow() {
        let mut e: Vec<_> = (1..7).map(|i| (0, i)).collect();
        e.extend((1..7).map(|i| (i, i % 6 + 1)));
        let g = Graph::from_edges(7, &e).unwrap();
        let f = max_induced_forest(&g).unwrap();
        let cg = contract(&g, &f).unwrap();
        let sk = build_skeleton_take2(&cg).unwrap();
        let t2 = color_take2(&g, &f, &cg, &sk).unwrap();
        assert!(t2.coloring.max_color() as usize <= 2 * f.f_value() + 2);
        for a in 0..7 {
            for b in 0..7 {
                let p = t2.witness(a, b);
                assert_eq!((p.start(), p.end()), (a, b));
                assert!(distinct(&t2.coloring.colors, &p), "{a}-{b}: {:?}", p);
            }
        }
    }
}
