//! The f+2 construction: distinct forest colors, one surplus color per tree,
//! two global colors for the non-tree leaves of the skeleton.
//!
//! The rules run in a fixed order over the inner skeleton B1 and never recolor
//! an edge. Every application is logged. The witness path for a pair is rebuilt
//! by replaying the log along the B1 path between the images of the pair: each
//! application picks representatives for the path edges it colored, and a tree
//! path is inserted as soon as a tree has two attachment points.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use crate::coloring::{Color, Construction, RainbowColoring, WitnessPath};
use crate::contraction::{ContractedGraph, EdgeKind, HEdgeId, HVertex};
use crate::error::{invariant, lemma, Invariant, Result, StructuralCheck};
use crate::forest::InducedForest;
use crate::graph::{EdgeId, Graph, VertexId};
use crate::skeleton::Skeleton;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    Forest,
    OneEdgeSurplus,
    Rotation,
    ThreeTwoEdges,
    NonTreeBranch,
    SingleTwoEdge,
    TwoTwoEdges,
    SingleEdgeBranch,
    LastUncolored,
    ParentTwoEdge,
    Bridge,
    LeafGlobal,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::Forest => "forest",
            Rule::OneEdgeSurplus => "one-edge-surplus",
            Rule::Rotation => "rotation",
            Rule::ThreeTwoEdges => "three-two-edges",
            Rule::NonTreeBranch => "non-tree-branch",
            Rule::SingleTwoEdge => "single-two-edge",
            Rule::TwoTwoEdges => "two-two-edges",
            Rule::SingleEdgeBranch => "single-edge-branch",
            Rule::LastUncolored => "last-uncolored",
            Rule::ParentTwoEdge => "parent-two-edge",
            Rule::Bridge => "bridge",
            Rule::LeafGlobal => "leaf-global",
        }
    }

    pub const ALL: [Rule; 12] = [
        Rule::Forest,
        Rule::OneEdgeSurplus,
        Rule::Rotation,
        Rule::ThreeTwoEdges,
        Rule::NonTreeBranch,
        Rule::SingleTwoEdge,
        Rule::TwoTwoEdges,
        Rule::SingleEdgeBranch,
        Rule::LastUncolored,
        Rule::ParentTwoEdge,
        Rule::Bridge,
        Rule::LeafGlobal,
    ];
}

/// One firing of a rule.
#[derive(Debug, Clone, Serialize)]
pub struct Application {
    pub rule: Rule,
    /// Which variant of the rule fired, e.g. `cut` or `root`.
    pub case: &'static str,
    pub center: HVertex,
    /// H-edges colored here.
    pub colored: Vec<HEdgeId>,
    pub shortcut: Option<EdgeId>,
    #[serde(skip)]
    pick: Pick,
}

/// How the replay chooses representatives for the edges of one application.
#[derive(Debug, Clone)]
enum Pick {
    /// 1-edges only.
    Only,
    /// Any representatives keeping the path rainbow. With `star`, the new
    /// colors must also avoid the rotation colors of the path's own edges.
    Search { star: Option<Star> },
    Branch { u1: HVertex, u2: HVertex, first: HEdgeId, first_is_one: bool, out: HEdgeId },
    /// Two new edges both enter the tree at this vertex; one new edge meets the existing port.
    Foot(VertexId),
    Shortcut(EdgeId),
    Port,
}

#[derive(Debug, Clone)]
struct Star {
    colors: Vec<Color>,
    own: Vec<(HEdgeId, Color)>,
}

#[derive(Debug, Clone)]
pub struct Take3<'a> {
    g: &'a Graph,
    cg: ContractedGraph,
    sk: Skeleton,
    pub coloring: RainbowColoring,
    pub log: Vec<Application>,
    pub g1: Color,
    pub g2: Color,
}

struct Engine<'a> {
    g: &'a Graph,
    cg: &'a ContractedGraph,
    sk: &'a Skeleton,
    f: Color,
    t: Color,
    colors: Vec<Option<Color>>,
    rules: Vec<&'static str>,
    done: Vec<bool>,
    nbrs: Vec<Vec<(HVertex, HEdgeId)>>,
    tree_edges: Vec<Vec<EdgeId>>,
    parent_two_edge: Vec<bool>,
    rule2_child: Vec<Option<HVertex>>,
    log: Vec<Application>,
    shortcuts: Vec<EdgeId>,
}

pub fn color_take3<'a>(
    g: &'a Graph,
    forest: &InducedForest,
    cg: &ContractedGraph,
    sk: &Skeleton,
) -> Result<Take3<'a>> {
    sk.check_invariants(cg)?;
    let nh = cg.num_vertices();
    let mut nbrs: Vec<Vec<(HVertex, HEdgeId)>> = (0..nh).map(|x| sk.b1_neighbors(x)).collect();
    for list in &mut nbrs {
        list.sort_unstable();
    }
    let mut e = Engine {
        g,
        cg,
        sk,
        f: forest.f_value() as Color,
        t: forest.t() as Color,
        colors: vec![None; g.m()],
        rules: vec!["irrelevant"; g.m()],
        done: vec![false; cg.edges().len()],
        nbrs,
        tree_edges: (0..cg.num_trees()).map(|i| cg.tree(i).edges()).collect(),
        parent_two_edge: vec![false; cg.num_trees()],
        rule2_child: vec![None; nh],
        log: Vec::new(),
        shortcuts: Vec::new(),
    };
    e.forest()?;
    e.one_edges()?;
    e.high_two_degree()?;
    e.non_tree_branches()?;
    e.single_two_edge()?;
    e.two_two_edges()?;
    e.single_edge_branches()?;
    e.check_uncolored_edge_shape()?;
    e.last_uncolored()?;
    e.check_uncolored_pairs()?;
    e.parent_two_edges()?;
    e.bridges()?;
    if let Some(h) = sk.b1_edges().into_iter().find(|&h| !e.done[h]) {
        let d = cg.edge(h);
        return Err(lemma(
            StructuralCheck::AllCompleted,
            format!("{}-{} is uncolored after all rules", cg.vertex_name(d.a), cg.vertex_name(d.b)),
        ));
    }
    let (g1, g2) = (e.f + 1, e.f + 2);
    e.leaves(g1, g2)?;

    let relevant: Vec<bool> = e.colors.iter().map(|c| c.is_some()).collect();
    let colors: Vec<Color> = e.colors.iter().map(|c| c.unwrap_or(1)).collect();
    let palette = if nh == 1 { e.f - e.t } else { e.f + 2 };
    let coloring = RainbowColoring {
        palette,
        colors,
        rules: e.rules,
        relevant,
        shortcut_edges: e.shortcuts,
        construction: Construction::Take3,
    };
    Ok(Take3 { g, cg: cg.clone(), sk: sk.clone(), coloring, log: e.log, g1, g2 })
}

impl Engine<'_> {
    fn surplus(&self, x: HVertex) -> Color {
        self.f - self.t + x as Color + 1
    }

    fn color_of(&self, e: EdgeId) -> Color {
        self.colors[e].expect("edge colored earlier")
    }

    fn kind(&self, h: HEdgeId) -> EdgeKind {
        self.cg.edge(h).kind
    }

    fn b1_trees(&self) -> Vec<HVertex> {
        (0..self.cg.num_trees()).filter(|&x| self.sk.in_b1(x)).collect()
    }

    fn incomplete(&self, x: HVertex) -> bool {
        self.nbrs[x].iter().any(|&(_, h)| !self.done[h])
    }

    fn two_edges(&self, x: HVertex) -> Vec<(HVertex, HEdgeId)> {
        self.nbrs[x].iter().copied().filter(|&(_, h)| self.kind(h) == EdgeKind::Two).collect()
    }

    fn uncolored(&self, x: HVertex) -> Vec<(HVertex, HEdgeId)> {
        self.nbrs[x].iter().copied().filter(|&(_, h)| !self.done[h]).collect()
    }

    fn foot_path(&self, h: HEdgeId) -> Vec<EdgeId> {
        let mut es = self.cg.edge(h).foot_path.as_ref().expect("2-edge").edges.clone();
        es.sort_unstable();
        es
    }

    fn foot(&self, e: EdgeId, x: HVertex) -> VertexId {
        self.cg.foot(self.g, e, x)
    }

    fn edge_name(&self, h: HEdgeId) -> String {
        let d = self.cg.edge(h);
        format!("{}-{}", self.cg.vertex_name(d.a), self.cg.vertex_name(d.b))
    }

    fn paint(&mut self, h: HEdgeId, cs: &[Color], tag: &'static str, colored: &mut Vec<HEdgeId>) -> Result<()> {
        if self.done[h] {
            return Err(lemma(StructuralCheck::UncoloredOnEntry, format!("{} is already colored", self.edge_name(h))));
        }
        let reps = self.cg.edge(h).reps().to_vec();
        for (i, &e) in reps.iter().enumerate() {
            self.colors[e] = Some(cs[i.min(cs.len() - 1)]);
            self.rules[e] = tag;
        }
        self.done[h] = true;
        colored.push(h);
        Ok(())
    }

    /// The representative with foot `at` gets `c_at`, the other gets `c_other`.
    #[allow(clippy::too_many_arguments)]
    fn paint_by_foot(
        &mut self,
        h: HEdgeId,
        x: HVertex,
        at: VertexId,
        c_at: Color,
        c_other: Color,
        tag: &'static str,
        colored: &mut Vec<HEdgeId>,
    ) -> Result<()> {
        let reps = self.cg.edge(h).reps();
        if self.foot(reps[0], x) == at {
            self.paint(h, &[c_at, c_other], tag, colored)
        } else {
            self.paint(h, &[c_other, c_at], tag, colored)
        }
    }

    fn record(
        &mut self,
        rule: Rule,
        case: &'static str,
        center: HVertex,
        colored: Vec<HEdgeId>,
        shortcut: Option<EdgeId>,
        pick: Pick,
    ) -> Result<()> {
        self.log.push(Application { rule, case, center, colored, shortcut, pick });
        self.check_paired()?;
        self.check_isolated()
    }

    fn check_paired(&self) -> Result<()> {
        for &h in self.sk.edges() {
            let d = self.cg.edge(h);
            if let Some(r2) = d.rep2() {
                if self.colors[d.rep1()].is_some() != self.colors[r2].is_some() {
                    return Err(invariant(
                        Invariant::PairedRepresentatives,
                        format!("only one representative of {} is colored", self.edge_name(h)),
                    ));
                }
            }
        }
        Ok(())
    }

    fn check_isolated(&self) -> Result<()> {
        for x in self.b1_trees() {
            if !self.incomplete(x) {
                continue;
            }
            let inner: HashSet<Color> = self.tree_edges[x].iter().filter_map(|&e| self.colors[e]).collect();
            for (e, c) in self.colors.iter().enumerate() {
                let Some(c) = c else { continue };
                if self.cg.tree_of_edge(e) != Some(x) && inner.contains(c) {
                    return Err(invariant(
                        Invariant::IsolatedInternalColors,
                        format!("color {} of incomplete tree {} reused on edge {}", c, self.cg.vertex_name(x), e),
                    ));
                }
            }
        }
        Ok(())
    }

    fn forest(&mut self) -> Result<()> {
        let mut next = 1;
        for e in 0..self.g.m() {
            if self.cg.tree_of_edge(e).is_some() {
                self.colors[e] = Some(next);
                self.rules[e] = Rule::Forest.name();
                next += 1;
            }
        }
        self.record(Rule::Forest, "forest", self.sk.root(), Vec::new(), None, Pick::Only)
    }

    fn one_edges(&mut self) -> Result<()> {
        let mut colored = Vec::new();
        for h in self.sk.b1_edges() {
            if self.kind(h) != EdgeKind::One {
                continue;
            }
            let d = self.cg.edge(h);
            let tail = if self.sk.parent_edge(d.a) == Some(h) { d.a } else { d.b };
            let source = if self.cg.is_tree_vertex(tail) {
                tail
            } else {
                let c = self.sk.tree_child_over_two_edge(self.cg, tail).ok_or_else(|| {
                    lemma(
                        StructuralCheck::OneEdgeTreeChild,
                        format!("{} has no tree child over a 2-edge", self.cg.vertex_name(tail)),
                    )
                })?;
                self.rule2_child[tail] = Some(c);
                c
            };
            let c = self.surplus(source);
            self.paint(h, &[c], Rule::OneEdgeSurplus.name(), &mut colored)?;
        }
        self.record(Rule::OneEdgeSurplus, "surplus", self.sk.root(), colored, None, Pick::Only)
    }

    fn high_two_degree(&mut self) -> Result<()> {
        for x in self.b1_trees() {
            let two = self.two_edges(x);
            let q = two.len();
            if q < 3 {
                continue;
            }
            let cs: Vec<Color> = two
                .iter()
                .map(|&(w, _)| self.sk.closest_tree_vertex_ct(self.cg, x, w).map(|y| self.surplus(y)))
                .collect::<Result<_>>()?;
            let hs: Vec<HEdgeId> = two.iter().map(|&(_, h)| h).collect();
            let star = Star { colors: cs.clone(), own: hs.iter().copied().zip(cs.iter().copied()).collect() };
            let mut colored = Vec::new();
            if q >= 4 {
                for i in 0..q {
                    let tag = Rule::Rotation.name();
                    self.paint(hs[i], &[cs[(i + 2) % q], cs[(i + 3) % q]], tag, &mut colored)?;
                }
                self.record(Rule::Rotation, "rotation", x, colored, None, Pick::Search { star: Some(star) })?;
                continue;
            }
            let case = self.three_two_edges(x, &hs, &cs, &mut colored)?;
            self.record(Rule::ThreeTwoEdges, case, x, colored, None, Pick::Search { star: Some(star) })?;
        }
        Ok(())
    }

    fn three_two_edges(
        &mut self,
        x: HVertex,
        hs: &[HEdgeId],
        cs: &[Color],
        colored: &mut Vec<HEdgeId>,
    ) -> Result<&'static str> {
        let tag = Rule::ThreeTwoEdges.name();
        let paths: Vec<Vec<EdgeId>> = hs.iter().map(|&h| self.foot_path(h)).collect();
        let tree = self.cg.tree(x).clone();
        // one tree edge separating all three foot pairs
        if let Some(&cut) = paths[0].iter().find(|e| paths[1].contains(e) && paths[2].contains(e)) {
            let (p, q) = self.g.edge(cut);
            let side = p.min(q);
            let c = self.color_of(cut);
            let near = |v: VertexId| -> Result<bool> { Ok(!tree.path(v, side)?.contains_edge(cut)) };
            let plan = [(cs[2], cs[1]), (c, cs[0]), (c, c)];
            for (i, &h) in hs.iter().enumerate() {
                let r1 = self.cg.edge(h).rep1();
                let (cu, cv) = plan[i];
                if near(self.foot(r1, x))? {
                    self.paint(h, &[cu, cv], tag, colored)?;
                } else {
                    self.paint(h, &[cv, cu], tag, colored)?;
                }
            }
            return Ok("cut");
        }
        for &e0 in &paths[0] {
            for &e1 in paths[1].iter().filter(|&&e| e != e0) {
                if let Some(&e2) = paths[2].iter().find(|&&e| e != e0 && e != e1) {
                    for (h, e) in hs.iter().zip([e0, e1, e2]) {
                        let c = self.color_of(e);
                        self.paint(*h, &[c], tag, colored)?;
                    }
                    return Ok("distinct");
                }
            }
        }
        for (i, j, k) in [(0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)] {
            let (pi, pj, pk) = (&paths[i], &paths[j], &paths[k]);
            if pi.len() != 1 || pi.iter().any(|e| pj.contains(e)) || pk.iter().any(|e| !pi.contains(e) && !pj.contains(e)) {
                continue;
            }
            let feet_i: Vec<VertexId> = self.cg.edge(hs[i]).reps().iter().map(|&r| self.foot(r, x)).collect();
            let feet_k: Vec<VertexId> = self.cg.edge(hs[k]).reps().iter().map(|&r| self.foot(r, x)).collect();
            let pj_path = self.cg.edge(hs[j]).foot_path.clone().expect("2-edge");
            for &u in feet_i.iter().filter(|u| feet_k.contains(u)) {
                let v = if feet_i[0] == u { feet_i[1] } else { feet_i[0] };
                if tree.distance_to_path(v, &pj_path)? >= tree.distance_to_path(u, &pj_path)? {
                    continue;
                }
                let c1 = self.color_of(pi[0]);
                let c2 = self.color_of(pj[0]);
                self.paint(hs[i], &[c1], tag, colored)?;
                self.paint(hs[j], &[c2], tag, colored)?;
                self.paint_by_foot(hs[k], x, u, c2, c1, tag, colored)?;
                return Ok("nested");
            }
        }
        Err(lemma(
            StructuralCheck::StarPaths,
            format!("no pattern fits the three 2-edges at {}", self.cg.vertex_name(x)),
        ))
    }

    fn non_tree_branches(&mut self) -> Result<()> {
        let (t, nh) = (self.cg.num_trees(), self.cg.num_vertices());
        for u in t..nh {
            if !self.sk.in_b1(u) || self.nbrs[u].len() < 3 {
                continue;
            }
            let out = self.sk.parent_edge(u).expect("non-tree vertex has a parent");
            let parent = self.sk.parent(u).unwrap();
            let mut kids: Vec<(HVertex, HEdgeId)> = self.nbrs[u].iter().copied().filter(|&(y, _)| y != parent).collect();
            let u1 = match self.kind(out) {
                EdgeKind::One => self.rule2_child[u].expect("set by the 1-edge rule"),
                EdgeKind::Two => kids[0].0,
            };
            let pos = kids.iter().position(|&(y, _)| y == u1).expect("u1 is a child");
            let first = kids.remove(pos);
            kids.insert(0, first);
            let cs: Vec<Color> = kids
                .iter()
                .map(|&(y, _)| self.sk.closest_tree_vertex_ct(self.cg, u, y).map(|z| self.surplus(z)))
                .collect::<Result<_>>()?;
            let tag = Rule::NonTreeBranch.name();
            let mut colored = Vec::new();
            let h1 = kids[0].1;
            if !self.done[h1] {
                self.paint(h1, &[cs[0], cs[1]], tag, &mut colored)?;
            }
            for i in 1..kids.len() {
                if !self.done[kids[i].1] {
                    self.paint(kids[i].1, &[cs[i]], tag, &mut colored)?;
                }
            }
            if !self.done[out] {
                self.paint(out, &[cs[0], cs[1]], tag, &mut colored)?;
            }
            let pick = Pick::Branch {
                u1,
                u2: kids[1].0,
                first: h1,
                first_is_one: self.kind(h1) == EdgeKind::One,
                out,
            };
            self.record(Rule::NonTreeBranch, "branch", u, colored, None, pick)?;
        }
        Ok(())
    }

    fn single_two_edge(&mut self) -> Result<()> {
        for x in self.b1_trees() {
            let two = self.two_edges(x);
            if !self.incomplete(x) || two.len() != 1 {
                continue;
            }
            let h = two[0].1;
            let e1 = self.foot_path(h)[0];
            let c = self.color_of(e1);
            let mut colored = Vec::new();
            self.paint(h, &[c], Rule::SingleTwoEdge.name(), &mut colored)?;
            self.record(Rule::SingleTwoEdge, "single", x, colored, None, Pick::Search { star: None })?;
        }
        Ok(())
    }

    fn two_two_edges(&mut self) -> Result<()> {
        let tag = Rule::TwoTwoEdges.name();
        for x in self.b1_trees() {
            let two = self.two_edges(x);
            if two.len() != 2 || self.tree_edges[x].len() < 2 || !self.incomplete(x) {
                continue;
            }
            let (h1, h2) = (two[0].1, two[1].1);
            let (p1, p2) = (self.foot_path(h1), self.foot_path(h2));
            let mut colored = Vec::new();
            let distinct = p1.iter().find_map(|&e| p2.iter().find(|&&f| f != e).map(|&f| (e, f)));
            let case = if let Some((e, f)) = distinct {
                if !self.done[h1] {
                    let c = self.color_of(e);
                    self.paint(h1, &[c], tag, &mut colored)?;
                }
                if !self.done[h2] {
                    let c = self.color_of(f);
                    self.paint(h2, &[c], tag, &mut colored)?;
                }
                "distinct"
            } else {
                let e = p1[0];
                let other = *self.tree_edges[x].iter().find(|&&f| f != e).unwrap();
                let tree = self.cg.tree(x);
                let (a, b) = self.g.edge(e);
                let (oa, ob) = self.g.edge(other);
                let dist = |v: VertexId| tree.distance(v, oa).unwrap().min(tree.distance(v, ob).unwrap());
                let u = if dist(a) <= dist(b) { b } else { a };
                let (ce, co) = (self.color_of(e), self.color_of(other));
                if !self.done[h1] {
                    self.paint(h1, &[ce], tag, &mut colored)?;
                }
                if !self.done[h2] {
                    self.paint_by_foot(h2, x, u, co, ce, tag, &mut colored)?;
                }
                "shared"
            };
            self.record(Rule::TwoTwoEdges, case, x, colored, None, Pick::Search { star: None })?;
        }
        Ok(())
    }

    fn single_edge_branches(&mut self) -> Result<()> {
        let tag = Rule::SingleEdgeBranch.name();
        for x in self.b1_trees() {
            if !self.incomplete(x) || self.nbrs[x].len() < 3 {
                continue;
            }
            let two = self.two_edges(x);
            if two.len() != 2 || self.tree_edges[x].len() != 1 {
                return Err(lemma(
                    StructuralCheck::SingleEdgeBranchShape,
                    format!(
                        "{} has {} 2-edges and a tree with {} edges",
                        self.cg.vertex_name(x),
                        two.len(),
                        self.tree_edges[x].len()
                    ),
                ));
            }
            let te = self.tree_edges[x][0];
            let (p, q) = self.g.edge(te);
            let c2 = self.color_of(te);
            let other_end = |v: VertexId| if v == p { q } else { p };
            let out = self.sk.parent_edge(x);
            let (hy, hz, v, c_first, case) = match out {
                Some(o) if self.kind(o) == EdgeKind::Two => {
                    let hz = if two[0].1 == o { two[1].1 } else { two[0].1 };
                    let parent = self.sk.parent(x).unwrap();
                    let one_in = self
                        .nbrs[x]
                        .iter()
                        .find(|&&(y, h)| y != parent && self.kind(h) == EdgeKind::One)
                        .map(|&(_, h)| self.cg.edge(h).rep1())
                        .ok_or_else(|| {
                            lemma(
                                StructuralCheck::SingleEdgeBranchShape,
                                format!("{} has no incoming 1-edge", self.cg.vertex_name(x)),
                            )
                        })?;
                    (o, hz, self.foot(one_in, x), self.color_of(one_in), "outgoing")
                }
                Some(o) => {
                    let v = self.foot(self.cg.edge(o).rep1(), x);
                    (two[0].1, two[1].1, v, self.surplus(x), "incoming")
                }
                None => (two[0].1, two[1].1, p.min(q), self.surplus(x), "root"),
            };
            let u = other_end(v);
            let mut colored = Vec::new();
            if !self.done[hy] {
                self.paint_by_foot(hy, x, u, c_first, c2, tag, &mut colored)?;
            }
            if !self.done[hz] {
                self.paint(hz, &[c2], tag, &mut colored)?;
            }
            self.record(Rule::SingleEdgeBranch, case, x, colored, None, Pick::Foot(u))?;
        }
        Ok(())
    }

    fn check_uncolored_edge_shape(&self) -> Result<()> {
        for h in self.sk.b1_edges() {
            if self.done[h] {
                continue;
            }
            let d = self.cg.edge(h);
            let x = d.a;
            let ok = self.cg.is_tree_vertex(x)
                && self.nbrs[x].len() == 2
                && self.nbrs[d.b].len() == 2
                && self.two_edges(x).len() == 2
                && self.tree_edges[x].len() == 1;
            if !ok {
                return Err(lemma(
                    StructuralCheck::UncoloredEdgeShape,
                    format!("uncolored {} is not at a degree-2 single-edge tree", self.edge_name(h)),
                ));
            }
        }
        Ok(())
    }

    fn last_uncolored(&mut self) -> Result<()> {
        for x in self.b1_trees() {
            let unc = self.uncolored(x);
            if unc.len() != 1 {
                continue;
            }
            let c = self.color_of(self.tree_edges[x][0]);
            let mut colored = Vec::new();
            self.paint(unc[0].1, &[c], Rule::LastUncolored.name(), &mut colored)?;
            self.record(Rule::LastUncolored, "last", x, colored, None, Pick::Port)?;
        }
        Ok(())
    }

    fn check_uncolored_pairs(&self) -> Result<()> {
        for x in self.b1_trees() {
            let unc = self.uncolored(x);
            if unc.is_empty() {
                continue;
            }
            if unc.len() != 2 || self.nbrs[x].len() != 2 || unc.iter().any(|&(_, h)| self.kind(h) != EdgeKind::Two) {
                return Err(lemma(
                    StructuralCheck::UncoloredPairShape,
                    format!("{} has {} uncolored edges", self.cg.vertex_name(x), unc.len()),
                ));
            }
        }
        Ok(())
    }

    fn parent_two_edges(&mut self) -> Result<()> {
        let tag = Rule::ParentTwoEdge.name();
        for x in self.b1_trees() {
            if !self.incomplete(x) {
                continue;
            }
            let (e1, e2, case) = if x == self.sk.root() {
                (self.nbrs[x][0].1, self.nbrs[x][1].1, "root")
            } else {
                let v1 = self.sk.parent(x).unwrap();
                match self.sk.parent_edge(v1) {
                    Some(o) if self.kind(o) == EdgeKind::Two => {}
                    _ => continue,
                }
                let e1 = self.sk.parent_edge(x).unwrap();
                let e2 = self.nbrs[x].iter().find(|&&(_, h)| h != e1).unwrap().1;
                (e1, e2, "parent")
            };
            let ce = self.color_of(self.tree_edges[x][0]);
            let s = self.surplus(x);
            let u1 = self.foot(self.cg.edge(e1).rep1(), x);
            let mut colored = Vec::new();
            self.paint(e1, &[s], tag, &mut colored)?;
            self.paint(e2, &[ce], tag, &mut colored)?;
            self.parent_two_edge[x] = true;
            self.record(Rule::ParentTwoEdge, case, x, colored, None, Pick::Foot(u1))?;
        }
        Ok(())
    }

    fn check_descendants_are_children(&self) -> Result<()> {
        let (t, nh) = (self.cg.num_trees(), self.cg.num_vertices());
        for v in t..nh {
            if !self.sk.in_b1(v) {
                continue;
            }
            for &(y, h) in self.cg.adjacency(v) {
                if self.kind(h) == EdgeKind::Two
                    && self.sk.in_b1(y)
                    && self.sk.is_ancestor(v, y)
                    && self.sk.parent(y) != Some(v)
                {
                    return Err(lemma(
                        StructuralCheck::DescendantIsChild,
                        format!("{} is a 2-edge descendant but not a child of {}", self.cg.vertex_name(y), self.cg.vertex_name(v)),
                    ));
                }
            }
        }
        Ok(())
    }

    fn bridges(&mut self) -> Result<()> {
        let tag = Rule::Bridge.name();
        let mut checked = false;
        for x in self.b1_trees() {
            if !self.incomplete(x) {
                continue;
            }
            if !checked {
                self.check_descendants_are_children()?;
                checked = true;
            }
            let name = |z: HVertex| self.cg.vertex_name(z);
            let v1 = self.sk.parent(x).expect("root handled earlier");
            let e1 = self.sk.parent_edge(x).unwrap();
            let (v2, e2) = *self.nbrs[x].iter().find(|&&(_, h)| h != e1).unwrap();
            if self.sk.parent_edge(v1).map(|h| self.kind(h)) != Some(EdgeKind::One) {
                return Err(lemma(StructuralCheck::ParentSideTwoEdges, format!("{} leaves on a 2-edge", name(v1))));
            }
            for &(y, h) in self.cg.adjacency(v1) {
                if y == x || !self.cg.is_tree_vertex(y) {
                    continue;
                }
                let check = if self.kind(h) == EdgeKind::Two {
                    StructuralCheck::ParentSideTwoEdges
                } else {
                    StructuralCheck::ParentSideTreeContacts
                };
                return Err(lemma(check, format!("{} also touches {}", name(v1), name(y))));
            }
            let w = self.nbrs[v2].iter().find(|&&(y, _)| y != x).map(|&(y, h)| (y, h));
            for &(y, h) in self.cg.adjacency(v2) {
                if self.kind(h) == EdgeKind::Two && y != x && Some(y) != w.map(|p| p.0) {
                    return Err(lemma(
                        StructuralCheck::ChildSideTwoEdges,
                        format!("{} has a 2-edge to {}", name(v2), name(y)),
                    ));
                }
            }
            let ce = self.color_of(self.tree_edges[x][0]);
            let u1 = self.foot(self.cg.edge(e1).rep1(), x);
            let gv1 = self.cg.g_vertex(v1).unwrap();
            let gv2 = self.cg.g_vertex(v2).unwrap();
            let mut colored = Vec::new();
            if let Some(se) = self.g.edge_between(gv1, gv2) {
                if self.colors[se].is_some() {
                    return Err(lemma(
                        StructuralCheck::ShortcutUncolored,
                        format!("{}-{} is already colored", name(v1), name(v2)),
                    ));
                }
                self.paint(e1, &[ce], tag, &mut colored)?;
                self.paint(e2, &[ce], tag, &mut colored)?;
                self.colors[se] = Some(ce);
                self.rules[se] = "bridge-shortcut";
                self.shortcuts.push(se);
                self.record(Rule::Bridge, "shortcut", x, colored, Some(se), Pick::Shortcut(se))?;
                continue;
            }
            let (w, hw) = w.ok_or_else(|| {
                lemma(StructuralCheck::ChildSideIncomingTwoEdge, format!("{} has no child", name(v2)))
            })?;
            if !self.cg.is_tree_vertex(w) || self.kind(hw) != EdgeKind::Two {
                return Err(lemma(
                    StructuralCheck::ChildSideIncomingTwoEdge,
                    format!("{} enters {} without a 2-edge from a tree", name(w), name(v2)),
                ));
            }
            if self.parent_two_edge[w] {
                return Err(lemma(
                    StructuralCheck::BorrowedSurplusUnused,
                    format!("surplus of {} was spent by the parent-2-edge rule", name(w)),
                ));
            }
            let s = self.surplus(w);
            self.paint(e1, &[s], tag, &mut colored)?;
            self.paint(e2, &[ce], tag, &mut colored)?;
            self.record(Rule::Bridge, "borrowed", x, colored, None, Pick::Foot(u1))?;
        }
        Ok(())
    }

    fn leaves(&mut self, g1: Color, g2: Color) -> Result<()> {
        let mut colored = Vec::new();
        for &x in self.sk.leaves_s() {
            let h = self.sk.parent_edge(x).unwrap();
            self.paint(h, &[g1, g2], Rule::LeafGlobal.name(), &mut colored)?;
        }
        self.record(Rule::LeafGlobal, "leaves", self.sk.root(), colored, None, Pick::Only)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Step {
    Rep(EdgeId),
    Shortcut(EdgeId),
}

/// Partial witness path of one pair while the log is replayed.
struct Replay<'t, 'a> {
    take: &'t Take3<'a>,
    a: VertexId,
    b: VertexId,
    qv: Vec<HVertex>,
    qe: Vec<HEdgeId>,
    pos_v: HashMap<HVertex, usize>,
    pos_e: HashMap<HEdgeId, usize>,
    steps: Vec<Option<Step>>,
    closed: HashSet<HVertex>,
    entered: HashSet<HVertex>,
    edges: Vec<EdgeId>,
    used: HashSet<Color>,
}

impl<'t, 'a> Replay<'t, 'a> {
    fn new(take: &'t Take3<'a>, a: VertexId, b: VertexId) -> Result<Self> {
        let (qv, qe) = take.sk.b1_path(take.cg.h(a), take.cg.h(b))?;
        let pos_v = qv.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let pos_e = qe.iter().enumerate().map(|(i, &h)| (h, i)).collect();
        let steps = vec![None; qe.len()];
        Ok(Replay {
            take,
            a,
            b,
            qv,
            qe,
            pos_v,
            pos_e,
            steps,
            closed: HashSet::new(),
            entered: HashSet::new(),
            edges: Vec::new(),
            used: HashSet::new(),
        })
    }

    fn color(&self, e: EdgeId) -> Color {
        self.take.coloring.colors[e]
    }

    fn foot(&self, e: EdgeId, x: HVertex) -> VertexId {
        self.take.cg.foot(self.take.g, e, x)
    }

    /// Attachment points of tree vertex `x` under the given steps.
    fn ports(&self, x: HVertex, steps: &[Option<Step>]) -> Vec<VertexId> {
        let k = self.pos_v[&x];
        let mut ports = Vec::new();
        if k == 0 {
            ports.push(self.a);
        }
        if k + 1 == self.qv.len() {
            ports.push(self.b);
        }
        for i in [k.wrapping_sub(1), k] {
            if let Some(Some(Step::Rep(e))) = steps.get(i) {
                ports.push(self.foot(*e, x));
            }
        }
        ports
    }

    /// The other Q-neighbor of `u` than the far end of `h`.
    fn other_neighbor(&self, u: HVertex, h: HEdgeId) -> Option<HVertex> {
        let k = self.pos_v[&u];
        let far = self.take.cg.edge(h).other(u);
        [k.checked_sub(1), Some(k + 1)]
            .into_iter()
            .flatten()
            .filter_map(|i| self.qv.get(i).copied())
            .find(|&y| y != far)
    }

    fn candidates(&self, app: &Application, new: &[usize]) -> Result<Vec<Vec<(usize, Step)>>> {
        let cg = &self.take.cg;
        let reps = |i: usize| cg.edge(self.qe[i]).reps().to_vec();
        let by_foot = |i: usize, x: HVertex, at: VertexId| -> Option<EdgeId> {
            reps(i).into_iter().find(|&e| self.foot(e, x) == at)
        };
        let port = |i: usize| -> Result<Vec<Vec<(usize, Step)>>> {
            let x = app.center;
            let ports = self.ports(x, &self.steps);
            let e = match ports.as_slice() {
                [p] => by_foot(i, x, *p),
                _ => None,
            };
            Ok(e.map(|e| vec![vec![(i, Step::Rep(e))]]).unwrap_or_default())
        };
        match &app.pick {
            Pick::Only | Pick::Search { .. } => {
                let mut out: Vec<Vec<(usize, Step)>> = vec![Vec::new()];
                for &i in new {
                    let mut next = Vec::new();
                    for partial in &out {
                        for e in reps(i) {
                            let mut c = partial.clone();
                            c.push((i, Step::Rep(e)));
                            next.push(c);
                        }
                    }
                    out = next;
                }
                Ok(out)
            }
            Pick::Branch { u1, u2, first, first_is_one, out } => {
                let u = app.center;
                let mut cand = Vec::new();
                for &i in new {
                    let h = self.qe[i];
                    let r = reps(i);
                    let other = self.other_neighbor(u, h);
                    let e = if h == *first {
                        if other == Some(*u2) {
                            r[0]
                        } else {
                            r[r.len() - 1]
                        }
                    } else if h == *out && other == Some(*u1) && *first_is_one {
                        r[r.len() - 1]
                    } else {
                        r[0]
                    };
                    cand.push((i, Step::Rep(e)));
                }
                Ok(vec![cand])
            }
            Pick::Foot(at) if new.len() == 2 => {
                let x = app.center;
                match (by_foot(new[0], x, *at), by_foot(new[1], x, *at)) {
                    (Some(e), Some(f)) => Ok(vec![vec![(new[0], Step::Rep(e)), (new[1], Step::Rep(f))]]),
                    _ => Ok(Vec::new()),
                }
            }
            Pick::Shortcut(se) if new.len() == 2 => {
                Ok(vec![vec![(new[0], Step::Shortcut(*se)), (new[1], Step::Shortcut(*se))]])
            }
            Pick::Foot(_) | Pick::Shortcut(_) | Pick::Port => {
                if new.len() != 1 {
                    return Err(invariant(
                        Invariant::RainbowWitness,
                        format!("{} colored {} path edges at once", app.rule.name(), new.len()),
                    ));
                }
                port(new[0])
            }
        }
    }

    /// Tree paths forced by `steps` at trees not yet closed; `None` if a tree
    /// would get more than two attachment points.
    fn closure(&self, touched: &[HVertex], steps: &[Option<Step>]) -> Result<Vec<(HVertex, Vec<EdgeId>)>> {
        let cg = &self.take.cg;
        let mut out = Vec::new();
        for &x in touched {
            if !cg.is_tree_vertex(x) || self.closed.contains(&x) || !self.pos_v.contains_key(&x) {
                continue;
            }
            let ports = self.ports(x, steps);
            if ports.len() > 2 {
                return Err(invariant(
                    Invariant::GuardedTreeEdges,
                    format!("{} attachment points in {}", ports.len(), cg.vertex_name(x)),
                ));
            }
            if ports.len() == 2 {
                out.push((x, cg.tree(x).path(ports[0], ports[1])?.edges));
            }
        }
        Ok(out)
    }

    fn apply(&mut self, app: &Application) -> Result<()> {
        let cg = &self.take.cg;
        let new: Vec<usize> = app
            .colored
            .iter()
            .filter_map(|h| self.pos_e.get(h).copied())
            .filter(|&i| self.steps[i].is_none())
            .collect();
        if app.rule == Rule::Forest {
            if self.qe.is_empty() {
                let touched = [self.qv[0]];
                for (x, path) in self.closure(&touched, &self.steps)? {
                    self.closed.insert(x);
                    self.entered.insert(x);
                    self.edges.extend(path.iter().copied());
                    let colors = &self.take.coloring.colors;
                    self.used.extend(path.iter().map(|&e| colors[e]));
                }
            }
            return self.check();
        }
        if new.is_empty() {
            return Ok(());
        }
        let limit: Option<HashSet<Color>> = match &app.pick {
            Pick::Search { star: Some(star) } => {
                let own: HashSet<Color> = star
                    .own
                    .iter()
                    .filter(|(h, _)| new.iter().any(|&i| self.qe[i] == *h))
                    .map(|&(_, c)| c)
                    .collect();
                let mut allowed: HashSet<Color> = star.colors.iter().copied().filter(|c| !own.contains(c)).collect();
                allowed.extend(cg.tree(app.center).edges().into_iter().map(|e| self.color(e)));
                Some(allowed)
            }
            _ => None,
        };
        let mut rejected = Vec::new();
        for cand in self.candidates(app, &new)? {
            let mut steps = self.steps.clone();
            let mut added: Vec<EdgeId> = Vec::new();
            let mut touched = Vec::new();
            for &(i, step) in &cand {
                steps[i] = Some(step);
                match step {
                    Step::Rep(e) => added.push(e),
                    Step::Shortcut(e) => {
                        if !added.contains(&e) {
                            added.push(e);
                        }
                    }
                }
                let d = cg.edge(self.qe[i]);
                touched.extend([d.a, d.b]);
            }
            touched.sort_unstable();
            touched.dedup();
            let paths = self.closure(&touched, &steps)?;
            for (_, p) in &paths {
                added.extend(p.iter().copied());
            }
            let mut seen = HashSet::new();
            let ok = added.iter().all(|&e| {
                let c = self.color(e);
                !self.edges.contains(&e)
                    && !self.used.contains(&c)
                    && seen.insert(c)
                    && limit.as_ref().is_none_or(|l| l.contains(&c))
            });
            if ok {
                self.steps = steps;
                for (x, _) in &paths {
                    self.closed.insert(*x);
                    self.entered.insert(*x);
                }
                let colors = &self.take.coloring.colors;
                self.used.extend(added.iter().map(|&e| colors[e]));
                self.edges.extend(added);
                return self.check();
            }
            rejected.push(added);
        }
        Err(invariant(
            Invariant::RainbowWitness,
            format!(
                "pair {}-{}: {} at {} has no rainbow extension (tried {:?})",
                self.a,
                self.b,
                app.rule.name(),
                cg.vertex_name(app.center),
                rejected
            ),
        ))
    }

    fn check(&self) -> Result<()> {
        if self.used.len() != self.edges.len() {
            return Err(invariant(
                Invariant::RainbowWitness,
                format!("pair {}-{}: partial path repeats a color", self.a, self.b),
            ));
        }
        for &x in &self.entered {
            let k = self.pos_v[&x];
            for i in [k.wrapping_sub(1), k] {
                if i < self.qe.len() && !matches!(self.steps[i], Some(Step::Rep(_))) {
                    return Err(invariant(
                        Invariant::GuardedTreeEdges,
                        format!("pair {}-{}: entered {} before all its path edges", self.a, self.b, self.take.cg.vertex_name(x)),
                    ));
                }
            }
        }
        Ok(())
    }

    fn finish(self) -> Result<WitnessPath> {
        let g = self.take.g;
        let fail = |msg: &str| invariant(Invariant::RainbowWitness, format!("pair {}-{}: {}", self.a, self.b, msg));
        if self.steps.iter().any(|s| s.is_none()) {
            return Err(fail("some skeleton path edge got no representative"));
        }
        let mut at: HashMap<VertexId, Vec<EdgeId>> = HashMap::new();
        for &e in &self.edges {
            let (u, v) = g.edge(e);
            at.entry(u).or_default().push(e);
            at.entry(v).or_default().push(e);
        }
        let mut path = WitnessPath::single(self.a);
        let mut last = None;
        while path.len() < self.edges.len() {
            let cur = path.end();
            let next = at.get(&cur).and_then(|es| es.iter().copied().find(|&e| Some(e) != last));
            let Some(e) = next else { return Err(fail("edges do not form a path")) };
            last = Some(e);
            path.push_edge(g, e);
        }
        let mut distinct = path.vertices.clone();
        distinct.sort_unstable();
        distinct.dedup();
        if path.end() != self.b || distinct.len() != path.vertices.len() {
            return Err(fail("edges do not form an a-b path"));
        }
        Ok(path)
    }
}

impl Take3<'_> {
    pub fn contracted(&self) -> &ContractedGraph {
        &self.cg
    }

    pub fn skeleton(&self) -> &Skeleton {
        &self.sk
    }

    /// Rainbow path between two vertices of B1, rebuilt from the log with
    /// every invariant checked after each application.
    fn inner_witness(&self, a: VertexId, b: VertexId) -> Result<WitnessPath> {
        if a == b {
            return Ok(WitnessPath::single(a));
        }
        let mut r = Replay::new(self, a, b)?;
        for app in &self.log {
            r.apply(app)?;
        }
        r.finish()
    }

    /// Rainbow path between any two vertices; non-tree leaves enter through
    /// their first global color and leave through the second.
    pub fn witness(&self, a: VertexId, b: VertexId) -> Result<WitnessPath> {
        let (g, cg, sk) = (self.g, &self.cg, &self.sk);
        if a == b {
            return Ok(WitnessPath::single(a));
        }
        let attach = |v: VertexId, second: bool| -> Option<EdgeId> {
            let x = cg.h(v);
            if sk.in_b1(x) {
                return None;
            }
            let reps = cg.edge(sk.parent_edge(x).unwrap()).reps();
            Some(if second { reps[1] } else { reps[0] })
        };
        let head = attach(a, false);
        let tail = attach(b, true);
        let a2 = head.map_or(a, |e| g.other_end(e, a));
        let b2 = tail.map_or(b, |e| g.other_end(e, b));
        let mut path = WitnessPath::single(a);
        if let Some(e) = head {
            path.push_edge(g, e);
        }
        path.extend(&self.inner_witness(a2, b2)?);
        if let Some(e) = tail {
            path.push_edge(g, e);
        }
        Ok(path)
    }

    /// Replays every pair. Returns the number of pairs checked.
    pub fn check_all_pairs(&self, mut visit: impl FnMut(VertexId, VertexId, &WitnessPath)) -> Result<usize> {
        let n = self.g.n();
        let mut count = 0;
        for a in 0..n {
            for b in a + 1..n {
                let p = self.witness(a, b)?;
                visit(a, b, &p);
                count += 1;
            }
        }
        Ok(count)
    }

    /// All pair witnesses at once; quadratic memory.
    pub fn all_witnesses(&self) -> Result<Vec<((VertexId, VertexId), WitnessPath)>> {
        let mut out = Vec::new();
        self.check_all_pairs(|a, b, p| out.push(((a, b), p.clone())))?;
        Ok(out)
    }

    /// One line per application: rule, case, center and the colors it set.
    pub fn trace(&self) -> Vec<String> {
        let (g, cg) = (self.g, &self.cg);
        self.log
            .iter()
            .map(|app| {
                let mut parts = Vec::new();
                if app.rule == Rule::Forest {
                    for e in (0..g.m()).filter(|&e| cg.tree_of_edge(e).is_some()) {
                        let (u, v) = g.edge(e);
                        parts.push(format!("{}-{}={}", g.label(u), g.label(v), self.coloring.colors[e]));
                    }
                }
                for &h in &app.colored {
                    for &e in cg.edge(h).reps() {
                        let (u, v) = g.edge(e);
                        parts.push(format!("{}-{}={}", g.label(u), g.label(v), self.coloring.colors[e]));
                    }
                }
                if let Some(se) = app.shortcut {
                    let (u, v) = g.edge(se);
                    parts.push(format!("{}-{}={} (shortcut)", g.label(u), g.label(v), self.coloring.colors[se]));
                }
                if parts.is_empty() {
                    parts.push("(nothing)".into());
                }
                format!("{}/{} at {}: {}", app.rule.name(), app.case, cg.vertex_name(app.center), parts.join(" "))
            })
            .collect()
    }

    /// Number of applications per rule.
    pub fn rule_counts(&self) -> Vec<(Rule, usize)> {
        Rule::ALL.iter().map(|&r| (r, self.log.iter().filter(|a| a.rule == r).count())).collect()
    }
}
