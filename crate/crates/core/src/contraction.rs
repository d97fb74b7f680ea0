//! The contracted graph H: each forest tree becomes one tree vertex, the other
//! vertices stay. H-vertices `0..t` are the trees (in forest order), followed by
//! the non-tree vertices in increasing G id.

use std::fmt::Write;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::forest::InducedForest;
use crate::graph::{EdgeId, Graph, RootedTree, TreePath, VertexId};

pub type HVertex = usize;
pub type HEdgeId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EdgeKind {
    One,
    Two,
}

impl EdgeKind {
    pub fn tag(self) -> u8 {
        match self {
            EdgeKind::One => 1,
            EdgeKind::Two => 2,
        }
    }
}

#[derive(Debug, Clone)]
pub struct HEdge {
    /// Endpoints with `a < b`; a tree vertex, when present, is `a`.
    pub a: HVertex,
    pub b: HVertex,
    pub kind: EdgeKind,
    /// All G-edges mapped onto this edge, by increasing id.
    pub members: Vec<EdgeId>,
    /// Tree path between the two foots, for 2-edges.
    pub foot_path: Option<TreePath>,
}

impl HEdge {
    /// `(e)_1` then, for 2-edges, `(e)_2`: the lowest-id members.
    pub fn reps(&self) -> &[EdgeId] {
        match self.kind {
            EdgeKind::One => &self.members[..1],
            EdgeKind::Two => &self.members[..2],
        }
    }

    pub fn rep1(&self) -> EdgeId {
        self.members[0]
    }

    pub fn rep2(&self) -> Option<EdgeId> {
        (self.kind == EdgeKind::Two).then(|| self.members[1])
    }

    pub fn other(&self, x: HVertex) -> HVertex {
        if self.a == x {
            self.b
        } else {
            self.a
        }
    }
}

#[derive(Debug, Clone)]
pub struct ContractedGraph {
    t: usize,
    s_vertices: Vec<VertexId>,
    h_of: Vec<HVertex>,
    trees: Vec<RootedTree>,
    edges: Vec<HEdge>,
    adj: Vec<Vec<(HVertex, HEdgeId)>>,
    image: Vec<Option<HEdgeId>>,
    tree_edge: Vec<Option<usize>>,
}

/// Builds H. The forest must be induced and maximal, so that every non-tree
/// vertex has two edges into some tree.
pub fn contract(g: &Graph, forest: &InducedForest) -> Result<ContractedGraph> {
    let t = forest.t();
    let tree_idx = forest.tree_index(g.n());
    let s_vertices: Vec<VertexId> = (0..g.n()).filter(|&v| tree_idx[v].is_none()).collect();
    let mut h_of = vec![0; g.n()];
    for v in 0..g.n() {
        h_of[v] = match tree_idx[v] {
            Some(i) => i,
            None => t + s_vertices.binary_search(&v).unwrap(),
        };
    }
    let trees: Vec<RootedTree> =
        forest.components.iter().map(|c| RootedTree::new(g, c)).collect::<Result<_>>()?;

    let mut image = vec![None; g.m()];
    let mut tree_edge = vec![None; g.m()];
    let mut by_pair: std::collections::BTreeMap<(HVertex, HVertex), Vec<EdgeId>> = Default::default();
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let (hu, hv) = (h_of[u], h_of[v]);
        if hu == hv {
            // both ends in one tree: h(u) = h(v) only happens inside a tree
            tree_edge[e] = Some(hu);
            continue;
        }
        by_pair.entry((hu.min(hv), hu.max(hv))).or_default().push(e);
    }
    let nh = t + s_vertices.len();
    let mut edges = Vec::new();
    let mut adj = vec![Vec::new(); nh];
    for ((a, b), members) in by_pair {
        let kind = if members.len() >= 2 { EdgeKind::Two } else { EdgeKind::One };
        let foot_path = if kind == EdgeKind::Two {
            let f1 = tree_side(g, members[0], a, &h_of);
            let f2 = tree_side(g, members[1], a, &h_of);
            Some(trees[a].path(f1, f2)?)
        } else {
            None
        };
        let id = edges.len();
        for &e in &members {
            image[e] = Some(id);
        }
        edges.push(HEdge { a, b, kind, members, foot_path });
        adj[a].push((b, id));
        adj[b].push((a, id));
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    let cg = ContractedGraph { t, s_vertices, h_of, trees, edges, adj, image, tree_edge };
    for x in t..nh {
        if !cg.adj[x].iter().any(|&(_, h)| cg.edges[h].kind == EdgeKind::Two) {
            return Err(Error::ForestNotMaximal(cg.s_vertices[x - t]));
        }
    }
    Ok(cg)
}

fn tree_side(g: &Graph, e: EdgeId, tree: HVertex, h_of: &[HVertex]) -> VertexId {
    let (u, v) = g.edge(e);
    if h_of[u] == tree {
        u
    } else {
        v
    }
}

impl ContractedGraph {
    pub fn num_vertices(&self) -> usize {
        self.adj.len()
    }

    pub fn num_trees(&self) -> usize {
        self.t
    }

    pub fn edges(&self) -> &[HEdge] {
        &self.edges
    }

    pub fn edge(&self, h: HEdgeId) -> &HEdge {
        &self.edges[h]
    }

    pub fn adjacency(&self, x: HVertex) -> &[(HVertex, HEdgeId)] {
        &self.adj[x]
    }

    pub fn edge_between(&self, x: HVertex, y: HVertex) -> Option<HEdgeId> {
        let list = &self.adj[x];
        list.binary_search_by_key(&y, |&(z, _)| z).ok().map(|i| list[i].1)
    }

    pub fn is_tree_vertex(&self, x: HVertex) -> bool {
        x < self.t
    }

    pub fn tree(&self, i: usize) -> &RootedTree {
        &self.trees[i]
    }

    /// G vertex of a non-tree H-vertex.
    pub fn g_vertex(&self, x: HVertex) -> Option<VertexId> {
        x.checked_sub(self.t).map(|i| self.s_vertices[i])
    }

    pub fn non_tree_vertices(&self) -> &[VertexId] {
        &self.s_vertices
    }

    pub fn h(&self, v: VertexId) -> HVertex {
        self.h_of[v]
    }

    /// Image of a non-tree G edge.
    pub fn h_edge(&self, e: EdgeId) -> Result<HEdgeId> {
        self.image[e].ok_or(Error::TreeEdgeNotMappable(e))
    }

    /// Tree index of an internal tree edge.
    pub fn tree_of_edge(&self, e: EdgeId) -> Option<usize> {
        self.tree_edge[e]
    }

    /// Endpoint of G-edge `e` inside tree vertex `x` (the foot).
    pub fn foot(&self, g: &Graph, e: EdgeId, x: HVertex) -> VertexId {
        tree_side(g, e, x, &self.h_of)
    }

    /// Image of a vertex set.
    pub fn lift_vertices(&self, vs: &[VertexId]) -> Vec<HVertex> {
        let mut out: Vec<HVertex> = vs.iter().map(|&v| self.h_of[v]).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Image of an edge set; tree edges are dropped as h is undefined on them.
    pub fn lift_edges(&self, es: &[EdgeId]) -> Vec<HEdgeId> {
        let mut out: Vec<HEdgeId> = es.iter().filter_map(|&e| self.image[e]).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Image of a G walk given by its vertices, with repeats inside one tree merged.
    pub fn lift_walk(&self, vertices: &[VertexId]) -> Vec<HVertex> {
        let mut out: Vec<HVertex> = Vec::new();
        for &v in vertices {
            let x = self.h_of[v];
            if out.last() != Some(&x) {
                out.push(x);
            }
        }
        out
    }

    pub fn vertex_name(&self, x: HVertex) -> String {
        match self.g_vertex(x) {
            Some(v) => format!("v{v}"),
            None => format!("T{x}"),
        }
    }

    /// Annotated edge list of H with 1/2 tags and representatives.
    pub fn dump(&self, g: &Graph) -> String {
        let mut out = String::new();
        writeln!(out, "# H: {} tree vertices, {} non-tree vertices, {} edges", self.t, self.s_vertices.len(), self.edges.len())
            .unwrap();
        for (i, tree) in self.trees.iter().enumerate() {
            let vs: Vec<String> = tree.vertices().iter().map(|v| v.to_string()).collect();
            writeln!(out, "tree T{i} {{{}}}", vs.join(",")).unwrap();
        }
        for h in &self.edges {
            let reps: Vec<String> = h
                .reps()
                .iter()
                .map(|&e| {
                    let (u, v) = g.edge(e);
                    format!("{u}-{v}")
                })
                .collect();
            writeln!(out, "h {} {} {} {}", self.vertex_name(h.a), self.vertex_name(h.b), h.kind.tag(), reps.join(" "))
                .unwrap();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forest::{heuristic_induced_forest, max_induced_forest};

    #[test]
    fn tree_contracts_to_a_point() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (1, 3)]).unwrap();
        let f = max_induced_forest(&g).unwrap();
        let cg = contract(&g, &f).unwrap();
        assert_eq!(cg.num_vertices(), 1);
        assert!(cg.edges().is_empty());
        assert!(matches!(cg.h_edge(0), Err(Error::TreeEdgeNotMappable(0))));
    }

    #[test]
    fn c4_with_path_forest() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let f = InducedForest::new(&g, &[0, 1, 2]).unwrap();
        let cg = contract(&g, &f).unwrap();
        assert_eq!(cg.num_vertices(), 2);
        assert_eq!(cg.edges().len(), 1);
        let h = cg.edge(0);
        assert_eq!(h.kind, EdgeKind::Two);
        assert_eq!(h.reps(), &[2, 3]);
        assert_eq!(h.foot_path.as_ref().unwrap().vertices, vec![2, 1, 0]);
        assert_eq!(cg.h(3), 1);
        assert_eq!(cg.g_vertex(1), Some(3));
    }

    #[test]
    fn rejects_non_maximal_forest() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let f = InducedForest::new(&g, &[0, 1]).unwrap();
        assert!(matches!(contract(&g, &f), Err(Error::ForestNotMaximal(2))));
    }

    #[test]
    fn lifting() {
        // two triangles joined by an edge; forest {0,1} and {3,4}
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (3, 5)]).unwrap();
        let f = heuristic_induced_forest(&g);
        let cg = contract(&g, &f).unwrap();
        let walk = cg.lift_walk(&(0..6).collect::<Vec<_>>());
        for w in walk.windows(2) {
            assert!(cg.edge_between(w[0], w[1]).is_some());
        }
        for &v in cg.non_tree_vertices() {
            assert_eq!(cg.g_vertex(cg.h(v)), Some(v));
        }
    }
}
