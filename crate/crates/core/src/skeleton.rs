//! Skeletons: spanning in-arborescences of H rooted at a tree vertex.
//!
//! The Take-2 skeleton maximizes the number of 2-edges. The Take-3 skeleton is
//! a fixpoint of single-edge exchanges under the configuration vector
//! `<|E2(B)|, degree sum at level 1, degree sum at level 2, ...>`, with every
//! tree vertex tried as root.

use std::collections::VecDeque;
use std::fmt::Write;

use crate::contraction::{ContractedGraph, EdgeKind, HEdgeId, HVertex};
use crate::error::{Error, Result};
use crate::graph::Dsu;

pub const EXHAUSTIVE_CAP: usize = 9;

#[derive(Debug, Clone)]
pub struct Skeleton {
    root: HVertex,
    parent: Vec<Option<(HVertex, HEdgeId)>>,
    children: Vec<Vec<HVertex>>,
    level: Vec<usize>,
    in_b1: Vec<bool>,
    leaves_s: Vec<HVertex>,
    edges: Vec<HEdgeId>,
    config: Vec<usize>,
}

impl Skeleton {
    /// Orients the spanning tree given by `edges` toward `root`.
    pub fn from_edges(cg: &ContractedGraph, root: HVertex, edges: &[HEdgeId]) -> Result<Self> {
        let nh = cg.num_vertices();
        if !cg.is_tree_vertex(root) {
            return Err(Error::NoTreeVertex);
        }
        let mut adj = vec![Vec::new(); nh];
        for &h in edges {
            let e = cg.edge(h);
            adj[e.a].push((e.b, h));
            adj[e.b].push((e.a, h));
        }
        let mut parent = vec![None; nh];
        let mut level = vec![0; nh];
        let mut children = vec![Vec::new(); nh];
        level[root] = 1;
        let mut queue = VecDeque::from([root]);
        let mut count = 1;
        while let Some(x) = queue.pop_front() {
            for &(y, h) in &adj[x] {
                if level[y] == 0 {
                    level[y] = level[x] + 1;
                    parent[y] = Some((x, h));
                    children[x].push(y);
                    count += 1;
                    queue.push_back(y);
                }
            }
        }
        if count != nh || edges.len() + 1 != nh {
            return Err(Error::SkeletonInvariantViolated("edge set is not a spanning tree of H".into()));
        }
        for c in &mut children {
            c.sort_unstable();
        }
        let leaves_s: Vec<HVertex> =
            (0..nh).filter(|&x| !cg.is_tree_vertex(x) && adj[x].len() == 1).collect();
        let mut in_b1 = vec![true; nh];
        for &x in &leaves_s {
            in_b1[x] = false;
        }
        let mut sorted = edges.to_vec();
        sorted.sort_unstable();
        let config = config_vector(cg, &level, &adj.iter().map(|a| a.len()).collect::<Vec<_>>(), &sorted);
        Ok(Skeleton { root, parent, children, level, in_b1, leaves_s, edges: sorted, config })
    }

    pub fn root(&self) -> HVertex {
        self.root
    }

    pub fn parent(&self, x: HVertex) -> Option<HVertex> {
        self.parent[x].map(|p| p.0)
    }

    /// The outgoing edge of `x`, toward the root.
    pub fn parent_edge(&self, x: HVertex) -> Option<HEdgeId> {
        self.parent[x].map(|p| p.1)
    }

    pub fn children(&self, x: HVertex) -> &[HVertex] {
        &self.children[x]
    }

    pub fn level(&self, x: HVertex) -> usize {
        self.level[x]
    }

    pub fn edges(&self) -> &[HEdgeId] {
        &self.edges
    }

    pub fn two_edge_count(&self) -> usize {
        self.config[0]
    }

    pub fn config_vector(&self) -> &[usize] {
        &self.config
    }

    /// Non-tree leaves of B.
    pub fn leaves_s(&self) -> &[HVertex] {
        &self.leaves_s
    }

    pub fn in_b1(&self, x: HVertex) -> bool {
        self.in_b1[x]
    }

    /// Neighbors of `x` in B1 with the connecting edge: parent first, then children.
    pub fn b1_neighbors(&self, x: HVertex) -> Vec<(HVertex, HEdgeId)> {
        let mut out = Vec::new();
        if !self.in_b1[x] {
            return out;
        }
        if let Some(p) = self.parent[x] {
            out.push(p);
        }
        for &c in &self.children[x] {
            if self.in_b1[c] {
                out.push((c, self.parent[c].unwrap().1));
            }
        }
        out
    }

    pub fn b1_degree(&self, x: HVertex) -> usize {
        self.b1_neighbors(x).len()
    }

    /// Edges of B1.
    pub fn b1_edges(&self) -> Vec<HEdgeId> {
        (0..self.parent.len())
            .filter(|&x| self.in_b1[x])
            .filter_map(|x| self.parent[x].map(|p| p.1))
            .collect()
    }

    pub fn is_b1_edge(&self, h: HEdgeId, cg: &ContractedGraph) -> bool {
        let e = cg.edge(h);
        self.in_b1[e.a] && self.in_b1[e.b] && (self.parent_edge(e.a) == Some(h) || self.parent_edge(e.b) == Some(h))
    }

    pub fn is_b_edge(&self, h: HEdgeId) -> bool {
        self.edges.binary_search(&h).is_ok()
    }

    /// Path in B1 between two B1 vertices, as vertices and edges.
    pub fn b1_path(&self, x: HVertex, y: HVertex) -> Result<(Vec<HVertex>, Vec<HEdgeId>)> {
        for z in [x, y] {
            if !self.in_b1[z] {
                return Err(Error::VertexNotInB1(z));
            }
        }
        let (mut a, mut b) = (x, y);
        let (mut fv, mut fe) = (vec![a], Vec::new());
        let (mut bv, mut be) = (vec![b], Vec::new());
        while self.level[a] > self.level[b] {
            let (p, h) = self.parent[a].unwrap();
            fv.push(p);
            fe.push(h);
            a = p;
        }
        while self.level[b] > self.level[a] {
            let (p, h) = self.parent[b].unwrap();
            bv.push(p);
            be.push(h);
            b = p;
        }
        while a != b {
            let (pa, ha) = self.parent[a].unwrap();
            let (pb, hb) = self.parent[b].unwrap();
            fv.push(pa);
            fe.push(ha);
            bv.push(pb);
            be.push(hb);
            a = pa;
            b = pb;
        }
        bv.pop();
        fv.extend(bv.into_iter().rev());
        fe.extend(be.into_iter().rev());
        Ok((fv, fe))
    }

    /// `u`'s ancestors include `v`.
    pub fn is_ancestor(&self, v: HVertex, mut u: HVertex) -> bool {
        while let Some(p) = self.parent(u) {
            if p == v {
                return true;
            }
            u = p;
        }
        false
    }

    /// Vertex set of the component of B1 minus `u` that contains `v`.
    pub fn subtree_st(&self, u: HVertex, v: HVertex) -> Result<Vec<HVertex>> {
        let order = self.bfs_avoiding(u, v)?;
        let mut out: Vec<HVertex> = order.into_iter().map(|(x, _)| x).collect();
        out.sort_unstable();
        Ok(out)
    }

    /// Tree vertex of `st(u, v)` closest to `v` in B1, ties to the smallest id.
    pub fn closest_tree_vertex_ct(&self, cg: &ContractedGraph, u: HVertex, v: HVertex) -> Result<HVertex> {
        let order = self.bfs_avoiding(u, v)?;
        order
            .into_iter()
            .filter(|&(x, _)| cg.is_tree_vertex(x))
            .min_by_key(|&(x, d)| (d, x))
            .map(|(x, _)| x)
            .ok_or(Error::NoTreeVertex)
    }

    fn bfs_avoiding(&self, u: HVertex, v: HVertex) -> Result<Vec<(HVertex, usize)>> {
        for z in [u, v] {
            if z >= self.in_b1.len() || !self.in_b1[z] {
                return Err(Error::VertexNotInB1(z));
            }
        }
        if u == v {
            return Err(Error::PreconditionViolated("st(u, v) needs u != v".into()));
        }
        let mut dist = vec![usize::MAX; self.in_b1.len()];
        dist[v] = 0;
        dist[u] = 0;
        let mut order = vec![(v, 0)];
        let mut i = 0;
        while i < order.len() {
            let (x, d) = order[i];
            i += 1;
            for (y, _) in self.b1_neighbors(x) {
                if dist[y] == usize::MAX {
                    dist[y] = d + 1;
                    order.push((y, d + 1));
                }
            }
        }
        Ok(order)
    }

    /// Checks the properties every 2-edge-maximal skeleton has: every non-tree
    /// vertex has an incident 2-edge in B, non-tree leaves hang on 2-edges,
    /// B1 leaves are tree vertices, and the tail of every B1 1-edge is a tree
    /// vertex or has a tree child over a 2-edge.
    pub fn check_invariants(&self, cg: &ContractedGraph) -> Result<()> {
        let nh = cg.num_vertices();
        let kind = |h: HEdgeId| cg.edge(h).kind;
        let violated = |msg: String| Err(Error::SkeletonInvariantViolated(msg));
        for x in 0..nh {
            if cg.is_tree_vertex(x) {
                continue;
            }
            let mut incident: Vec<HEdgeId> = self.children[x].iter().map(|&c| self.parent[c].unwrap().1).collect();
            incident.extend(self.parent_edge(x));
            if !incident.iter().any(|&h| kind(h) == EdgeKind::Two) {
                return violated(format!("non-tree vertex {} has no 2-edge in B", cg.vertex_name(x)));
            }
        }
        for &x in &self.leaves_s {
            if kind(self.parent_edge(x).unwrap()) != EdgeKind::Two {
                return violated(format!("leaf {} hangs on a 1-edge", cg.vertex_name(x)));
            }
        }
        let b1_count = self.in_b1.iter().filter(|&&b| b).count();
        for x in 0..nh {
            if self.in_b1[x] && b1_count > 1 && self.b1_degree(x) == 1 && !cg.is_tree_vertex(x) {
                return violated(format!("B1 leaf {} is not a tree vertex", cg.vertex_name(x)));
            }
        }
        for x in 0..nh {
            if !self.in_b1[x] || cg.is_tree_vertex(x) {
                continue;
            }
            if let Some(h) = self.parent_edge(x) {
                if kind(h) == EdgeKind::One && self.tree_child_over_two_edge(cg, x).is_none() {
                    return violated(format!("1-edge tail {} has no tree child over a 2-edge", cg.vertex_name(x)));
                }
            }
        }
        Ok(())
    }

    /// Smallest-id tree child of `x` joined to it by a 2-edge.
    pub fn tree_child_over_two_edge(&self, cg: &ContractedGraph, x: HVertex) -> Option<HVertex> {
        self.children[x]
            .iter()
            .copied()
            .find(|&c| cg.is_tree_vertex(c) && cg.edge(self.parent[c].unwrap().1).kind == EdgeKind::Two)
    }

    /// Parent list with 1/2 tags and the configuration vector.
    pub fn dump(&self, cg: &ContractedGraph) -> String {
        let mut out = String::new();
        writeln!(out, "root {}", cg.vertex_name(self.root)).unwrap();
        let cv: Vec<String> = self.config.iter().map(|c| c.to_string()).collect();
        writeln!(out, "config <{}>", cv.join(",")).unwrap();
        for x in 0..self.parent.len() {
            if let Some((p, h)) = self.parent[x] {
                let leaf = if self.in_b1[x] { "" } else { " leaf" };
                writeln!(
                    out,
                    "{} -> {} {} level {}{}",
                    cg.vertex_name(x),
                    cg.vertex_name(p),
                    cg.edge(h).kind.tag(),
                    self.level[x],
                    leaf
                )
                .unwrap();
            }
        }
        out
    }
}

fn config_vector(cg: &ContractedGraph, level: &[usize], deg: &[usize], edges: &[HEdgeId]) -> Vec<usize> {
    let nh = level.len();
    let mut v = vec![0; nh + 1];
    v[0] = edges.iter().filter(|&&h| cg.edge(h).kind == EdgeKind::Two).count();
    for x in 0..nh {
        v[level[x]] += deg[x];
    }
    v
}

/// Spanning tree with the most 2-edges (Kruskal, 2-edges first), rooted at the
/// smallest tree vertex.
pub fn build_skeleton_take2(cg: &ContractedGraph) -> Result<Skeleton> {
    if cg.num_trees() == 0 {
        return Err(Error::NoTreeVertex);
    }
    let edges = max_two_edge_spanning_tree(cg);
    Skeleton::from_edges(cg, 0, &edges)
}

fn max_two_edge_spanning_tree(cg: &ContractedGraph) -> Vec<HEdgeId> {
    let mut order: Vec<HEdgeId> = (0..cg.edges().len()).collect();
    order.sort_by_key(|&h| (cg.edge(h).kind == EdgeKind::One, h));
    let mut dsu = Dsu::new(cg.num_vertices());
    order.into_iter().filter(|&h| dsu.union(cg.edge(h).a, cg.edge(h).b)).collect()
}

/// Exchange local search under the configuration vector, run from every tree
/// vertex as root; the best fixpoint wins, ties to the smaller root.
pub fn build_skeleton_take3(cg: &ContractedGraph) -> Result<Skeleton> {
    if cg.num_trees() == 0 {
        return Err(Error::NoTreeVertex);
    }
    let start = max_two_edge_spanning_tree(cg);
    let mut best: Option<Skeleton> = None;
    for root in 0..cg.num_trees() {
        let sk = local_search(cg, root, start.clone())?;
        if best.as_ref().is_none_or(|b| sk.config > b.config) {
            best = Some(sk);
        }
    }
    Ok(best.unwrap())
}

fn local_search(cg: &ContractedGraph, root: HVertex, mut edges: Vec<HEdgeId>) -> Result<Skeleton> {
    let mut current = Skeleton::from_edges(cg, root, &edges)?;
    loop {
        let mut best: Option<(Vec<usize>, Vec<HEdgeId>)> = None;
        for (x, out) in improving_candidates(cg, &current) {
            let mut cand: Vec<HEdgeId> = edges.iter().copied().filter(|&h| h != out).collect();
            cand.push(x);
            let sk = Skeleton::from_edges(cg, root, &cand)?;
            if sk.config > current.config && best.as_ref().is_none_or(|b| sk.config > b.0) {
                best = Some((sk.config.clone(), cand));
            }
        }
        match best {
            Some((_, cand)) => {
                edges = cand;
                current = Skeleton::from_edges(cg, root, &edges)?;
            }
            None => return Ok(current),
        }
    }
}

/// All single exchanges (added edge, removed edge) that keep a spanning tree.
fn improving_candidates(cg: &ContractedGraph, sk: &Skeleton) -> Vec<(HEdgeId, HEdgeId)> {
    let mut out = Vec::new();
    for h in 0..cg.edges().len() {
        if sk.is_b_edge(h) {
            continue;
        }
        // removing any edge on the tree path between the endpoints keeps a tree
        let e = cg.edge(h);
        let path = tree_path_edges(sk, e.a, e.b);
        for r in path {
            out.push((h, r));
        }
    }
    out
}

fn tree_path_edges(sk: &Skeleton, x: HVertex, y: HVertex) -> Vec<HEdgeId> {
    let (mut a, mut b) = (x, y);
    let mut out = Vec::new();
    while sk.level[a] > sk.level[b] {
        let (p, h) = sk.parent[a].unwrap();
        out.push(h);
        a = p;
    }
    while sk.level[b] > sk.level[a] {
        let (p, h) = sk.parent[b].unwrap();
        out.push(h);
        b = p;
    }
    while a != b {
        let (pa, ha) = sk.parent[a].unwrap();
        let (pb, hb) = sk.parent[b].unwrap();
        out.push(ha);
        out.push(hb);
        a = pa;
        b = pb;
    }
    out
}

/// Every spanning tree of H, for small H.
pub fn all_spanning_trees(cg: &ContractedGraph) -> Result<Vec<Vec<HEdgeId>>> {
    let nh = cg.num_vertices();
    if nh > EXHAUSTIVE_CAP {
        return Err(Error::InstanceTooLarge { what: "H vertex count for exhaustive skeletons", size: nh, cap: EXHAUSTIVE_CAP });
    }
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    spanning_rec(cg, 0, &mut chosen, &mut out);
    Ok(out)
}

fn spanning_rec(cg: &ContractedGraph, i: usize, chosen: &mut Vec<HEdgeId>, out: &mut Vec<Vec<HEdgeId>>) {
    let need = cg.num_vertices() - 1;
    if chosen.len() == need {
        out.push(chosen.clone());
        return;
    }
    if cg.edges().len() - i < need - chosen.len() {
        return;
    }
    let mut dsu = Dsu::new(cg.num_vertices());
    for &h in chosen.iter() {
        dsu.union(cg.edge(h).a, cg.edge(h).b);
    }
    if dsu.find(cg.edge(i).a) != dsu.find(cg.edge(i).b) {
        chosen.push(i);
        spanning_rec(cg, i + 1, chosen, out);
        chosen.pop();
    }
    spanning_rec(cg, i + 1, chosen, out);
}

/// The lexicographically best skeleton over all spanning trees and roots.
pub fn exhaustive_best_skeleton(cg: &ContractedGraph) -> Result<Skeleton> {
    if cg.num_trees() == 0 {
        return Err(Error::NoTreeVertex);
    }
    let mut best: Option<Skeleton> = None;
    for edges in all_spanning_trees(cg)? {
        for root in 0..cg.num_trees() {
            let sk = Skeleton::from_edges(cg, root, &edges)?;
            if best.as_ref().is_none_or(|b| sk.config > b.config) {
                best = Some(sk);
            }
        }
    }
    Ok(best.unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contraction::contract;
    use crate::forest::{max_induced_forest_min_components, InducedForest};
    use crate::graph::Graph;

    fn star_h(k: usize) -> (Graph, ContractedGraph) {
        // tree = path 0-1, k outside vertices each adjacent to both 0 and 1
        let mut e = vec![(0, 1)];
        for i in 0..k {
            e.push((0, 2 + i));
            e.push((1, 2 + i));
        }
        let g = Graph::from_edges(2 + k, &e).unwrap();
        let f = InducedForest::new(&g, &[0, 1]).unwrap();
        let cg = contract(&g, &f).unwrap();
        (g, cg)
    }

    #[test]
    fn star_of_two_edges() {
        let (_, cg) = star_h(3);
        let sk = build_skeleton_take3(&cg).unwrap();
        assert_eq!(sk.root(), 0);
        assert_eq!(sk.config_vector(), &[3, 3, 3, 0, 0]);
        assert_eq!(sk.leaves_s().len(), 3);
        sk.check_invariants(&cg).unwrap();
    }

    #[test]
    fn single_vertex_h() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let f = max_induced_forest_min_components(&g).unwrap();
        let cg = contract(&g, &f).unwrap();
        let sk = build_skeleton_take2(&cg).unwrap();
        assert!(sk.edges().is_empty());
        assert_eq!(sk.b1_edges().len(), 0);
        sk.check_invariants(&cg).unwrap();
    }

    #[test]
    fn st_and_ct_on_a_chain() {
        // H = T0 - v - T1 where v is adjacent to both ends of two single edges
        let g = Graph::from_edges(5, &[(0, 1), (2, 3), (4, 0), (4, 1), (4, 2), (4, 3)]).unwrap();
        let f = InducedForest::new(&g, &[0, 1, 2, 3]).unwrap();
        let cg = contract(&g, &f).unwrap();
        let sk = Skeleton::from_edges(&cg, 0, &[0, 1]).unwrap();
        let v = cg.h(4);
        assert_eq!(sk.subtree_st(v, 1).unwrap(), vec![1]);
        assert_eq!(sk.subtree_st(v, 0).unwrap(), vec![0]);
        assert_eq!(sk.subtree_st(0, v).unwrap(), vec![1, v]);
        assert_eq!(sk.closest_tree_vertex_ct(&cg, 0, v).unwrap(), 1);
        assert_eq!(sk.closest_tree_vertex_ct(&cg, v, 1).unwrap(), 1);
        assert!(matches!(sk.subtree_st(0, 0), Err(Error::PreconditionViolated(_))));
    }
}
