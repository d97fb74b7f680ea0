//! Undirected simple graphs with stable vertex and edge ids, plus the tree-path
//! helpers the colorings are built from.

use std::collections::VecDeque;

use crate::error::{Error, Result};

pub type VertexId = usize;
pub type EdgeId = usize;

/// An undirected simple graph. Vertices are `0..n`, edges are numbered in
/// insertion order and stored with the smaller endpoint first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(VertexId, VertexId)>,
    // (neighbor, edge id), sorted by neighbor
    adj: Vec<Vec<(VertexId, EdgeId)>>,
    labels: Option<Vec<String>>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph { n, edges: Vec::new(), adj: vec![Vec::new(); n], labels: None }
    }

    /// Builds a graph from an edge list. Self-loops, repeated pairs and
    /// out-of-range endpoints are rejected.
    pub fn from_edges(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<EdgeId> {
        if u >= self.n || v >= self.n {
            return Err(Error::InvalidGraph(format!("edge {u}-{v} out of range for n={}", self.n)));
        }
        if u == v {
            return Err(Error::InvalidGraph(format!("self-loop at {u}")));
        }
        if self.edge_between(u, v).is_some() {
            return Err(Error::InvalidGraph(format!("parallel edge {u}-{v}")));
        }
        let id = self.edges.len();
        self.edges.push((u.min(v), u.max(v)));
        insert_sorted(&mut self.adj[u], (v, id));
        insert_sorted(&mut self.adj[v], (u, id));
        Ok(id)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.n);
        self.labels = Some(labels);
        self
    }

    pub fn label(&self, v: VertexId) -> String {
        match &self.labels {
            Some(l) => l[v].clone(),
            None => v.to_string(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edge(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[e]
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v].len()
    }

    /// Neighbors with the connecting edge id, sorted by neighbor.
    pub fn adjacency(&self, v: VertexId) -> &[(VertexId, EdgeId)] {
        &self.adj[v]
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.adj[v].iter().map(|&(w, _)| w)
    }

    pub fn edge_between(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        let list = self.adj.get(u)?;
        list.binary_search_by_key(&v, |&(w, _)| w).ok().map(|i| list[i].1)
    }

    pub fn other_end(&self, e: EdgeId, v: VertexId) -> VertexId {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            debug_assert_eq!(b, v);
            a
        }
    }

    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        self.bfs_distances(0).iter().all(|d| d.is_some())
    }

    pub fn bfs_distances(&self, s: VertexId) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        let mut queue = VecDeque::new();
        dist[s] = Some(0);
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap();
            for &(w, _) in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Length in edges of a longest shortest path.
    pub fn diameter(&self) -> Result<usize> {
        let mut best = 0;
        for s in 0..self.n {
            for d in self.bfs_distances(s) {
                best = best.max(d.ok_or(Error::DisconnectedGraph)?);
            }
        }
        Ok(best)
    }

    /// True if the subgraph induced by `set` has no cycle.
    pub fn induces_forest(&self, set: &[VertexId]) -> bool {
        let mut inside = vec![false; self.n];
        for &v in set {
            inside[v] = true;
        }
        let mut dsu = Dsu::new(self.n);
        for &(u, v) in &self.edges {
            if inside[u] && inside[v] && !dsu.union(u, v) {
                return false;
            }
        }
        true
    }

    /// Connected components of the subgraph induced by `set`, each sorted,
    /// ordered by smallest vertex.
    pub fn induced_components(&self, set: &[VertexId]) -> Vec<Vec<VertexId>> {
        let mut inside = vec![false; self.n];
        for &v in set {
            inside[v] = true;
        }
        let mut seen = vec![false; self.n];
        let mut comps = Vec::new();
        for s in 0..self.n {
            if !inside[s] || seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for &(w, _) in &self.adj[u] {
                    if inside[w] && !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }
}

fn insert_sorted(list: &mut Vec<(VertexId, EdgeId)>, item: (VertexId, EdgeId)) {
    let pos = list.partition_point(|&(w, _)| w < item.0);
    list.insert(pos, item);
}

/// Union-find with path halving.
#[derive(Debug, Clone)]
pub(crate) struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    pub(crate) fn new(n: usize) -> Self {
        Dsu { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if `a` and `b` were already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

/// A path inside one tree: `vertices[i]` and `vertices[i + 1]` are joined by `edges[i]`.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct TreePath {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
}

impl TreePath {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains_edge(&self, e: EdgeId) -> bool {
        self.edges.contains(&e)
    }

    pub fn reversed(&self) -> TreePath {
        let mut vertices = self.vertices.clone();
        let mut edges = self.edges.clone();
        vertices.reverse();
        edges.reverse();
        TreePath { vertices, edges }
    }
}

/// One tree of a forest, rooted at its smallest vertex, for fast path queries.
#[derive(Debug, Clone)]
pub struct RootedTree {
    vertices: Vec<VertexId>,
    // indexed by global vertex id; None outside the tree
    parent: Vec<Option<(VertexId, EdgeId)>>,
    depth: Vec<usize>,
    inside: Vec<bool>,
}

impl RootedTree {
    /// Fails with `NotATree` unless `tree_vertices` induces a connected acyclic subgraph.
    pub fn new(g: &Graph, tree_vertices: &[VertexId]) -> Result<Self> {
        if tree_vertices.is_empty() {
            return Err(Error::NotATree);
        }
        let mut inside = vec![false; g.n()];
        for &v in tree_vertices {
            if v >= g.n() {
                return Err(Error::VertexOutsideTree(v));
            }
            inside[v] = true;
        }
        let mut vertices: Vec<VertexId> = tree_vertices.to_vec();
        vertices.sort_unstable();
        vertices.dedup();
        let internal = g.edges().iter().filter(|&&(a, b)| inside[a] && inside[b]).count();
        if internal + 1 != vertices.len() {
            return Err(Error::NotATree);
        }
        let mut parent = vec![None; g.n()];
        let mut depth = vec![0; g.n()];
        let mut seen = vec![false; g.n()];
        let root = vertices[0];
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for &(w, e) in g.adjacency(u) {
                if inside[w] && !seen[w] {
                    seen[w] = true;
                    parent[w] = Some((u, e));
                    depth[w] = depth[u] + 1;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        if count != vertices.len() {
            return Err(Error::NotATree);
        }
        Ok(RootedTree { vertices, parent, depth, inside })
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.inside.get(v).copied().unwrap_or(false)
    }

    /// Internal edges of the tree, in increasing id order.
    pub fn edges(&self) -> Vec<EdgeId> {
        let mut es: Vec<EdgeId> = self.vertices.iter().filter_map(|&v| self.parent[v].map(|p| p.1)).collect();
        es.sort_unstable();
        es
    }

    pub fn distance(&self, u: VertexId, v: VertexId) -> Result<usize> {
        Ok(self.path(u, v)?.len())
    }

    pub fn path(&self, u: VertexId, v: VertexId) -> Result<TreePath> {
        for x in [u, v] {
            if !self.contains(x) {
                return Err(Error::VertexOutsideTree(x));
            }
        }
        let (mut a, mut b) = (u, v);
        let mut front = (vec![a], Vec::new());
        let mut back = (vec![b], Vec::new());
        while self.depth[a] > self.depth[b] {
            let (p, e) = self.parent[a].unwrap();
            front.0.push(p);
            front.1.push(e);
            a = p;
        }
        while self.depth[b] > self.depth[a] {
            let (p, e) = self.parent[b].unwrap();
            back.0.push(p);
            back.1.push(e);
            b = p;
        }
        while a != b {
            let (pa, ea) = self.parent[a].unwrap();
            let (pb, eb) = self.parent[b].unwrap();
            front.0.push(pa);
            front.1.push(ea);
            back.0.push(pb);
            back.1.push(eb);
            a = pa;
            b = pb;
        }
        back.0.pop();
        let mut vertices = front.0;
        vertices.extend(back.0.into_iter().rev());
        let mut edges = front.1;
        edges.extend(back.1.into_iter().rev());
        Ok(TreePath { vertices, edges })
    }

    /// Distance from `v` to the nearest vertex of `path`.
    pub fn distance_to_path(&self, v: VertexId, path: &TreePath) -> Result<usize> {
        let mut best = usize::MAX;
        for &p in &path.vertices {
            best = best.min(self.distance(v, p)?);
        }
        Ok(best)
    }
}

/// The unique `u`-`v` path inside the tree induced by `tree_vertices`.
pub fn tree_path(g: &Graph, tree_vertices: &[VertexId], u: VertexId, v: VertexId) -> Result<TreePath> {
    RootedTree::new(g, tree_vertices)?.path(u, v)
}

/// Given `e` on the tree path between `v2` and `v3`, returns whichever of the
/// paths from `v1` to `v2` or to `v3` avoids `e`, preferring `v2`.
pub fn path_avoiding_edge(
    g: &Graph,
    tree_vertices: &[VertexId],
    v1: VertexId,
    v2: VertexId,
    v3: VertexId,
    e: EdgeId,
) -> Result<TreePath> {
    let tree = RootedTree::new(g, tree_vertices)?;
    if !tree.path(v2, v3)?.contains_edge(e) {
        return Err(Error::PreconditionViolated(format!("edge {e} is not on the path {v2}-{v3}")));
    }
    let p2 = tree.path(v1, v2)?;
    if !p2.contains_edge(e) {
        return Ok(p2);
    }
    let p3 = tree.path(v1, v3)?;
    if !p3.contains_edge(e) {
        return Ok(p3);
    }
    Err(Error::PreconditionViolated(format!("both paths from {v1} contain edge {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path_graph(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn rejects_loops_and_parallel_edges() {
        assert!(Graph::from_edges(3, &[(0, 0)]).is_err());
        assert!(Graph::from_edges(3, &[(0, 1), (1, 0)]).is_err());
        assert!(Graph::from_edges(2, &[(0, 2)]).is_err());
    }

    #[test]
    fn connectivity() {
        assert!(path_graph(3).is_connected());
        assert!(!Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap().is_connected());
        assert!(Graph::empty(1).is_connected());
        let k5: Vec<_> = (0..5).flat_map(|i| (i + 1..5).map(move |j| (i, j))).collect();
        assert!(Graph::from_edges(5, &k5).unwrap().is_connected());
    }

    #[test]
    fn diameters() {
        let k4: Vec<_> = (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j))).collect();
        assert_eq!(Graph::from_edges(4, &k4).unwrap().diameter().unwrap(), 1);
        assert_eq!(path_graph(5).diameter().unwrap(), 4);
        let sun = Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (0, 3), (1, 4), (2, 5)]).unwrap();
        assert_eq!(sun.diameter().unwrap(), 3);
        assert_eq!(Graph::empty(1).diameter().unwrap(), 0);
        assert!(matches!(Graph::empty(2).diameter(), Err(Error::DisconnectedGraph)));
    }

    #[test]
    fn tree_paths() {
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let all = [0, 1, 2, 3];
        assert_eq!(tree_path(&star, &all, 0, 2).unwrap().len(), 1);
        let p = tree_path(&star, &all, 1, 3).unwrap();
        assert_eq!(p.vertices, vec![1, 0, 3]);
        assert_eq!(tree_path(&star, &all, 2, 2).unwrap().vertices, vec![2]);

        let p5 = path_graph(5);
        assert_eq!(tree_path(&p5, &[0, 1, 2, 3, 4], 0, 4).unwrap().vertices, vec![0, 1, 2, 3, 4]);
        assert!(matches!(tree_path(&p5, &[0, 1, 3], 0, 1), Err(Error::NotATree)));
        assert!(matches!(tree_path(&p5, &[0, 1], 0, 3), Err(Error::VertexOutsideTree(3))));
    }

    #[test]
    fn spider_leaf_to_leaf_goes_through_center() {
        // center 0, legs 0-1-2, 0-3-4, 0-5-6
        let g = Graph::from_edges(7, &[(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)]).unwrap();
        let all: Vec<_> = (0..7).collect();
        assert_eq!(tree_path(&g, &all, 2, 6).unwrap().vertices, vec![2, 1, 0, 5, 6]);
    }

    #[test]
    fn avoiding_edge_forced_choices() {
        let p3 = path_graph(3);
        let bc = p3.edge_between(1, 2).unwrap();
        let p = path_avoiding_edge(&p3, &[0, 1, 2], 0, 1, 2, bc).unwrap();
        assert_eq!(p.vertices, vec![0, 1]);

        let star = Graph::from_edges(3, &[(0, 1), (0, 2)]).unwrap();
        let sy = star.edge_between(0, 2).unwrap();
        let p = path_avoiding_edge(&star, &[0, 1, 2], 1, 0, 2, sy).unwrap();
        assert_eq!(p.vertices, vec![1, 0]);

        let ab = p3.edge_between(0, 1).unwrap();
        assert!(path_avoiding_edge(&p3, &[0, 1, 2], 0, 1, 2, ab).is_err());
    }
}
