//! The 3f-1 construction: grow the forest into a connected dominating set D,
//! color a spanning tree of G[D] distinctly, and give every outside vertex two
//! private edges into D.

use std::collections::VecDeque;

use crate::coloring::{Color, Construction, RainbowColoring, WitnessPath};
use crate::error::{Error, Result};
use crate::forest::InducedForest;
use crate::graph::{EdgeId, Graph, RootedTree, VertexId};

#[derive(Debug, Clone)]
pub struct DominatingConnector {
    /// Sorted vertices of D, a superset of the forest.
    pub d: Vec<VertexId>,
    /// Non-forest vertices added to connect the trees, in insertion order.
    pub connectors: Vec<VertexId>,
    /// Spanning tree of G[D] as edge ids, increasing.
    pub tree_edges: Vec<EdgeId>,
}

/// Merges the component holding the smallest vertex of D with the nearest
/// other component, through at most two outside vertices, until G[D] is connected.
pub fn connect_forest(g: &Graph, forest: &InducedForest) -> Result<DominatingConnector> {
    if let Some(v) = forest.addable_vertex(g) {
        return Err(Error::ForestNotMaximal(v));
    }
    if !g.is_connected() {
        return Err(Error::DisconnectedGraph);
    }
    let n = g.n();
    let mut in_d = vec![false; n];
    for &v in &forest.vertices {
        in_d[v] = true;
    }
    let mut connectors = Vec::new();
    loop {
        let members: Vec<VertexId> = (0..n).filter(|&v| in_d[v]).collect();
        let comps = g.induced_components(&members);
        if comps.len() <= 1 {
            break;
        }
        let mut in_first = vec![false; n];
        for &v in &comps[0] {
            in_first[v] = true;
        }
        // BFS from the first component through outside vertices
        let mut prev: Vec<Option<VertexId>> = vec![None; n];
        let mut seen = in_first.clone();
        let mut queue: VecDeque<VertexId> = comps[0].iter().copied().collect();
        let mut hit = None;
        'bfs: while let Some(u) = queue.pop_front() {
            for w in g.neighbors(u) {
                if seen[w] {
                    continue;
                }
                seen[w] = true;
                prev[w] = Some(u);
                if in_d[w] {
                    hit = Some(w);
                    break 'bfs;
                }
                queue.push_back(w);
            }
        }
        let mut x = prev[hit.ok_or(Error::DisconnectedGraph)?].unwrap();
        let mut added = Vec::new();
        while !in_d[x] {
            added.push(x);
            x = prev[x].unwrap();
        }
        if added.len() > 2 {
            return Err(Error::PreconditionViolated(format!("connector of size {} between trees", added.len())));
        }
        for &a in added.iter().rev() {
            in_d[a] = true;
            connectors.push(a);
        }
    }
    let d: Vec<VertexId> = (0..n).filter(|&v| in_d[v]).collect();
    let tree = RootedTree::new(g, &d).ok();
    let tree_edges = match tree {
        Some(t) => t.edges(),
        None => bfs_spanning_tree(g, &in_d, d[0]),
    };
    Ok(DominatingConnector { d, connectors, tree_edges })
}

fn bfs_spanning_tree(g: &Graph, in_d: &[bool], root: VertexId) -> Vec<EdgeId> {
    let mut seen = vec![false; g.n()];
    seen[root] = true;
    let mut queue = VecDeque::from([root]);
    let mut edges = Vec::new();
    while let Some(u) = queue.pop_front() {
        for &(w, e) in g.adjacency(u) {
            if in_d[w] && !seen[w] {
                seen[w] = true;
                edges.push(e);
                queue.push_back(w);
            }
        }
    }
    edges.sort_unstable();
    edges
}

/// Result of the 3f-1 construction together with what its witness paths need.
#[derive(Debug, Clone)]
pub struct Take1 {
    pub coloring: RainbowColoring,
    pub connector: DominatingConnector,
    /// `(d1, d2)` for every vertex outside D.
    pub anchors: Vec<Option<(VertexId, VertexId)>>,
}

pub fn color_take1(g: &Graph, dc: &DominatingConnector) -> Take1 {
    let m = g.m();
    let n = g.n();
    let mut colors: Vec<Color> = vec![1; m];
    let mut rules = vec!["filler"; m];
    let mut relevant = vec![false; m];
    for (i, &e) in dc.tree_edges.iter().enumerate() {
        colors[e] = i as Color + 1;
        rules[e] = "connected-tree";
        relevant[e] = true;
    }
    let size = dc.d.len() as Color;
    let mut in_d = vec![false; n];
    for &v in &dc.d {
        in_d[v] = true;
    }
    let mut anchors = vec![None; n];
    for v in 0..n {
        if in_d[v] {
            continue;
        }
        let near: Vec<(VertexId, EdgeId)> = g.adjacency(v).iter().copied().filter(|&(w, _)| in_d[w]).take(2).collect();
        colors[near[0].1] = size;
        rules[near[0].1] = "dominated-first";
        colors[near[1].1] = size + 1;
        rules[near[1].1] = "dominated-second";
        relevant[near[0].1] = true;
        relevant[near[1].1] = true;
        anchors[v] = Some((near[0].0, near[1].0));
    }
    let palette = if dc.d.len() == n { size.saturating_sub(1) } else { size + 1 };
    let coloring = RainbowColoring {
        palette,
        colors,
        rules,
        relevant,
        shortcut_edges: Vec::new(),
        construction: Construction::Take1,
    };
    Take1 { coloring, connector: dc.clone(), anchors }
}

impl Take1 {
    /// `d1(a)`, the spanning-tree path, then `d2(b)`; distinct colors by construction.
    pub fn witness(&self, g: &Graph, a: VertexId, b: VertexId) -> WitnessPath {
        if a == b {
            return WitnessPath::single(a);
        }
        let mut tree_graph = Graph::empty(g.n());
        for &e in &self.connector.tree_edges {
            let (u, v) = g.edge(e);
            tree_graph.add_edge(u, v).unwrap();
        }
        let tree = RootedTree::new(&tree_graph, &self.connector.d).expect("spanning tree of D");
        let start = self.anchors[a].map_or(a, |p| p.0);
        let end = self.anchors[b].map_or(b, |p| p.1);
        let mut path = WitnessPath::single(a);
        if start != a {
            path.push_edge(g, g.edge_between(a, start).unwrap());
        }
        let inner = tree.path(start, end).unwrap();
        for w in inner.vertices.windows(2) {
            path.push_edge(g, g.edge_between(w[0], w[1]).unwrap());
        }
        if end != b {
            path.push_edge(g, g.edge_between(end, b).unwrap());
        }
        path
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forest::{max_induced_forest, InducedForest};

    #[test]
    fn tree_needs_no_connectors() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (1, 3)]).unwrap();
        let f = max_induced_forest(&g).unwrap();
        let dc = connect_forest(&g, &f).unwrap();
        assert!(dc.connectors.is_empty());
        let t1 = color_take1(&g, &dc);
        assert_eq!(t1.coloring.colors_used(), 3);
    }

    #[test]
    fn rejects_non_maximal_forest() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]).unwrap();
        let f = InducedForest::new(&g, &[0, 1, 3, 4]).unwrap();
        assert!(matches!(connect_forest(&g, &f), Err(Error::ForestNotMaximal(2))));
    }

    #[test]
    fn petersen_connector_is_small() {
        let mut e: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        e.extend((0..5).map(|i| (i, i + 5)));
        e.extend((0..5).map(|i| (i + 5, (i + 2) % 5 + 5)));
        let g = Graph::from_edges(10, &e).unwrap();
        let f = max_induced_forest(&g).unwrap();
        let dc = connect_forest(&g, &f).unwrap();
        assert!(dc.connectors.len() <= 2 * f.t() - 2);
        assert_eq!(g.induced_components(&dc.d).len(), 1);
        assert_eq!(dc.tree_edges.len(), dc.d.len() - 1);
    }

    #[test]
    fn k4_uses_three_colors() {
        let g = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let f = max_induced_forest(&g).unwrap();
        let t1 = color_take1(&g, &connect_forest(&g, &f).unwrap());
        assert_eq!(t1.coloring.max_color(), 3);
        for a in 0..4 {
            for b in 0..4 {
                let p = t1.witness(&g, a, b);
                assert_eq!((p.start(), p.end()), (a, b));
            }
        }
    }
}
