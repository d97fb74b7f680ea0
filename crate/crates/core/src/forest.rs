//! Maximum induced forests: exact branch and bound, the minimum-component
//! variant, a greedy maximal forest, and the feedback-vertex-set and
//! induced-tree oracles.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Dsu, Graph, VertexId};

pub const EXACT_CAP: usize = 24;
pub const MIN_COMPONENTS_CAP: usize = 18;

/// A vertex set inducing an acyclic subgraph, split into its trees. Trees are
/// ordered by their smallest vertex, which is also their index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InducedForest {
    #[serde(rename = "F")]
    pub vertices: Vec<VertexId>,
    pub components: Vec<Vec<VertexId>>,
}

impl InducedForest {
    pub fn new(g: &Graph, vertices: &[VertexId]) -> Result<Self> {
        let mut vs = vertices.to_vec();
        vs.sort_unstable();
        vs.dedup();
        if vs.iter().any(|&v| v >= g.n()) {
            return Err(Error::InvalidParams("forest vertex out of range".into()));
        }
        if !g.induces_forest(&vs) {
            return Err(Error::PreconditionViolated("vertex set induces a cycle".into()));
        }
        let components = g.induced_components(&vs);
        Ok(InducedForest { vertices: vs, components })
    }

    pub fn f_value(&self) -> usize {
        self.vertices.len()
    }

    pub fn t(&self) -> usize {
        self.components.len()
    }

    /// Tree index for every vertex of the graph, `None` for non-forest vertices.
    pub fn tree_index(&self, n: usize) -> Vec<Option<usize>> {
        let mut idx = vec![None; n];
        for (i, comp) in self.components.iter().enumerate() {
            for &v in comp {
                idx[v] = Some(i);
            }
        }
        idx
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    /// First outside vertex that could be added without creating a cycle.
    pub fn addable_vertex(&self, g: &Graph) -> Option<VertexId> {
        let idx = self.tree_index(g.n());
        (0..g.n()).filter(|&v| idx[v].is_none()).find(|&v| {
            let mut seen = Vec::new();
            for w in g.neighbors(v) {
                if let Some(t) = idx[w] {
                    if seen.contains(&t) {
                        return false;
                    }
                    seen.push(t);
                }
            }
            true
        })
    }

    pub fn is_maximal(&self, g: &Graph) -> bool {
        self.addable_vertex(g).is_none()
    }
}

pub fn is_induced_forest(g: &Graph, s: &[VertexId]) -> bool {
    g.induces_forest(s)
}

fn check_cap(g: &Graph, cap: usize, what: &'static str) -> Result<()> {
    if g.n() > cap || g.n() > 64 {
        return Err(Error::InstanceTooLarge { what, size: g.n(), cap: cap.min(64) });
    }
    Ok(())
}

/// Depth-first search over include/exclude decisions in vertex order, keeping
/// component labels so that acyclicity is checked when a vertex is included.
struct Search<'a> {
    g: &'a Graph,
    n: usize,
    // label of the component of each chosen vertex, usize::MAX if unchosen
    label: Vec<usize>,
    chosen: Vec<VertexId>,
    target: usize,
    best: usize,
    best_set: Vec<VertexId>,
    // collect every forest of size `target` when set
    collect: Option<Vec<Vec<VertexId>>>,
}

impl<'a> Search<'a> {
    fn new(g: &'a Graph) -> Self {
        Search {
            g,
            n: g.n(),
            label: vec![usize::MAX; g.n()],
            chosen: Vec::new(),
            target: 0,
            best: 0,
            best_set: Vec::new(),
            collect: None,
        }
    }

    fn run(&mut self, i: usize) {
        let remaining = self.n - i;
        let bound = self.chosen.len() + remaining;
        match &self.collect {
            Some(_) if bound < self.target => return,
            None if bound <= self.best && !self.best_set.is_empty() => return,
            _ => {}
        }
        if i == self.n {
            if let Some(all) = &mut self.collect {
                if self.chosen.len() == self.target {
                    all.push(self.chosen.clone());
                }
            } else if self.chosen.len() > self.best || self.best_set.is_empty() {
                self.best = self.chosen.len();
                self.best_set = self.chosen.clone();
            }
            return;
        }
        // include i if its chosen neighbors lie in pairwise distinct components
        let mut labels: Vec<usize> = self
            .g
            .neighbors(i)
            .filter(|&w| self.label[w] != usize::MAX)
            .map(|w| self.label[w])
            .collect();
        let k = labels.len();
        labels.sort_unstable();
        labels.dedup();
        if labels.len() == k {
            let saved: Vec<usize> = self.label.clone();
            self.label[i] = i;
            for v in 0..self.n {
                if self.label[v] != usize::MAX && labels.binary_search(&self.label[v]).is_ok() {
                    self.label[v] = i;
                }
            }
            self.chosen.push(i);
            self.run(i + 1);
            self.chosen.pop();
            self.label = saved;
        }
        self.run(i + 1);
    }
}

/// An induced forest of maximum size, found by exact search.
pub fn max_induced_forest(g: &Graph) -> Result<InducedForest> {
    max_induced_forest_capped(g, EXACT_CAP)
}

pub fn max_induced_forest_capped(g: &Graph, cap: usize) -> Result<InducedForest> {
    check_cap(g, cap, "vertex count for exact forest search")?;
    let mut s = Search::new(g);
    s.run(0);
    InducedForest::new(g, &s.best_set)
}

/// Every maximum induced forest, as sorted vertex sets.
pub fn all_max_induced_forests(g: &Graph, cap: usize) -> Result<Vec<Vec<VertexId>>> {
    check_cap(g, cap, "vertex count for forest enumeration")?;
    let f = max_induced_forest_capped(g, cap)?.f_value();
    let mut s = Search::new(g);
    s.target = f;
    s.collect = Some(Vec::new());
    s.run(0);
    Ok(s.collect.unwrap())
}

/// Among all maximum induced forests, one with the fewest trees; ties go to
/// the lexicographically smallest sorted vertex set.
pub fn max_induced_forest_min_components(g: &Graph) -> Result<InducedForest> {
    max_induced_forest_min_components_capped(g, MIN_COMPONENTS_CAP)
}

pub fn max_induced_forest_min_components_capped(g: &Graph, cap: usize) -> Result<InducedForest> {
    let all = all_max_induced_forests(g, cap)?;
    let best = all
        .into_iter()
        .map(|set| (g.induced_components(&set).len(), set))
        .min()
        .map(|(_, set)| set)
        .unwrap_or_default();
    InducedForest::new(g, &best)
}

/// A maximal induced forest: vertices are offered in degeneracy order (low
/// degree first) and kept when they close no cycle, then any vertex that can
/// still be added is added.
pub fn heuristic_induced_forest(g: &Graph) -> InducedForest {
    let n = g.n();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n).filter(|&v| !removed[v]).min_by_key(|&v| (deg[v], v)).unwrap();
        removed[v] = true;
        order.push(v);
        for w in g.neighbors(v) {
            if !removed[w] {
                deg[w] -= 1;
            }
        }
    }
    let mut dsu = Dsu::new(n);
    let mut inside = vec![false; n];
    let try_add = |v: VertexId, inside: &mut Vec<bool>, dsu: &mut Dsu| {
        let mut roots: Vec<usize> = g.neighbors(v).filter(|&w| inside[w]).map(|w| dsu.find(w)).collect();
        let k = roots.len();
        roots.sort_unstable();
        roots.dedup();
        if roots.len() == k {
            inside[v] = true;
            for r in roots {
                dsu.union(v, r);
            }
        }
    };
    for &v in &order {
        try_add(v, &mut inside, &mut dsu);
    }
    for v in 0..n {
        if !inside[v] {
            try_add(v, &mut inside, &mut dsu);
        }
    }
    let vs: Vec<VertexId> = (0..n).filter(|&v| inside[v]).collect();
    InducedForest::new(g, &vs).expect("greedy forest is acyclic")
}

/// Size of a minimum feedback vertex set, by trying removal sets of
/// increasing size.
pub fn min_feedback_vertex_set_size(g: &Graph) -> Result<usize> {
    check_cap(g, EXACT_CAP, "vertex count for feedback vertex set search")?;
    let n = g.n();
    for k in 0..=n {
        let mut comb: Vec<usize> = (0..k).collect();
        loop {
            let mut removed = vec![false; n];
            for &v in &comb {
                removed[v] = true;
            }
            let mut dsu = Dsu::new(n);
            let acyclic = g.edges().iter().all(|&(u, v)| removed[u] || removed[v] || dsu.union(u, v));
            if acyclic {
                return Ok(k);
            }
            if !next_combination(&mut comb, n) {
                break;
            }
        }
    }
    Ok(n)
}

fn next_combination(comb: &mut [usize], n: usize) -> bool {
    let k = comb.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if comb[i] < n - k + i {
            comb[i] += 1;
            for j in i + 1..k {
                comb[j] = comb[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// n minus the minimum feedback vertex set size.
pub fn forest_number_via_fvs(g: &Graph) -> Result<usize> {
    Ok(g.n() - min_feedback_vertex_set_size(g)?)
}

/// Largest vertex set inducing a tree, by enumerating connected induced
/// acyclic subgraphs rooted at their smallest vertex.
pub fn max_induced_tree_size(g: &Graph) -> Result<usize> {
    check_cap(g, EXACT_CAP, "vertex count for induced tree search")?;
    let n = g.n();
    let mut best = n.min(1);
    let mut in_set = vec![false; n];
    for r in 0..n {
        in_set[r] = true;
        let ext: Vec<VertexId> = g.neighbors(r).filter(|&w| w > r).collect();
        extend_tree(g, r, &mut in_set, 1, ext, &mut best);
        in_set[r] = false;
    }
    Ok(best)
}

fn extend_tree(g: &Graph, r: VertexId, in_set: &mut Vec<bool>, size: usize, mut ext: Vec<VertexId>, best: &mut usize) {
    *best = (*best).max(size);
    while let Some(w) = ext.pop() {
        if g.neighbors(w).filter(|&x| in_set[x]).count() != 1 {
            continue;
        }
        // exclusive neighbors of w: not in the set and not adjacent to it
        let mut next = ext.clone();
        for u in g.neighbors(w) {
            if u > r && !in_set[u] && !g.neighbors(u).any(|x| in_set[x]) && !next.contains(&u) {
                next.push(u);
            }
        }
        in_set[w] = true;
        extend_tree(g, r, in_set, size + 1, next, best);
        in_set[w] = false;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> Graph {
        let e: Vec<_> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        Graph::from_edges(n, &e).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &e).unwrap()
    }

    pub(crate) fn petersen() -> Graph {
        let mut e = Vec::new();
        for i in 0..5 {
            e.push((i, (i + 1) % 5));
            e.push((i, i + 5));
            e.push((5 + i, 5 + (i + 2) % 5));
        }
        Graph::from_edges(10, &e).unwrap()
    }

    /// Exhaustive subset oracle.
    fn brute_force_f(g: &Graph) -> usize {
        let n = g.n();
        (0u32..1 << n)
            .filter(|&mask| {
                let s: Vec<_> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
                g.induces_forest(&s)
            })
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap()
    }

    #[test]
    fn membership() {
        let k5 = complete(5);
        assert!(is_induced_forest(&k5, &[3]));
        assert!(!is_induced_forest(&complete(3), &[0, 1, 2]));
        let c5 = cycle(5);
        for skip in 0..5 {
            let s: Vec<_> = (0..5).filter(|&v| v != skip).collect();
            assert!(is_induced_forest(&c5, &s));
        }
    }

    #[test]
    fn known_forest_numbers() {
        for n in 2..8 {
            assert_eq!(max_induced_forest(&complete(n)).unwrap().f_value(), 2);
        }
        for n in 3..9 {
            assert_eq!(max_induced_forest(&cycle(n)).unwrap().f_value(), n - 1);
            assert_eq!(forest_number_via_fvs(&cycle(n)).unwrap(), n - 1);
        }
        let p = petersen();
        assert_eq!(brute_force_f(&p), 7);
        assert_eq!(max_induced_forest(&p).unwrap().f_value(), 7);
        assert_eq!(min_feedback_vertex_set_size(&p).unwrap(), 3);
        assert_eq!(forest_number_via_fvs(&p).unwrap(), 7);
    }

    #[test]
    fn min_components() {
        let tree = Graph::from_edges(5, &[(0, 1), (1, 2), (1, 3), (3, 4)]).unwrap();
        let f = max_induced_forest_min_components(&tree).unwrap();
        assert_eq!((f.f_value(), f.t()), (5, 1));
        let f = max_induced_forest_min_components(&cycle(6)).unwrap();
        assert_eq!((f.f_value(), f.t()), (5, 1));
        // K4 minus the edge 0-1: {0,1,x} is a path for x in {2,3}
        let g = Graph::from_edges(4, &[(0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let f = max_induced_forest_min_components(&g).unwrap();
        assert_eq!(brute_force_f(&g), 3);
        assert_eq!((f.f_value(), f.t()), (3, 1));
        assert_eq!(f.vertices, vec![0, 1, 2]);
    }

    #[test]
    fn heuristic_is_maximal() {
        let tree = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(heuristic_induced_forest(&tree).f_value(), 4);
        assert_eq!(heuristic_induced_forest(&complete(5)).f_value(), 2);
        let p = petersen();
        let h = heuristic_induced_forest(&p);
        assert!(h.is_maximal(&p));
        assert!(h.f_value() <= 7);
    }

    #[test]
    fn induced_trees() {
        let path = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        assert_eq!(max_induced_tree_size(&path).unwrap(), 5);
        assert_eq!(max_induced_tree_size(&cycle(6)).unwrap(), 5);
        assert_eq!(max_induced_tree_size(&complete(4)).unwrap(), 2);
        assert_eq!(max_induced_tree_size(&Graph::empty(1)).unwrap(), 1);
    }

    #[test]
    fn caps() {
        let big = Graph::empty(30);
        assert!(matches!(max_induced_forest(&big), Err(Error::InstanceTooLarge { .. })));
        assert!(matches!(max_induced_forest_min_components(&Graph::empty(19)), Err(Error::InstanceTooLarge { .. })));
    }
}
