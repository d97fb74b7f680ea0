//! Independent checks: does a coloring rainbow-connect G, and what is rc(G)?

use std::collections::{HashSet, VecDeque};

use serde::Serialize;

use crate::coloring::{Color, WitnessPath};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, VertexId};

/// Most distinct colors the state search handles.
pub const MAX_COLORS: usize = 128;
/// Most `(vertex, color set)` states explored from one source.
pub const STATE_CAP: usize = 20_000_000;
/// Largest edge count `rc_exact` accepts.
pub const RC_EXACT_EDGE_CAP: usize = 16;
/// Most complete colorings `rc_exact` checks before giving up.
pub const RC_EXACT_LEAF_BUDGET: u64 = 50_000_000;
/// Largest edge count for the unpruned brute force.
pub const RC_UNPRUNED_EDGE_CAP: usize = 8;

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub rainbow_connected: bool,
    /// Smallest pair `(a, b)` with no rainbow path.
    pub failing_pair: Option<(VertexId, VertexId)>,
    /// One shortest rainbow path per pair `a < b`, when requested and all exist.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub paths: Vec<((VertexId, VertexId), WitnessPath)>,
    pub colors_used: usize,
    pub pairs_checked: usize,
}

/// Renumbers colors densely, in increasing order.
fn dense_colors(colors: &[Color]) -> (Vec<u8>, usize) {
    let mut distinct: Vec<Color> = colors.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    let out = colors.iter().map(|c| distinct.binary_search(c).unwrap() as u8).collect();
    (out, distinct.len())
}

type Mask = u128;

/// BFS over (vertex, used colors) from `a`; returns a shortest rainbow path to
/// each vertex, or `None` where none exists.
fn rainbow_bfs(g: &Graph, cols: &[u8], a: VertexId, want_paths: bool) -> Result<Vec<Option<WitnessPath>>> {
    let n = g.n();
    // state index -> (vertex, mask, parent state, edge)
    let mut states: Vec<(VertexId, Mask, usize, EdgeId)> = vec![(a, 0, usize::MAX, usize::MAX)];
    let mut seen: HashSet<(VertexId, Mask)> = HashSet::new();
    seen.insert((a, 0));
    let mut reached: Vec<Option<usize>> = vec![None; n];
    reached[a] = Some(0);
    let mut remaining = n - 1;
    let mut queue = VecDeque::from([0usize]);
    while let Some(s) = queue.pop_front() {
        if remaining == 0 {
            break;
        }
        let (v, mask, _, _) = states[s];
        for &(w, e) in g.adjacency(v) {
            let bit = 1u128 << cols[e];
            if mask & bit != 0 {
                continue;
            }
            let nm = mask | bit;
            if !seen.insert((w, nm)) {
                continue;
            }
            if states.len() >= STATE_CAP {
                return Err(Error::InstanceTooLarge { what: "rainbow search states", size: states.len(), cap: STATE_CAP });
            }
            states.push((w, nm, s, e));
            let id = states.len() - 1;
            if reached[w].is_none() {
                reached[w] = Some(id);
                remaining -= 1;
            }
            queue.push_back(id);
        }
    }
    Ok(reached
        .into_iter()
        .map(|r| {
            r.map(|mut s| {
                if !want_paths {
                    return WitnessPath::single(a);
                }
                let mut vs = Vec::new();
                let mut es = Vec::new();
                while s != usize::MAX {
                    let (v, _, p, e) = states[s];
                    vs.push(v);
                    if e != usize::MAX {
                        es.push(e);
                    }
                    s = p;
                }
                vs.reverse();
                es.reverse();
                WitnessPath { vertices: vs, edges: es }
            })
        })
        .collect())
}

/// Checks every pair for a rainbow path. With `want_paths`, also records one
/// shortest rainbow path per pair.
pub fn verify_rainbow(g: &Graph, colors: &[Color], palette: Option<Color>, want_paths: bool) -> Result<VerificationReport> {
    if colors.len() != g.m() {
        return Err(Error::PreconditionViolated(format!("{} colors for {} edges", colors.len(), g.m())));
    }
    if let Some(p) = palette {
        if let Some((e, &c)) = colors.iter().enumerate().find(|&(_, &c)| c == 0 || c > p) {
            return Err(Error::PaletteMismatch { edge: e, color: c, palette: p });
        }
    }
    let (cols, k) = dense_colors(colors);
    if k > MAX_COLORS {
        return Err(Error::InstanceTooLarge { what: "distinct colors", size: k, cap: MAX_COLORS });
    }
    let mut report = VerificationReport {
        rainbow_connected: true,
        failing_pair: None,
        paths: Vec::new(),
        colors_used: k,
        pairs_checked: 0,
    };
    for a in 0..g.n() {
        let found = rainbow_bfs(g, &cols, a, want_paths)?;
        for (b, p) in found.into_iter().enumerate().skip(a + 1) {
            report.pairs_checked += 1;
            match p {
                Some(p) if want_paths => report.paths.push(((a, b), p)),
                Some(_) => {}
                None => {
                    report.rainbow_connected = false;
                    report.failing_pair = Some((a, b));
                    report.paths.clear();
                    return Ok(report);
                }
            }
        }
    }
    Ok(report)
}

/// Whether `p` is a path of G from `a` to `b` with pairwise distinct colors.
pub fn check_witness(g: &Graph, colors: &[Color], a: VertexId, b: VertexId, p: &WitnessPath) -> bool {
    if p.vertices.first() != Some(&a) || p.vertices.last() != Some(&b) || p.vertices.len() != p.edges.len() + 1 {
        return false;
    }
    for (i, &e) in p.edges.iter().enumerate() {
        if e >= g.m() {
            return false;
        }
        let (u, v) = g.edge(e);
        let (x, y) = (p.vertices[i], p.vertices[i + 1]);
        if !((u == x && v == y) || (u == y && v == x)) {
            return false;
        }
    }
    let mut cs: Vec<Color> = p.edges.iter().map(|&e| colors[e]).collect();
    cs.sort_unstable();
    cs.windows(2).all(|w| w[0] != w[1])
}

/// rc(G) >= diam(G).
pub fn rc_lower_bound(g: &Graph) -> Result<usize> {
    g.diameter()
}

/// Small-graph rainbow check by DFS over simple paths; `k <= 32` colors.
struct SmallChecker {
    n: usize,
    adj: Vec<Vec<(usize, usize)>>,
    /// Pair that failed last time; checked first.
    last_fail: (usize, usize),
}

impl SmallChecker {
    fn new(g: &Graph) -> Self {
        let adj = (0..g.n()).map(|v| g.adjacency(v).to_vec()).collect();
        SmallChecker { n: g.n(), adj, last_fail: (0, 1.min(g.n().saturating_sub(1))) }
    }

    fn path_exists(&self, cols: &[u8], v: usize, b: usize, visited: u32, used: u32) -> bool {
        if v == b {
            return true;
        }
        for &(w, e) in &self.adj[v] {
            let bit = 1u32 << cols[e];
            if visited & (1 << w) != 0 || used & bit != 0 {
                continue;
            }
            if self.path_exists(cols, w, b, visited | (1 << w), used | bit) {
                return true;
            }
        }
        false
    }

    fn pair_ok(&self, cols: &[u8], a: usize, b: usize) -> bool {
        self.path_exists(cols, a, b, 1 << a, 0)
    }

    fn rainbow_connected(&mut self, cols: &[u8]) -> bool {
        let (fa, fb) = self.last_fail;
        if fa != fb && !self.pair_ok(cols, fa, fb) {
            return false;
        }
        for a in 0..self.n {
            for b in a + 1..self.n {
                if !self.pair_ok(cols, a, b) {
                    self.last_fail = (a, b);
                    return false;
                }
            }
        }
        true
    }
}

/// Tries every coloring with colors `0..k`, up to renaming; first-occurrence order.
/// `leaves` counts complete colorings checked across calls.
fn exists_with_k(checker: &mut SmallChecker, m: usize, k: usize, leaves: &mut u64) -> Result<Option<Vec<u8>>> {
    fn rec(checker: &mut SmallChecker, cols: &mut Vec<u8>, i: usize, used: usize, k: usize, leaves: &mut u64) -> Result<bool> {
        let m = cols.len();
        if m - i < k - used {
            return Ok(false);
        }
        if i == m {
            *leaves += 1;
            if *leaves > RC_EXACT_LEAF_BUDGET {
                return Err(Error::InstanceTooLarge {
                    what: "colorings checked by exact rc",
                    size: *leaves as usize,
                    cap: RC_EXACT_LEAF_BUDGET as usize,
                });
            }
            return Ok(checker.rainbow_connected(cols));
        }
        let top = (used + 1).min(k);
        for c in 0..top {
            cols[i] = c as u8;
            if rec(checker, cols, i + 1, used.max(c + 1), k, leaves)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
    let mut cols = vec![0u8; m];
    Ok(rec(checker, &mut cols, 0, 0, k, leaves)?.then_some(cols))
}

/// Exact rainbow connection number with an optimal coloring (colors from 1).
/// Searches `k` upward from the diameter; graphs with more than
/// [`RC_EXACT_EDGE_CAP`] edges, or searches past [`RC_EXACT_LEAF_BUDGET`]
/// colorings, are refused.
pub fn rc_exact(g: &Graph) -> Result<(usize, Vec<Color>)> {
    let m = g.m();
    if m > RC_EXACT_EDGE_CAP {
        return Err(Error::InstanceTooLarge { what: "edges for exact rc", size: m, cap: RC_EXACT_EDGE_CAP });
    }
    let lo = rc_lower_bound(g)?;
    if g.n() <= 1 {
        return Ok((0, Vec::new()));
    }
    let mut checker = SmallChecker::new(g);
    let mut leaves = 0;
    for k in lo.max(1)..=m {
        if let Some(cols) = exists_with_k(&mut checker, m, k, &mut leaves)? {
            return Ok((k, cols.into_iter().map(|c| c as Color + 1).collect()));
        }
    }
    unreachable!("distinct colors on every edge always work")
}

/// rc(G) by trying all `k^m` colorings for `k = 1, 2, ...`; no symmetry breaking,
/// no lower bound. Only for cross-checking [`rc_exact`].
pub fn rc_unpruned(g: &Graph) -> Result<usize> {
    let m = g.m();
    if m > RC_UNPRUNED_EDGE_CAP {
        return Err(Error::InstanceTooLarge { what: "edges for unpruned rc", size: m, cap: RC_UNPRUNED_EDGE_CAP });
    }
    if !g.is_connected() {
        return Err(Error::DisconnectedGraph);
    }
    if g.n() <= 1 {
        return Ok(0);
    }
    let mut checker = SmallChecker::new(g);
    for k in 1..=m {
        let total = k.pow(m as u32);
        let mut cols = vec![0u8; m];
        for code in 0..total {
            let mut c = code;
            for slot in cols.iter_mut() {
                *slot = (c % k) as u8;
                c /= k;
            }
            if checker.rainbow_connected(&cols) {
                return Ok(k);
            }
        }
    }
    unreachable!("distinct colors on every edge always work")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn path_needs_distinct_colors() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert!(verify_rainbow(&g, &[1, 2, 3], None, false).unwrap().rainbow_connected);
        let r = verify_rainbow(&g, &[1, 2, 1], None, false).unwrap();
        assert_eq!(r.failing_pair, Some((0, 3)));
    }

    #[test]
    fn palette_is_enforced() {
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        assert!(matches!(verify_rainbow(&g, &[3], Some(2), false), Err(Error::PaletteMismatch { .. })));
    }

    #[test]
    fn paths_are_valid_witnesses() {
        let g = cycle(6);
        let cols = [1, 2, 3, 1, 2, 3];
        let r = verify_rainbow(&g, &cols, Some(3), true).unwrap();
        assert!(r.rainbow_connected);
        assert_eq!(r.paths.len(), 15);
        for ((a, b), p) in &r.paths {
            assert!(check_witness(&g, &cols, *a, *b, p));
        }
    }

    #[test]
    fn known_small_values() {
        // rc(C_n) = ceil(n/2) for n >= 4
        for n in 4..=8 {
            assert_eq!(rc_exact(&cycle(n)).unwrap().0, n.div_ceil(2), "C{n}");
        }
        assert_eq!(rc_exact(&cycle(3)).unwrap().0, 1);
        let k4 = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(rc_exact(&k4).unwrap().0, 1);
    }

    #[test]
    fn exact_coloring_verifies() {
        let g = cycle(7);
        let (k, cols) = rc_exact(&g).unwrap();
        let r = verify_rainbow(&g, &cols, Some(k as Color), false).unwrap();
        assert!(r.rainbow_connected);
    }

    #[test]
    fn unpruned_agrees_on_cycles() {
        for n in 3..=6 {
            let g = cycle(n);
            assert_eq!(rc_unpruned(&g).unwrap(), rc_exact(&g).unwrap().0);
        }
    }

    #[test]
    fn caps() {
        let g = cycle(17);
        assert!(matches!(rc_exact(&g), Err(Error::InstanceTooLarge { .. })));
        assert!(matches!(rc_unpruned(&cycle(9)), Err(Error::InstanceTooLarge { .. })));
    }
}
