//! Graph families for experiments. Random families are seeded ChaCha8 streams,
//! so a `(family, params, seed)` triple always yields the same graph.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Rejection attempts before `erdos_renyi_connected` adds a random spanning tree.
pub const CONNECT_ATTEMPTS: usize = 64;

fn need(ok: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidParams(msg()))
    }
}

pub fn path(n: usize) -> Result<Graph> {
    need(n >= 1, || "path needs n >= 1".into())?;
    Graph::from_edges(n, &(1..n).map(|i| (i - 1, i)).collect::<Vec<_>>())
}

pub fn cycle(n: usize) -> Result<Graph> {
    need(n >= 3, || format!("cycle needs n >= 3, got {n}"))?;
    Graph::from_edges(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>())
}

pub fn complete(n: usize) -> Result<Graph> {
    need(n >= 1, || "complete graph needs n >= 1".into())?;
    let mut e = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            e.push((u, v));
        }
    }
    Graph::from_edges(n, &e)
}

pub fn complete_multipartite(parts: &[usize]) -> Result<Graph> {
    need(parts.len() >= 2 && parts.iter().all(|&p| p >= 1), || {
        format!("complete multipartite needs at least two non-empty parts, got {parts:?}")
    })?;
    let mut side = Vec::new();
    for (i, &p) in parts.iter().enumerate() {
        side.extend(std::iter::repeat_n(i, p));
    }
    let n = side.len();
    let mut e = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if side[u] != side[v] {
                e.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &e)
}

/// Hub 0 joined to every vertex of the cycle `1..=rim`.
pub fn wheel(rim: usize) -> Result<Graph> {
    need(rim >= 3, || format!("wheel needs a rim of at least 3, got {rim}"))?;
    let mut e: Vec<_> = (1..=rim).map(|i| (0, i)).collect();
    e.extend((1..=rim).map(|i| (i, i % rim + 1)));
    Graph::from_edges(rim + 1, &e)
}

pub fn star(leaves: usize) -> Result<Graph> {
    need(leaves >= 1, || "star needs a leaf".into())?;
    Graph::from_edges(leaves + 1, &(1..=leaves).map(|i| (0, i)).collect::<Vec<_>>())
}

pub fn grid(rows: usize, cols: usize) -> Result<Graph> {
    need(rows >= 1 && cols >= 1, || "grid needs positive sides".into())?;
    let id = |r: usize, c: usize| r * cols + c;
    let mut e = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                e.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < rows {
                e.push((id(r, c), id(r + 1, c)));
            }
        }
    }
    Graph::from_edges(rows * cols, &e)
}

pub fn petersen() -> Graph {
    let mut e: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
    e.extend((0..5).map(|i| (i, i + 5)));
    e.extend((0..5).map(|i| (i + 5, (i + 2) % 5 + 5)));
    Graph::from_edges(10, &e).expect("valid")
}

/// K_k with `pendants` leaves attached round-robin to the clique vertices.
pub fn clique_with_pendants(k: usize, pendants: usize) -> Result<Graph> {
    need(k >= 1, || "clique needs k >= 1".into())?;
    let mut e = complete(k)?.edges().to_vec();
    e.extend((0..pendants).map(|i| (i % k, k + i)));
    Graph::from_edges(k + pendants, &e)
}

/// K_k with one pendant vertex on each clique vertex.
pub fn k_with_pendants(k: usize) -> Result<Graph> {
    clique_with_pendants(k, k)
}

/// Uniform random labelled tree via a Prüfer sequence.
pub fn random_tree(n: usize, seed: u64) -> Result<Graph> {
    need(n >= 1, || "tree needs n >= 1".into())?;
    if n <= 2 {
        return path(n);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let code: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1; n];
    for &c in &code {
        degree[c] += 1;
    }
    let mut e = Vec::with_capacity(n - 1);
    let mut leaves: std::collections::BTreeSet<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    for &c in &code {
        let leaf = *leaves.iter().next().unwrap();
        leaves.remove(&leaf);
        e.push((leaf, c));
        degree[c] -= 1;
        if degree[c] == 1 {
            leaves.insert(c);
        }
    }
    let rest: Vec<usize> = leaves.into_iter().collect();
    e.push((rest[0], rest[1]));
    Graph::from_edges(n, &e)
}

/// G(n, p) conditioned on connectivity by rejection; when `p` is too small
/// for that to succeed quickly, the last sample is united with a random
/// spanning tree.
pub fn erdos_renyi_connected(n: usize, p: f64, seed: u64) -> Result<Graph> {
    need(n >= 1, || "G(n,p) needs n >= 1".into())?;
    need((0.0..=1.0).contains(&p), || format!("p must lie in [0, 1], got {p}"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut e = Vec::new();
    for _ in 0..CONNECT_ATTEMPTS {
        e.clear();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    e.push((u, v));
                }
            }
        }
        let g = Graph::from_edges(n, &e)?;
        if g.is_connected() {
            return Ok(g);
        }
    }
    let tree = random_tree(n, rng.gen())?;
    let mut g = Graph::from_edges(n, &e)?;
    for &(u, v) in tree.edges() {
        if g.edge_between(u, v).is_none() {
            g.add_edge(u, v)?;
        }
    }
    Ok(g)
}

/// Random connected graph: a random tree plus `extra` distinct random chords.
pub fn random_connected(n: usize, extra: usize, seed: u64) -> Result<Graph> {
    let tree = random_tree(n, seed)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let mut missing = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if tree.edge_between(u, v).is_none() {
                missing.push((u, v));
            }
        }
    }
    need(extra <= missing.len(), || format!("only {} chords available, asked for {extra}", missing.len()))?;
    missing.shuffle(&mut rng);
    let mut e = tree.edges().to_vec();
    e.extend_from_slice(&missing[..extra]);
    Graph::from_edges(n, &e)
}

/// `trees` disjoint random trees with 1 to `max_tree` vertices each, plus
/// `connectors` outside vertices. Each connector gets two to four edges into
/// the trees and, with probability `p`, an edge to each earlier connector.
/// The planted forest need not be maximum; the result is made connected by
/// joining components through connectors.
pub fn planted_forest(trees: usize, max_tree: usize, connectors: usize, p: f64, seed: u64) -> Result<Graph> {
    need(trees >= 1 && max_tree >= 1, || "planted forest needs a tree".into())?;
    need((0.0..=1.0).contains(&p), || format!("p must lie in [0, 1], got {p}"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut e = Vec::new();
    let mut n = 0;
    for _ in 0..trees {
        let size = rng.gen_range(1..=max_tree);
        for i in 1..size {
            e.push((n + rng.gen_range(0..i), n + i));
        }
        n += size;
    }
    let forest_n = n;
    for c in 0..connectors {
        let v = forest_n + c;
        let k = rng.gen_range(2..=4).min(forest_n);
        let mut targets: Vec<usize> = (0..forest_n).collect();
        targets.shuffle(&mut rng);
        for &w in &targets[..k] {
            e.push((w, v));
        }
        for u in forest_n..v {
            if rng.gen_bool(p) {
                e.push((u, v));
            }
        }
    }
    n += connectors;
    let mut g = Graph::from_edges(n, &e)?;
    let comps = g.induced_components(&(0..n).collect::<Vec<_>>());
    for w in comps.windows(2) {
        g.add_edge(w[0][0], w[1][0])?;
    }
    Ok(g)
}

/// A family name plus parameters, as accepted on the command line.
#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    Path(usize),
    Cycle(usize),
    Complete(usize),
    Multipartite(Vec<usize>),
    Wheel(usize),
    Star(usize),
    Grid(usize, usize),
    Petersen,
    CliquePendants(usize, usize),
    RandomTree(usize),
    Gnp(usize, f64),
    RandomConnected(usize, usize),
    Planted { trees: usize, max_tree: usize, connectors: usize, p: f64 },
}

impl Family {
    /// Parses `name:arg,arg`, e.g. `gnp:12,0.3` or `multipartite:2,3,3`.
    pub fn parse(s: &str) -> Result<Family> {
        let (name, args) = s.split_once(':').unwrap_or((s, ""));
        let nums: Vec<&str> = if args.is_empty() { Vec::new() } else { args.split(',').collect() };
        let int = |i: usize| -> Result<usize> {
            nums.get(i)
                .ok_or_else(|| Error::InvalidParams(format!("{name} needs argument {}", i + 1)))?
                .trim()
                .parse()
                .map_err(|_| Error::InvalidParams(format!("bad integer in {s}")))
        };
        let fam = match name {
            "path" => Family::Path(int(0)?),
            "cycle" => Family::Cycle(int(0)?),
            "complete" => Family::Complete(int(0)?),
            "multipartite" => Family::Multipartite((0..nums.len()).map(int).collect::<Result<_>>()?),
            "wheel" => Family::Wheel(int(0)?),
            "star" => Family::Star(int(0)?),
            "grid" => Family::Grid(int(0)?, int(1)?),
            "petersen" => Family::Petersen,
            "clique-pendants" => Family::CliquePendants(int(0)?, int(1)?),
            "k-pendants" => Family::CliquePendants(int(0)?, int(0)?),
            "tree" => Family::RandomTree(int(0)?),
            "gnp" => {
                let p: f64 = nums
                    .get(1)
                    .ok_or_else(|| Error::InvalidParams("gnp needs n,p".into()))?
                    .trim()
                    .parse()
                    .map_err(|_| Error::InvalidParams(format!("bad probability in {s}")))?;
                Family::Gnp(int(0)?, p)
            }
            "connected" => Family::RandomConnected(int(0)?, int(1)?),
            "planted" => {
                let p: f64 = nums.get(3).map_or(Ok(0.0), |x| x.trim().parse()).map_err(|_| Error::InvalidParams(format!("bad probability in {s}")))?;
                Family::Planted { trees: int(0)?, max_tree: int(1)?, connectors: int(2)?, p }
            }
            _ => return Err(Error::InvalidParams(format!("unknown family {name}"))),
        };
        Ok(fam)
    }

    pub fn generate(&self, seed: u64) -> Result<Graph> {
        match self {
            Family::Path(n) => path(*n),
            Family::Cycle(n) => cycle(*n),
            Family::Complete(n) => complete(*n),
            Family::Multipartite(p) => complete_multipartite(p),
            Family::Wheel(n) => wheel(*n),
            Family::Star(n) => star(*n),
            Family::Grid(r, c) => grid(*r, *c),
            Family::Petersen => Ok(petersen()),
            Family::CliquePendants(k, p) => clique_with_pendants(*k, *p),
            Family::RandomTree(n) => random_tree(*n, seed),
            Family::Gnp(n, p) => erdos_renyi_connected(*n, *p, seed),
            Family::RandomConnected(n, k) => random_connected(*n, *k, seed),
            Family::Planted { trees, max_tree, connectors, p } => planted_forest(*trees, *max_tree, *connectors, *p, seed),
        }
    }

    pub fn is_random(&self) -> bool {
        matches!(
            self,
            Family::RandomTree(_) | Family::Gnp(..) | Family::RandomConnected(..) | Family::Planted { .. }
        )
    }

    pub fn name(&self) -> String {
        match self {
            Family::Path(n) => format!("path:{n}"),
            Family::Cycle(n) => format!("cycle:{n}"),
            Family::Complete(n) => format!("complete:{n}"),
            Family::Multipartite(p) => {
                format!("multipartite:{}", p.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
            }
            Family::Wheel(n) => format!("wheel:{n}"),
            Family::Star(n) => format!("star:{n}"),
            Family::Grid(r, c) => format!("grid:{r},{c}"),
            Family::Petersen => "petersen".into(),
            Family::CliquePendants(k, p) => format!("clique-pendants:{k},{p}"),
            Family::RandomTree(n) => format!("tree:{n}"),
            Family::Gnp(n, p) => format!("gnp:{n},{p}"),
            Family::RandomConnected(n, k) => format!("connected:{n},{k}"),
            Family::Planted { trees, max_tree, connectors, p } => format!("planted:{trees},{max_tree},{connectors},{p}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!(path(5).unwrap().m(), 4);
        assert_eq!(cycle(5).unwrap().m(), 5);
        assert_eq!(complete(5).unwrap().m(), 10);
        assert_eq!(complete_multipartite(&[2, 3]).unwrap().m(), 6);
        assert_eq!(wheel(5).unwrap().m(), 10);
        assert_eq!(grid(2, 3).unwrap().m(), 7);
        assert_eq!(petersen().m(), 15);
        assert_eq!(clique_with_pendants(4, 3).unwrap().m(), 9);
        let kp = k_with_pendants(3).unwrap();
        assert_eq!((kp.n(), kp.m()), (6, 6));
    }

    #[test]
    fn bad_params_are_rejected() {
        assert!(matches!(cycle(2), Err(Error::InvalidParams(_))));
        assert!(matches!(erdos_renyi_connected(5, 1.5, 0), Err(Error::InvalidParams(_))));
        assert!(matches!(Family::parse("blob:3"), Err(Error::InvalidParams(_))));
    }

    #[test]
    fn random_families_are_reproducible() {
        for seed in 0..20 {
            let t = random_tree(12, seed).unwrap();
            assert_eq!(t.m(), 11);
            assert!(t.is_connected());
            let a = erdos_renyi_connected(10, 0.3, seed).unwrap();
            let b = erdos_renyi_connected(10, 0.3, seed).unwrap();
            assert_eq!(a.edges(), b.edges());
            assert!(a.is_connected());
            assert!(erdos_renyi_connected(12, 0.02, seed).unwrap().is_connected());
        }
    }

    #[test]
    fn family_names_round_trip() {
        for s in ["path:4", "gnp:10,0.3", "multipartite:2,3,3", "grid:3,4", "petersen", "connected:8,3", "planted:3,2,4,0.2"] {
            assert_eq!(Family::parse(s).unwrap().name(), s);
        }
    }
}
