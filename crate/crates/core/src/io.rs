//! Reading and writing graphs: the `p`/`e` edge-list format (0-based, or
//! 1-based DIMACS `p edge`) and a small JSON form.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl From<&Graph> for GraphJson {
    fn from(g: &Graph) -> Self {
        GraphJson { n: g.n(), edges: g.edges().iter().map(|&(u, v)| [u, v]).collect() }
    }
}

impl TryFrom<GraphJson> for Graph {
    type Error = Error;

    fn try_from(j: GraphJson) -> Result<Graph> {
        let edges: Vec<_> = j.edges.iter().map(|e| (e[0], e[1])).collect();
        Graph::from_edges(j.n, &edges)
    }
}

/// Parses the edge-list format. With `dimacs`, vertex ids are 1-based and the
/// header may read `p edge <n> <m>`; vertex labels keep the original ids.
pub fn parse_edge_list(text: &str, dimacs: bool) -> Result<Graph> {
    let mut graph: Option<Graph> = None;
    let mut declared_m = 0;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let mut parts = line.split_whitespace();
        let parse_err = |msg: &str| Error::Parse { line: line_no, msg: msg.to_string() };
        match parts.next() {
            Some("p") => {
                if graph.is_some() {
                    return Err(parse_err("duplicate header"));
                }
                let mut rest: Vec<&str> = parts.collect();
                if rest.first() == Some(&"edge") || rest.first() == Some(&"col") {
                    rest.remove(0);
                }
                if rest.len() != 2 {
                    return Err(parse_err("expected `p <n> <m>`"));
                }
                let n: usize = rest[0].parse().map_err(|_| parse_err("bad vertex count"))?;
                declared_m = rest[1].parse().map_err(|_| parse_err("bad edge count"))?;
                graph = Some(Graph::empty(n));
            }
            Some("e") => {
                let g = graph.as_mut().ok_or_else(|| parse_err("edge before header"))?;
                let ids: Vec<usize> = parts
                    .map(|s| s.parse::<usize>())
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|_| parse_err("bad vertex id"))?;
                if ids.len() != 2 {
                    return Err(parse_err("expected `e <u> <v>`"));
                }
                let (mut u, mut v) = (ids[0], ids[1]);
                if dimacs {
                    if u == 0 || v == 0 {
                        return Err(parse_err("DIMACS ids are 1-based"));
                    }
                    u -= 1;
                    v -= 1;
                }
                g.add_edge(u, v).map_err(|e| parse_err(&e.to_string()))?;
            }
            Some(other) => return Err(parse_err(&format!("unknown line type `{other}`"))),
            None => {}
        }
    }
    let g = graph.ok_or(Error::Parse { line: 0, msg: "missing `p` header".into() })?;
    if g.m() != declared_m {
        return Err(Error::Parse {
            line: 0,
            msg: format!("header declares {declared_m} edges, found {}", g.m()),
        });
    }
    if dimacs {
        let labels = (1..=g.n()).map(|i| i.to_string()).collect();
        Ok(g.with_labels(labels))
    } else {
        Ok(g)
    }
}

pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("p {} {}\n", g.n(), g.m());
    for &(u, v) in g.edges() {
        out.push_str(&format!("e {u} {v}\n"));
    }
    out
}

pub fn parse_json(text: &str) -> Result<Graph> {
    let j: GraphJson = serde_json::from_str(text)?;
    Graph::try_from(j)
}

pub fn to_json(g: &Graph) -> String {
    serde_json::to_string(&GraphJson::from(g)).expect("graph serializes")
}

/// Reads a graph file; `.json` files use the JSON form, anything else the edge list.
pub fn read_graph(path: &Path, dimacs: bool) -> Result<Graph> {
    let text = std::fs::read_to_string(path)?;
    if path.extension().is_some_and(|e| e == "json") {
        parse_json(&text)
    } else {
        parse_edge_list(&text, dimacs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_edge_list() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let text = to_edge_list(&g);
        assert_eq!(parse_edge_list(&text, false).unwrap(), g);
    }

    #[test]
    fn comments_and_dimacs() {
        let text = "# a triangle\np edge 3 3\ne 1 2\ne 2 3 # last two\ne 1 3\n";
        let g = parse_edge_list(text, true).unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edge(1), (1, 2));
        assert_eq!(g.label(0), "1");
    }

    #[test]
    fn bad_input() {
        assert!(parse_edge_list("e 0 1\n", false).is_err());
        assert!(parse_edge_list("p 2 2\ne 0 1\n", false).is_err());
        assert!(parse_edge_list("p 2 1\ne 0 0\n", false).is_err());
        assert!(parse_edge_list("p 2 1\ne 0 1\n", true).is_err());
    }

    #[test]
    fn round_trip_json() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(parse_json(&to_json(&g)).unwrap(), g);
    }
}
