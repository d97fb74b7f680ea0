//! Edge colorings, witness paths, and the JSON form shared by all constructions.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, VertexId};

pub type Color = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Construction {
    Take1,
    Take2,
    Take3,
    /// Take 3 was requested but a structural check failed; Take 2 ran instead.
    Take2Fallback,
}

/// A total edge coloring with per-edge provenance.
#[derive(Debug, Clone)]
pub struct RainbowColoring {
    /// Largest color the construction may use.
    pub palette: Color,
    /// Color of every edge, indexed by edge id; colors start at 1.
    pub colors: Vec<Color>,
    /// Name of the rule that colored each edge.
    pub rules: Vec<&'static str>,
    /// Edges the witness paths may use; the rest are filler.
    pub relevant: Vec<bool>,
    pub shortcut_edges: Vec<EdgeId>,
    pub construction: Construction,
}

impl RainbowColoring {
    /// Number of distinct colors on the edges.
    pub fn colors_used(&self) -> usize {
        let mut cs = self.colors.clone();
        cs.sort_unstable();
        cs.dedup();
        cs.len()
    }

    pub fn max_color(&self) -> Color {
        self.colors.iter().copied().max().unwrap_or(0)
    }

    pub fn color(&self, e: EdgeId) -> Color {
        self.colors[e]
    }

    pub fn to_json(&self, g: &Graph) -> ColoringJson {
        ColoringJson {
            palette: self.palette,
            construction: Some(self.construction),
            colors_used: Some(self.colors_used()),
            edges: (0..g.m())
                .map(|e| {
                    let (u, v) = g.edge(e);
                    EdgeColorJson { u, v, color: self.colors[e], rule: Some(self.rules[e].to_string()) }
                })
                .collect(),
            shortcut_edges: self.shortcut_edges.iter().map(|&e| <[usize; 2]>::from(g.edge(e))).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EdgeColorJson {
    pub u: VertexId,
    pub v: VertexId,
    pub color: Color,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rule: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ColoringJson {
    pub palette: Color,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub construction: Option<Construction>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub colors_used: Option<usize>,
    pub edges: Vec<EdgeColorJson>,
    #[serde(default)]
    pub shortcut_edges: Vec<[usize; 2]>,
}

impl ColoringJson {
    /// Colors indexed by edge id of `g`. Every edge of `g` must be listed once.
    pub fn edge_colors(&self, g: &Graph) -> Result<Vec<Color>> {
        let mut colors: Vec<Option<Color>> = vec![None; g.m()];
        for ec in &self.edges {
            let e = g
                .edge_between(ec.u, ec.v)
                .ok_or_else(|| Error::PreconditionViolated(format!("colored pair {}-{} is not an edge", ec.u, ec.v)))?;
            if colors[e].replace(ec.color).is_some() {
                return Err(Error::PreconditionViolated(format!("edge {}-{} colored twice", ec.u, ec.v)));
            }
        }
        colors
            .into_iter()
            .enumerate()
            .map(|(e, c)| c.ok_or_else(|| Error::PreconditionViolated(format!("edge {e} is uncolored"))))
            .collect()
    }
}

/// A path in G given by its vertices and the edges between them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessPath {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
}

impl WitnessPath {
    pub fn single(v: VertexId) -> Self {
        WitnessPath { vertices: vec![v], edges: Vec::new() }
    }

    pub fn start(&self) -> VertexId {
        self.vertices[0]
    }

    pub fn end(&self) -> VertexId {
        *self.vertices.last().unwrap()
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Appends edge `e`, which must leave the current end.
    pub fn push_edge(&mut self, g: &Graph, e: EdgeId) {
        let next = g.other_end(e, self.end());
        self.vertices.push(next);
        self.edges.push(e);
    }

    /// Appends a path starting at the current end.
    pub fn extend(&mut self, other: &WitnessPath) {
        assert_eq!(self.end(), other.start(), "paths do not meet");
        self.vertices.extend_from_slice(&other.vertices[1..]);
        self.edges.extend_from_slice(&other.edges);
    }

    pub fn extend_tree_path(&mut self, p: &crate::graph::TreePath) {
        assert_eq!(self.end(), p.vertices[0], "paths do not meet");
        self.vertices.extend_from_slice(&p.vertices[1..]);
        self.edges.extend_from_slice(&p.edges);
    }

    pub fn reversed(&self) -> WitnessPath {
        let mut p = self.clone();
        p.vertices.reverse();
        p.edges.reverse();
        p
    }

    /// Human-readable form: `0 -[3]- 4 -[1]- 2`.
    pub fn describe(&self, colors: &[Color]) -> String {
        let mut s = self.vertices[0].to_string();
        for (i, &e) in self.edges.iter().enumerate() {
            s.push_str(&format!(" -[{}]- {}", colors[e], self.vertices[i + 1]));
        }
        s
    }
}
