use std::fmt;

use thiserror::Error;

/// Structural facts the Take-3 engine relies on. A failure means the forest or
/// skeleton was not optimal in the way the construction needs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub enum StructuralCheck {
    /// A non-tree vertex with an outgoing 1-edge has a tree child joined by a 2-edge.
    OneEdgeTreeChild,
    /// Some rotation/pattern at a high 2-edge-degree tree vertex yields the needed local paths.
    StarPaths,
    /// A tree vertex of B1-degree at least 3 left incomplete has two 2-edges over a
    /// single-edge tree.
    SingleEdgeBranchShape,
    /// An edge a rule is about to color is still uncolored.
    UncoloredOnEntry,
    /// After the degree rules, every uncolored inner edge sits at a degree-2 tree vertex
    /// over a single-edge tree with two 2-edges.
    UncoloredEdgeShape,
    /// After the single-uncolored rule, leftover 2-edges come in uncolored pairs.
    UncoloredPairShape,
    /// A 2-edge from a non-tree vertex to a tree descendant is a parent-child edge.
    DescendantIsChild,
    /// The parent-side neighbor has no other 2-edge in H.
    ParentSideTwoEdges,
    /// The child-side neighbor has no 2-edge in H except to its two skeleton neighbors.
    ChildSideTwoEdges,
    /// The parent-side neighbor touches no other tree vertex.
    ParentSideTreeContacts,
    /// Without a direct edge between the two neighbors, the child-side incoming edge is a
    /// 2-edge from a tree vertex.
    ChildSideIncomingTwoEdge,
    /// The tree whose surplus color is borrowed was not handled by the parent-2-edge rule.
    BorrowedSurplusUnused,
    /// The edge between the two neighbors is still uncolored when it becomes a shortcut.
    ShortcutUncolored,
    /// Every inner tree vertex is completed once all rules have run.
    AllCompleted,
}

impl fmt::Display for StructuralCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// The four properties maintained while witness paths are grown.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub enum Invariant {
    /// No two edges of a partial witness path share a color.
    RainbowWitness,
    /// Both representatives of a skeleton 2-edge are colored, or neither is.
    PairedRepresentatives,
    /// Internal colors of an incomplete tree are not used outside the tree.
    IsolatedInternalColors,
    /// A witness path enters a tree only after taking a representative of every
    /// skeleton-path edge at that tree.
    GuardedTreeEdges,
}

impl Invariant {
    pub fn number(self) -> u8 {
        match self {
            Invariant::RainbowWitness => 1,
            Invariant::PairedRepresentatives => 2,
            Invariant::IsolatedInternalColors => 3,
            Invariant::GuardedTreeEdges => 4,
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("graph is disconnected")]
    DisconnectedGraph,
    #[error("vertex set does not induce a tree")]
    NotATree,
    #[error("vertex {0} is not in the tree")]
    VertexOutsideTree(usize),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("instance too large: {what} is {size}, cap is {cap}")]
    InstanceTooLarge { what: &'static str, size: usize, cap: usize },
    #[error("forest is not maximal: vertex {0} can be added")]
    ForestNotMaximal(usize),
    #[error("edge {0} is a tree edge and has no image in H")]
    TreeEdgeNotMappable(usize),
    #[error("contracted graph has no tree vertex")]
    NoTreeVertex,
    #[error("vertex {0} is not in the inner skeleton")]
    VertexNotInB1(usize),
    #[error("skeleton invariant violated: {0}")]
    SkeletonInvariantViolated(String),
    #[error("structural check {check} failed: {detail}")]
    LemmaViolation { check: StructuralCheck, detail: String },
    #[error("invariant {} ({invariant:?}) violated: {detail}", invariant.number())]
    InvariantViolation { invariant: Invariant, detail: String },
    #[error("edge {edge} has color {color} outside palette of size {palette}")]
    PaletteMismatch { edge: usize, color: u32, palette: u32 },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn lemma(check: StructuralCheck, detail: impl Into<String>) -> Error {
    Error::LemmaViolation { check, detail: detail.into() }
}

pub(crate) fn invariant(invariant: Invariant, detail: impl Into<String>) -> Error {
    Error::InvariantViolation { invariant, detail: detail.into() }
}
