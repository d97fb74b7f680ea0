//! One entry point for all three constructions.

use std::str::FromStr;

use crate::coloring::{Construction, RainbowColoring, WitnessPath};
use crate::contraction::{contract, ContractedGraph};
use crate::error::{Error, Result};
use crate::forest::{
    heuristic_induced_forest, max_induced_forest_capped, max_induced_forest_min_components_capped, InducedForest,
    EXACT_CAP, MIN_COMPONENTS_CAP,
};
use crate::graph::{Graph, VertexId};
use crate::skeleton::{build_skeleton_take2, build_skeleton_take3, Skeleton};
use crate::take1::{color_take1, connect_forest, Take1};
use crate::take2::{color_take2, Take2};
use crate::take3::{color_take3, Take3};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Take1,
    Take2,
    Take3,
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "take1" | "1" => Ok(Method::Take1),
            "take2" | "2" => Ok(Method::Take2),
            "take3" | "3" => Ok(Method::Take3),
            _ => Err(Error::InvalidParams(format!("unknown method {s}; use take1, take2 or take3"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ForestMode {
    /// Exact search; fails above the cap.
    Exact,
    Heuristic,
    /// Exact up to the cap, heuristic above it.
    Auto,
}

#[derive(Debug, Clone)]
pub struct Options {
    pub method: Method,
    pub forest: ForestMode,
    /// Among maximum forests, take one with the fewest trees.
    pub min_components: bool,
    pub cap_n: usize,
    /// Replay and check every pair after a Take-3 coloring; a failure triggers
    /// the Take-2 fallback like a failed structural check does.
    pub check_pairs: bool,
}

impl Options {
    pub fn new(method: Method) -> Self {
        Options {
            method,
            forest: ForestMode::Auto,
            min_components: method == Method::Take3,
            cap_n: if method == Method::Take3 { MIN_COMPONENTS_CAP } else { EXACT_CAP },
            check_pairs: true,
        }
    }
}

pub fn choose_forest(g: &Graph, opts: &Options) -> Result<InducedForest> {
    let exact = |g: &Graph| {
        if opts.min_components {
            max_induced_forest_min_components_capped(g, opts.cap_n)
        } else {
            max_induced_forest_capped(g, opts.cap_n)
        }
    };
    match opts.forest {
        ForestMode::Exact => exact(g),
        ForestMode::Heuristic => Ok(heuristic_induced_forest(g)),
        ForestMode::Auto if g.n() <= opts.cap_n => exact(g),
        ForestMode::Auto => Ok(heuristic_induced_forest(g)),
    }
}

#[derive(Debug, Clone)]
enum Built<'a> {
    Take1(Take1),
    Take2(Take2<'a>),
    Take3(Take3<'a>),
}

/// A finished coloring with the means to produce witnesses.
#[derive(Debug, Clone)]
pub struct Outcome<'a> {
    g: &'a Graph,
    pub forest: InducedForest,
    /// Why Take 3 was abandoned, when it was.
    pub fallback: Option<String>,
    cg: Option<ContractedGraph>,
    sk: Option<Skeleton>,
    built: Built<'a>,
}

impl<'a> Outcome<'a> {
    pub fn coloring(&self) -> &RainbowColoring {
        match &self.built {
            Built::Take1(t) => &t.coloring,
            Built::Take2(t) => &t.coloring,
            Built::Take3(t) => &t.coloring,
        }
    }

    pub fn construction(&self) -> Construction {
        self.coloring().construction
    }

    pub fn witness(&self, a: VertexId, b: VertexId) -> Result<WitnessPath> {
        for v in [a, b] {
            if v >= self.g.n() {
                return Err(Error::InvalidParams(format!("vertex {v} out of range")));
            }
        }
        match &self.built {
            Built::Take1(t) => Ok(t.witness(self.g, a, b)),
            Built::Take2(t) => Ok(t.witness(a, b)),
            Built::Take3(t) => t.witness(a, b),
        }
    }

    pub fn contracted(&self) -> Option<&ContractedGraph> {
        self.cg.as_ref()
    }

    pub fn skeleton(&self) -> Option<&Skeleton> {
        self.sk.as_ref()
    }

    pub fn take3(&self) -> Option<&Take3<'a>> {
        match &self.built {
            Built::Take3(t) => Some(t),
            _ => None,
        }
    }

    pub fn trace(&self) -> Vec<String> {
        match &self.built {
            Built::Take3(t) => t.trace(),
            _ => Vec::new(),
        }
    }
}

/// Errors after which Take 3 hands over to Take 2.
pub fn is_fallback_error(e: &Error) -> bool {
    matches!(
        e,
        Error::LemmaViolation { .. } | Error::InvariantViolation { .. } | Error::SkeletonInvariantViolated(_)
    )
}

pub fn build<'a>(g: &'a Graph, opts: &Options) -> Result<Outcome<'a>> {
    if !g.is_connected() {
        return Err(Error::DisconnectedGraph);
    }
    let forest = choose_forest(g, opts)?;
    build_with_forest(g, forest, opts)
}

pub fn build_with_forest<'a>(g: &'a Graph, forest: InducedForest, opts: &Options) -> Result<Outcome<'a>> {
    if let Some(v) = forest.addable_vertex(g) {
        return Err(Error::ForestNotMaximal(v));
    }
    let out = |built, cg, sk, fallback| Outcome { g, forest: forest.clone(), fallback, cg, sk, built };
    match opts.method {
        Method::Take1 => {
            let dc = connect_forest(g, &forest)?;
            Ok(out(Built::Take1(color_take1(g, &dc)), None, None, None))
        }
        Method::Take2 => {
            let cg = contract(g, &forest)?;
            let sk = build_skeleton_take2(&cg)?;
            let t2 = color_take2(g, &forest, &cg, &sk)?;
            Ok(out(Built::Take2(t2), Some(cg), Some(sk), None))
        }
        Method::Take3 => {
            let cg = contract(g, &forest)?;
            let attempt = build_skeleton_take3(&cg).and_then(|sk| {
                let t3 = color_take3(g, &forest, &cg, &sk)?;
                if opts.check_pairs {
                    t3.check_all_pairs(|_, _, _| {})?;
                }
                Ok((t3, sk))
            });
            match attempt {
                Ok((t3, sk)) => Ok(out(Built::Take3(t3), Some(cg), Some(sk), None)),
                Err(e) if is_fallback_error(&e) => {
                    let sk = build_skeleton_take2(&cg)?;
                    let mut t2 = color_take2(g, &forest, &cg, &sk)?;
                    t2.coloring.construction = Construction::Take2Fallback;
                    Ok(out(Built::Take2(t2), Some(cg), Some(sk), Some(e.to_string())))
                }
                Err(e) => Err(e),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{petersen, wheel};
    use crate::verify::verify_rainbow;

    #[test]
    fn all_methods_are_rainbow_on_petersen() {
        let g = petersen();
        for m in [Method::Take1, Method::Take2, Method::Take3] {
            let o = build(&g, &Options::new(m)).unwrap();
            let c = o.coloring();
            assert!(verify_rainbow(&g, &c.colors, Some(c.palette), false).unwrap().rainbow_connected);
            let p = o.witness(0, 7).unwrap();
            assert_eq!((p.start(), p.end()), (0, 7));
        }
    }

    #[test]
    fn method_names_parse() {
        assert_eq!("take3".parse::<Method>().unwrap(), Method::Take3);
        assert!("take4".parse::<Method>().is_err());
    }

    #[test]
    fn take3_keeps_its_construction_on_a_wheel() {
        let g = wheel(6).unwrap();
        let o = build(&g, &Options::new(Method::Take3)).unwrap();
        assert_eq!(o.construction(), Construction::Take3, "{:?}", o.fallback);
    }
}
