//! Contracts every tree of a maximum induced forest to a single vertex and
//! prints the resulting multigraph H with its 1- and 2-edges. Takes a family
//! name and seed; the default has four trees.

use rainbow_forest::contraction::{contract, EdgeKind};
use rainbow_forest::forest::max_induced_forest_min_components;
use rainbow_forest::generators::Family;

fn main() -> rainbow_forest::Result<()> {
    let args: Vec<String> = std::env::args().collect();
    let family = Family::parse(args.get(1).map_or("clique-pendants:6,4", |s| s.as_str()))?;
    let seed = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(0);
    let g = family.generate(seed)?;
    let forest = max_induced_forest_min_components(&g)?;
    let cg = contract(&g, &forest)?;
    print!("{}", cg.dump(&g));
    let twos = cg.edges().iter().filter(|h| h.kind == EdgeKind::Two).count();
    println!("{} H-vertices, {} H-edges, {} of them 2-edges", cg.num_vertices(), cg.edges().len(), twos);
    Ok(())
}
