//! Builds the two skeletons of a contracted graph (2-edges-first Kruskal, and
//! local search) and compares the local-search result with the exhaustive
//! optimum over all spanning trees of H.

use rainbow_forest::contraction::contract;
use rainbow_forest::forest::max_induced_forest_min_components;
use rainbow_forest::generators::erdos_renyi_connected;
use rainbow_forest::skeleton::{build_skeleton_take2, build_skeleton_take3, exhaustive_best_skeleton};

fn main() -> rainbow_forest::Result<()> {
    for seed in 0..5 {
        let g = erdos_renyi_connected(11, 0.3, seed)?;
        let cg = contract(&g, &max_induced_forest_min_components(&g)?)?;
        let kruskal = build_skeleton_take2(&cg)?;
        let local = build_skeleton_take3(&cg)?;
        local.check_invariants(&cg)?;
        let best = exhaustive_best_skeleton(&cg)?;
        println!(
            "seed {seed}: |V(H)| = {:2}  config kruskal {:?}  local {:?}  exhaustive {:?}",
            cg.num_vertices(),
            kruskal.config_vector(),
            local.config_vector(),
            best.config_vector()
        );
    }
    let g = erdos_renyi_connected(11, 0.3, 0)?;
    let cg = contract(&g, &max_induced_forest_min_components(&g)?)?;
    print!("{}", build_skeleton_take3(&cg)?.dump(&cg));
    Ok(())
}
