//! Maximum induced forest of the Petersen graph: exact search, the
//! fewest-trees variant, the greedy heuristic and the feedback-vertex-set
//! cross-check.

use rainbow_forest::forest::{
    forest_number_via_fvs, heuristic_induced_forest, max_induced_forest, max_induced_forest_min_components,
    max_induced_tree_size,
};
use rainbow_forest::generators::petersen;

fn main() -> rainbow_forest::Result<()> {
    let g = petersen();
    let exact = max_induced_forest(&g)?;
    let fewest = max_induced_forest_min_components(&g)?;
    let greedy = heuristic_induced_forest(&g);
    println!("exact      F = {:?}  f = {}  t = {}", exact.vertices, exact.f_value(), exact.t());
    println!("min trees  F = {:?}  f = {}  t = {}", fewest.vertices, fewest.f_value(), fewest.t());
    println!("heuristic  F = {:?}  f = {}  t = {}", greedy.vertices, greedy.f_value(), greedy.t());
    println!("n - fvs = {}", forest_number_via_fvs(&g)?);
    println!("largest induced tree: {}", max_induced_tree_size(&g)?);
    Ok(())
}
