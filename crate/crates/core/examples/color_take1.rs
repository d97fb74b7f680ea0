//! The 3f-1 construction: connect the forest trees through dominating
//! non-forest vertices and color the resulting spanning tree.

use rainbow_forest::construct::{build, Method, Options};
use rainbow_forest::generators::grid;

fn main() -> rainbow_forest::Result<()> {
    let g = grid(3, 4)?;
    let out = build(&g, &Options::new(Method::Take1))?;
    let c = out.coloring();
    let f = out.forest.f_value();
    println!("grid 3x4: f = {f}, t = {}, colors used {} (bound {})", out.forest.t(), c.colors_used(), 3 * f - 1);
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        println!("  {u}-{v}: {} ({})", c.colors[e], c.rules[e]);
    }
    Ok(())
}
