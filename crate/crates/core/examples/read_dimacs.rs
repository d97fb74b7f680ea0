//! Parses a DIMACS `p edge` file (1-based) and colors it. Reads the path given
//! as the first argument, or a small built-in instance.

use rainbow_forest::construct::{build, Method, Options};
use rainbow_forest::io::{parse_edge_list, read_graph};

const SAMPLE: &str = "c house graph\np edge 5 6\ne 1 2\ne 2 3\ne 3 4\ne 4 1\ne 3 5\ne 4 5\n";

fn main() -> rainbow_forest::Result<()> {
    let g = match std::env::args().nth(1) {
        Some(path) => read_graph(path.as_ref(), true)?,
        None => parse_edge_list(SAMPLE, true)?,
    };
    let out = build(&g, &Options::new(Method::Take3))?;
    let c = out.coloring();
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        println!("{} {} {}", g.label(u), g.label(v), c.colors[e]);
    }
    Ok(())
}
