//! The 2f+2 construction on a complete multipartite graph, printed as JSON.

use rainbow_forest::construct::{build, Method, Options};
use rainbow_forest::generators::complete_multipartite;

fn main() -> rainbow_forest::Result<()> {
    let g = complete_multipartite(&[2, 3, 3])?;
    let out = build(&g, &Options::new(Method::Take2))?;
    let f = out.forest.f_value();
    eprintln!("K(2,3,3): f = {f}, bound {}", 2 * f + 2);
    println!("{}", serde_json::to_string_pretty(&out.coloring().to_json(&g))?);
    Ok(())
}
