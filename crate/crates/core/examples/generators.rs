//! Each graph family with its size, written in the edge-list format for one
//! of them.

use rainbow_forest::generators::Family;
use rainbow_forest::io::to_edge_list;

fn main() -> rainbow_forest::Result<()> {
    let specs = [
        "path:6",
        "cycle:6",
        "complete:5",
        "multipartite:2,2,3",
        "wheel:6",
        "star:5",
        "grid:3,3",
        "petersen",
        "clique-pendants:4,2",
        "k-pendants:4",
        "tree:10",
        "gnp:12,0.3",
        "connected:12,5",
        "planted:3,4,3,0.2",
    ];
    for spec in specs {
        let g = Family::parse(spec)?.generate(42)?;
        println!("{spec:<22} n = {:2}  m = {:2}  diameter {}", g.n(), g.m(), g.diameter()?);
    }
    print!("{}", to_edge_list(&Family::parse("gnp:6,0.5")?.generate(42)?));
    Ok(())
}
