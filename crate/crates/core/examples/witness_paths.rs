//! Every construction can name its own rainbow path for a pair. This prints
//! them for a few pairs and checks each against the coloring.

use rainbow_forest::construct::{build, Method, Options};
use rainbow_forest::generators::clique_with_pendants;
use rainbow_forest::verify::check_witness;

fn main() -> rainbow_forest::Result<()> {
    let g = clique_with_pendants(5, 5)?;
    for method in [Method::Take1, Method::Take2, Method::Take3] {
        let out = build(&g, &Options::new(method))?;
        let colors = &out.coloring().colors;
        println!("{method:?}");
        for (a, b) in [(5, 6), (5, 9), (0, 7), (2, 3)] {
            let p = out.witness(a, b)?;
            assert!(check_witness(&g, colors, a, b, &p));
            println!("  {a} -> {b}: {}", p.describe(colors));
        }
    }
    let take3 = build(&g, &Options::new(Method::Take3))?;
    if let Some(t3) = take3.take3() {
        let pairs = t3.check_all_pairs(|_, _, _| {})?;
        println!("take3 witnesses checked on {pairs} pairs");
    }
    Ok(())
}
