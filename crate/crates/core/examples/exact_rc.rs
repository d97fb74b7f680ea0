//! Exact rainbow connection numbers next to the construction sizes, for
//! graphs small enough to search.

use rainbow_forest::construct::{build, Method, Options};
use rainbow_forest::generators::{complete, cycle, k_with_pendants, petersen, wheel};
use rainbow_forest::verify::{rc_exact, rc_lower_bound};

fn main() -> rainbow_forest::Result<()> {
    let graphs = [
        ("K5", complete(5)?),
        ("C8", cycle(8)?),
        ("W5", wheel(5)?),
        ("K3+pendants", k_with_pendants(3)?),
        ("K4+pendants", k_with_pendants(4)?),
        ("Petersen", petersen()),
    ];
    println!("{:<12} {:>3} {:>3} {:>5} {:>3} {:>6}", "graph", "m", "f", "lower", "rc", "take3");
    for (name, g) in &graphs {
        let (rc, _) = rc_exact(g)?;
        let out = build(g, &Options::new(Method::Take3))?;
        println!(
            "{:<12} {:>3} {:>3} {:>5} {:>3} {:>6}",
            name,
            g.m(),
            out.forest.f_value(),
            rc_lower_bound(g)?,
            rc,
            out.coloring().colors_used()
        );
    }
    Ok(())
}
