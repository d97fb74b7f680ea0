//! The independent verifier: a correct coloring, then a 3-coloring, which
//! must fail since the rainbow connection number of C7 is 4.

use rainbow_forest::construct::{build, Method, Options};
use rainbow_forest::generators::cycle;
use rainbow_forest::verify::verify_rainbow;

fn main() -> rainbow_forest::Result<()> {
    let g = cycle(7)?;
    let out = build(&g, &Options::new(Method::Take3))?;
    let c = out.coloring();
    let report = verify_rainbow(&g, &c.colors, Some(c.palette), true)?;
    println!("C7 take3: rainbow {} with {} colors", report.rainbow_connected, report.colors_used);
    for ((a, b), p) in report.paths.iter().take(4) {
        println!("  {a}-{b}: {}", p.describe(&c.colors));
    }
    let three: Vec<u32> = (0..g.m() as u32).map(|e| e % 3 + 1).collect();
    let report = verify_rainbow(&g, &three, Some(3), false)?;
    println!("3 colors: rainbow {}, failing pair {:?}", report.rainbow_connected, report.failing_pair);
    Ok(())
}
