//! The f+2 construction with its rule trace. Pass a family such as
//! `k-pendants:5` or `gnp:12,0.3` and an optional seed.

use rainbow_forest::construct::{build, Method, Options};
use rainbow_forest::generators::Family;

fn main() -> rainbow_forest::Result<()> {
    let args: Vec<String> = std::env::args().collect();
    let family = Family::parse(args.get(1).map_or("k-pendants:5", |s| s.as_str()))?;
    let seed = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(1);
    let g = family.generate(seed)?;
    let out = build(&g, &Options::new(Method::Take3))?;
    if let Some(why) = &out.fallback {
        println!("fell back to take2: {why}");
    }
    let c = out.coloring();
    println!(
        "{}: n = {}, m = {}, f = {}, t = {}, colors used {} of palette {}",
        family.name(),
        g.n(),
        g.m(),
        out.forest.f_value(),
        out.forest.t(),
        c.colors_used(),
        c.palette
    );
    for line in out.trace() {
        println!("  {line}");
    }
    if let Some(t3) = out.take3() {
        for (rule, count) in t3.rule_counts() {
            if count > 0 {
                println!("  {:>3} x {}", count, rule.name());
            }
        }
    }
    Ok(())
}
