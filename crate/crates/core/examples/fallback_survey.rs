//! Runs Take 3 over random connected graphs and tallies how often it hands
//! over to Take 2, grouped by the failing check.

use std::collections::BTreeMap;

use rainbow_forest::coloring::Construction;
use rainbow_forest::construct::{build, ForestMode, Method, Options};
use rainbow_forest::generators::Family;
use rainbow_forest::verify::verify_rainbow;

fn main() -> rainbow_forest::Result<()> {
    let args: Vec<String> = std::env::args().collect();
    let count: u64 = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(200);
    let family = Family::parse(args.get(2).map_or("gnp:12,0.3", |s| s.as_str()))?;
    let mut reasons: BTreeMap<String, usize> = BTreeMap::new();
    let mut opts = Options::new(Method::Take3);
    if args.get(3).map(|s| s.as_str()) == Some("heuristic") {
        opts.forest = ForestMode::Heuristic;
        opts.min_components = false;
    }
    let mut kept = 0;
    let mut fired: BTreeMap<String, usize> = BTreeMap::new();
    for seed in 0..count {
        let g = family.generate(seed)?;
        let o = build(&g, &opts)?;
        let c = o.coloring();
        let report = verify_rainbow(&g, &c.colors, Some(c.palette), false)?;
        assert!(report.rainbow_connected, "seed {seed}: not rainbow connected");
        if o.construction() == Construction::Take3 {
            assert!(c.max_color() as usize <= o.forest.f_value() + 2);
            kept += 1;
            for app in &o.take3().unwrap().log {
                if !app.colored.is_empty() || app.shortcut.is_some() {
                    let key = format!("{}/{}", app.rule.name(), app.case);
                    if std::env::var("SURVEY_FIND").is_ok_and(|f| f.split(',').any(|p| key.starts_with(p))) {
                        println!("{key} at seed {seed}: {:?}", g.edges());
                    }
                    *fired.entry(key).or_default() += 1;
                }
            }
        } else {
            let why = o.fallback.clone().unwrap_or_default();
            let key: String = why.split(':').next().unwrap_or("").to_string();
            if std::env::var("SURVEY_VERBOSE").is_ok() {
                println!("seed {seed} n {}: {why}", g.n());
            }
            *reasons.entry(key).or_default() += 1;
        }
    }
    println!("take3 kept on {kept}/{count} graphs");
    println!("applications that colored something:");
    for (k, v) in &fired {
        println!("  {v:6}  {k}");
    }
    for (k, v) in reasons {
        println!("  {v:4}  {k}");
    }
    Ok(())
}
