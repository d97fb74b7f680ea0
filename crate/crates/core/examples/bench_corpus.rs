//! Runs the experiment harness over a mixed corpus and prints the table and
//! the CSV records.

use rainbow_forest::harness::{parse_corpus, run_experiment, to_csv, to_text, HarnessOptions};

fn main() -> rainbow_forest::Result<()> {
    let specs: Vec<String> = ["gnp:10,0.3@5", "planted:3,3,2,0.1@5", "k-pendants:4", "wheel:6", "petersen"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let corpus = parse_corpus(&specs, 0)?;
    let records = run_experiment(&corpus, &HarnessOptions { rc_exact: true, fvs: true, timings: false });
    print!("{}", to_text(&records));
    println!();
    print!("{}", to_csv(&records, false)?);
    Ok(())
}
