use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_rainbow-forest"))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("rainbow-forest-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn run(cmd: &mut Command) -> Output {
    let out = cmd.output().unwrap();
    assert!(out.status.code().is_some(), "killed by a signal");
    out
}

#[test]
fn gen_color_verify_round_trip() {
    let graph = scratch("wheel.txt");
    let out = run(bin().args(["gen", "wheel:6"]));
    assert!(out.status.success());
    std::fs::write(&graph, &out.stdout).unwrap();

    for method in ["take1", "take2", "take3"] {
        let out = run(bin().arg("color").arg(&graph).args(["--method", method]));
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        let coloring = scratch(&format!("{method}.json"));
        std::fs::write(&coloring, &out.stdout).unwrap();
        let out = run(bin().arg("verify").arg(&graph).arg(&coloring));
        assert_eq!(out.status.code(), Some(0));
        let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(report["rainbow_connected"], true);
    }
}

#[test]
fn verify_exits_one_on_a_bad_coloring() {
    let graph = scratch("c5.txt");
    std::fs::write(&graph, run(bin().args(["gen", "cycle:5"])).stdout).unwrap();
    let edges: Vec<String> = [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]
        .iter()
        .map(|(u, v)| format!(r#"{{"u":{u},"v":{v},"color":1}}"#))
        .collect();
    let coloring = scratch("mono.json");
    std::fs::write(&coloring, format!(r#"{{"palette":1,"edges":[{}]}}"#, edges.join(","))).unwrap();
    let out = run(bin().arg("verify").arg(&graph).arg(&coloring));
    assert_eq!(out.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["rainbow_connected"], false);
    assert!(report["failing_pair"].is_array());
}

#[test]
fn forest_and_rc_exact_report_json() {
    let graph = scratch("petersen.txt");
    std::fs::write(&graph, run(bin().args(["gen", "petersen"])).stdout).unwrap();
    let out = run(bin().arg("forest").arg(&graph).arg("--min-components"));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["f"], 7);
    assert_eq!(v["t"], 1);
    let out = run(bin().args(["rc-exact"]).arg(&graph));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["rc"], 3);
}

#[test]
fn bench_writes_versioned_csv() {
    let out = run(bin().args(["bench", "--corpus", "tree:6@3", "petersen", "--format", "csv", "--rc-exact"]));
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("# rainbow-forest records"));
    assert_eq!(lines.len(), 6);
}

#[test]
fn bad_input_is_an_error_not_a_panic() {
    let out = run(bin().args(["gen", "cycle:2"]));
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
}
