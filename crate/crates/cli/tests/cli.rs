use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperramsey"))
        .args(args)
        .env_remove("RAMSEY_BIT_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn set_size(report: &str) -> usize {
    report
        .lines()
        .find_map(|l| l.strip_prefix("set "))
        .and_then(|l| l.split_whitespace().find_map(|f| f.strip_prefix("size=")))
        .unwrap()
        .parse()
        .unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn erdos_rado_example_succeeds() {
    let o = run(&["extract", "--method", "erdos-rado", "--a", "3", "--k", "3", "--n", "17", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.starts_with("config extract method=erdos-rado k=3 a=3 n=17 c=2 seed=7"));
    assert!(set_size(&text) >= 3);
}

#[test]
fn cfs_needs_three_uniform() {
    let o = run(&["extract", "--method", "cfs", "--a", "2", "--k", "3", "--n", "10", "--seed", "1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["extract", "--method", "ramsey", "--a", "3", "--k", "3", "--n", "10"]);
    assert_eq!(o.status.code(), Some(2), "missing seed");
}

#[test]
fn constant_coloring_file_gives_a_full_set() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("red.txt");
    let mut text = String::from("3 9 2\n");
    for x in 1..=9 {
        for y in x + 1..=9 {
            for z in y + 1..=9 {
                text.push_str(&format!("{x} {y} {z} 0\n"));
            }
        }
    }
    fs::write(&file, text).unwrap();
    for method in ["ramsey", "erdos-rado", "cfs", "cfs-general"] {
        let o = run(&["extract", "--method", method, "--k", "4", "--input", p(&file)]);
        assert_eq!(o.status.code(), Some(0), "{method}: {}", stdout(&o));
        assert!(set_size(&stdout(&o)) >= 4, "{method}: {}", stdout(&o));
        assert!(stdout(&o).contains("set color=0 "));
    }
}

#[test]
fn stored_runs_validate_and_tampering_is_caught() {
    let dir = tempfile::tempdir().unwrap();
    let (col, trace) = (dir.path().join("g.bin"), dir.path().join("run.trace"));
    let o = run(&[
        "extract", "--method", "cfs", "--a", "3", "--k", "4", "--n", "60", "--seed", "5", "--coloring-out",
        p(&col), "--binary", "--trace-out", p(&trace),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let ok = run(&["validate", "--trace", p(&trace), "--coloring", p(&col)]);
    assert_eq!(ok.status.code(), Some(0), "{}", stdout(&ok));

    // flip the color of the first halving event
    let text = fs::read_to_string(&trace).unwrap();
    let mut lines: Vec<String> = text.lines().map(String::from).collect();
    let idx = lines.iter().position(|l| l.starts_with("event ")).unwrap();
    let flipped = if lines[idx].contains(" color=0 ") {
        lines[idx].replace(" color=0 ", " color=1 ")
    } else {
        lines[idx].replace(" color=1 ", " color=0 ")
    };
    lines[idx] = flipped;
    fs::write(&trace, lines.join("\n")).unwrap();
    let bad = run(&["validate", "--trace", p(&trace), "--coloring", p(&col)]);
    assert_eq!(bad.status.code(), Some(4), "{}", stdout(&bad));

    fs::write(&trace, "trace method=cfs n=60\nnonsense\n").unwrap();
    let garbage = run(&["validate", "--trace", p(&trace), "--coloring", p(&col)]);
    assert_eq!(garbage.status.code(), Some(2));
}

#[test]
fn runs_replay_from_their_config_line() {
    let args = ["extract", "--method", "ramsey", "--a", "3", "--k", "4", "--n", "40", "--c", "3", "--seed", "99"];
    let first = stdout(&run(&args));
    assert_eq!(first, stdout(&run(&args)));
    let config = first.lines().next().unwrap();
    assert!(config.contains("seed=99") && config.contains("c=3"));
}

#[test]
fn structured_output_is_json() {
    let o = run(&["--format", "structured", "bound", "--a", "2", "--k", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert!(v["config"].as_str().unwrap().starts_with("config bound"));
    assert!(v["bounds"].as_array().is_some_and(|b| !b.is_empty()));
}

#[test]
fn search_budget_and_witness() {
    let o = run(&["search", "--a", "2", "--k", "4", "--budget", "10000"]);
    assert_eq!(o.status.code(), Some(3));
    let dir = tempfile::tempdir().unwrap();
    let w = dir.path().join("w.txt");
    let o = run(&["search", "--a", "2", "--k", "3", "--workers", "2", "--witness-out", p(&w)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("exact R(2,3,2) = 6"));
    assert!(fs::read_to_string(&w).unwrap().starts_with("2 5 2"));
}

#[test]
fn bit_budget_comes_from_the_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_hyperramsey"))
        .args(["bound", "--a", "3", "--k", "3", "--family", "ramsey"])
        .env("RAMSEY_BIT_BUDGET", "64")
        .output()
        .unwrap();
    let text = stdout(&o);
    assert!(text.contains("bit_budget=64"), "{text}");
    assert!(text.contains("value=-"), "{text}");
}

#[test]
fn lemma_and_selftest() {
    let o = run(&["lemma", "sigma", "--c", "2", "--k", "2,3", "--enumerate"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("exact=6 enumerated=6"));
    assert_eq!(run(&["lemma", "stirling", "--n", "50"]).status.code(), Some(0));
    assert_eq!(run(&["lemma", "pascal", "--a", "7", "--n", "9"]).status.code(), Some(0));
    let o = run(&["lemma", "edge-sum", "--a", "4", "--k", "4", "--r", "6"]);
    assert!(stdout(&o).contains("total 248"));
    assert_eq!(run(&["selftest"]).status.code(), Some(0));
}
