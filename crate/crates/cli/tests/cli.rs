use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn pursuit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pursuit")).args(args).output().unwrap()
}

fn text(bytes: &[u8]) -> String {
    String::from_utf8_lossy(bytes).into_owned()
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const TREE7: &str = r#"{"n":7,"edges":[[1,2],[1,3],[2,4],[2,5],[3,6],[3,7]]}"#;
const GRID2X2: &str = r#"{"n":4,"edges":[[1,2],[1,3],[2,4],[3,4]]}"#;

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let tree = write(&dir, "tree.json", TREE7);
    let grid = write(&dir, "grid.json", GRID2X2);
    let bad = write(&dir, "bad.json", "{\"n\": 3,\n \"edges\": [[1,2],\n");
    let big = dir.path().join("big.json");
    assert!(pursuit(&["gen", "--family", "tree", "--depth", "4", "--out", s(&big)])
        .status
        .success());

    let cleared = pursuit(&["solve", "--graph", s(&tree), "--visibility", "range:1"]);
    assert_eq!(cleared.status.code(), Some(0));
    assert!(text(&cleared.stdout).contains("cost: 2"));

    let stuck = pursuit(&["solve", "--graph", s(&grid), "--visibility", "range:1"]);
    assert_eq!(stuck.status.code(), Some(2));
    assert!(text(&stuck.stdout).contains("cost: inf"));

    let slow = pursuit(&["solve", "--graph", s(&big), "--visibility", "range:2", "--timeout", "0"]);
    assert_eq!(slow.status.code(), Some(3));

    let malformed = pursuit(&["solve", "--graph", s(&bad)]);
    assert_eq!(malformed.status.code(), Some(1));
    let err = text(&malformed.stderr);
    assert!(err.contains("bad.json") && err.contains("line 3"), "{err}");

    let missing = pursuit(&["solve", "--graph", s(&dir.path().join("nope.json"))]);
    assert_eq!(missing.status.code(), Some(1));
    assert_eq!(pursuit(&["solve"]).status.code(), Some(1));
    assert_eq!(
        pursuit(&["solve", "--graph", s(&tree), "--visibility", "cone:3"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(pursuit(&["suite", "--family", "spirals"]).status.code(), Some(1));
}

#[test]
fn dfs_subcommand_and_solver_flag_agree() {
    let dir = TempDir::new().unwrap();
    let tree = write(&dir, "tree.json", TREE7);
    let a = pursuit(&["dfs", "--graph", s(&tree)]);
    let b = pursuit(&["solve", "--graph", s(&tree), "--solver", "dfs"]);
    assert_eq!(a.status.code(), Some(0));
    let strip = |o: &Output| {
        text(&o.stdout)
            .lines()
            .filter(|l| !l.starts_with("time"))
            .collect::<Vec<_>>()
            .join("\n")
    };
    assert_eq!(strip(&a), strip(&b));
}

#[test]
fn schedule_json_shape() {
    let dir = TempDir::new().unwrap();
    let tree = write(&dir, "tree.json", TREE7);
    let grid = write(&dir, "grid.json", GRID2X2);
    let out = dir.path().join("s.json");
    pursuit(&["solve", "--graph", s(&tree), "--schedule", s(&out)]);
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["clearable"], true);
    assert_eq!(v["cost"], 2);
    assert_eq!(v["moves"].as_array().unwrap().len(), 2);
    assert_eq!(v["trace"].as_array().unwrap().len(), 3);
    assert_eq!(
        v["trace"].as_array().unwrap().last().unwrap()["dirty"],
        serde_json::json!([0])
    );

    pursuit(&["solve", "--graph", s(&grid), "--schedule", s(&out)]);
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["clearable"], false);
    assert!(v["cost"].is_null());
}

#[test]
fn explicit_and_line_visibility() {
    let dir = TempDir::new().unwrap();
    let path = write(
        &dir,
        "path.json",
        r#"{"n":5,"edges":[[1,2],[2,3],[3,4],[4,5]],"coords":[[0,0],[1,0],[2,0],[3,0],[4,0]]}"#,
    );
    let line = pursuit(&["solve", "--graph", s(&path), "--visibility", "line"]);
    assert_eq!(line.status.code(), Some(0));
    assert!(text(&line.stdout).contains("cost: 0"));

    let eye = write(
        &dir,
        "eye.txt",
        "1 0 0 0 0\n0 1 0 0 0\n0 0 1 0 0\n0 0 0 1 0\n0 0 0 0 1\n",
    );
    let spec = format!("matrix:{}", s(&eye));
    let blind = pursuit(&["solve", "--graph", s(&path), "--visibility", &spec]);
    assert_eq!(blind.status.code(), Some(2));
    let seq = pursuit(&[
        "solve",
        "--graph",
        s(&path),
        "--visibility",
        &spec,
        "--moves",
        "sequential",
    ]);
    assert_eq!(seq.status.code(), Some(0));
    assert!(text(&seq.stdout).contains("cost: 4"));

    let ragged = write(&dir, "ragged.txt", "1 0\n0\n");
    let two = write(&dir, "two.json", r#"{"n":2,"edges":[[1,2]]}"#);
    let out = pursuit(&[
        "solve",
        "--graph",
        s(&two),
        "--visibility",
        &format!("matrix:{}", s(&ragged)),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(text(&out.stderr).contains("line 2"), "{}", text(&out.stderr));
}

#[test]
fn oracle_subcommand() {
    let dir = TempDir::new().unwrap();
    let grid = write(&dir, "grid.json", GRID2X2);
    assert_eq!(pursuit(&["oracle", "--graph", s(&grid)]).status.code(), Some(2));
    let two = pursuit(&["oracle", "--graph", s(&grid), "--searchers", "2"]);
    assert_eq!(two.status.code(), Some(0));
    assert!(text(&two.stdout).contains("cost: 0"));
    let slow = pursuit(&["oracle", "--graph", s(&grid), "--speed", "1", "--moves", "sequential"]);
    assert_eq!(slow.status.code(), Some(0));
    assert_eq!(
        pursuit(&["oracle", "--graph", s(&grid), "--speed", "0"]).status.code(),
        Some(1)
    );
    let capped = pursuit(&["oracle", "--graph", s(&grid), "--max-states", "3"]);
    assert_eq!(capped.status.code(), Some(1));
}

#[test]
fn gen_is_reproducible() {
    let a = pursuit(&[
        "gen",
        "--family",
        "deleted-grid",
        "--rows",
        "4",
        "--cols",
        "4",
        "--p",
        "0.5",
        "--seed",
        "9",
    ]);
    let b = pursuit(&[
        "gen",
        "--family",
        "deleted-grid",
        "--rows",
        "4",
        "--cols",
        "4",
        "--p",
        "0.5",
        "--seed",
        "9",
    ]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let g = pursuit(&["gen", "--family", "grid", "--rows", "2", "--cols", "2"]);
    assert_eq!(
        text(&g.stdout).trim(),
        r#"{"n":4,"edges":[[1,2],[1,3],[2,4],[3,4]],"coords":[[0.0,0.0],[1.0,0.0],[0.0,1.0],[1.0,1.0]]}"#
    );
    assert_eq!(
        pursuit(&["gen", "--family", "grid", "--rows", "2"]).status.code(),
        Some(1)
    );
}

#[test]
fn suite_csv() {
    let out = pursuit(&["suite", "--family", "paths", "--n", "1..20", "--L", "1..4", "--no-time"]);
    assert!(out.status.success());
    let csv = text(&out.stdout);
    let mut lines = csv.lines();
    assert_eq!(
        lines.next(),
        Some("family,instance,params,L,clearable,cost,states_expanded,time_ms")
    );
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 80);
    for r in &rows {
        let n: i64 = r[2].trim_start_matches("n=").parse().unwrap();
        let l: i64 = r[3].parse().unwrap();
        assert_eq!(r[5], (n - (2 * l + 1)).max(0).to_string());
        assert_eq!(r[7], "0");
    }
    assert!(text(&out.stderr).contains("cleared"));

    let empty = pursuit(&["suite", "--family", "random-trees", "--count", "0"]);
    assert!(empty.status.success());
    assert_eq!(
        text(&empty.stdout),
        "family,instance,params,L,clearable,cost,states_expanded,time_ms\n"
    );

    let grids = pursuit(&[
        "suite",
        "--family",
        "grids",
        "--sizes",
        "2x2,4x4",
        "--L",
        "1,3",
        "--no-time",
    ]);
    let body = text(&grids.stdout);
    assert!(body.contains("grids,0,2x2,1,false,inf,"));
    assert!(body.contains("grids,1,4x4,3,true,1,"));

    let timed_out = pursuit(&[
        "suite",
        "--family",
        "trees",
        "--depth",
        "4",
        "--L",
        "2",
        "--timeout",
        "0",
    ]);
    assert!(text(&timed_out.stdout).contains("trees,0,depth=4,2,n/a,n/a,"));
}

#[test]
fn suite_output_ignores_thread_count() {
    let args = [
        "suite",
        "--family",
        "deleted-grids",
        "--size",
        "3x3",
        "--count",
        "30",
        "--seed",
        "4",
        "--no-time",
    ];
    let one = pursuit(&[&args[..], &["--jobs", "1"]].concat());
    let many = pursuit(&[&args[..], &["--jobs", "4"]].concat());
    assert!(one.status.success());
    assert_eq!(one.stdout, many.stdout);
}

#[test]
fn export_dot_modes() {
    let dir = TempDir::new().unwrap();
    let tree = write(&dir, "tree.json", TREE7);
    let eager = text(&pursuit(&["export-dot", "--graph", s(&tree)]).stdout);
    assert_eq!(eager.lines().filter(|l| l.contains("[label=\"(")).count(), 37);
    let lazy = text(&pursuit(&["export-dot", "--graph", s(&tree), "--mode", "lazy"]).stdout);
    let nodes = lazy.lines().filter(|l| l.contains("[label=\"(")).count();
    assert!(nodes > 1 && nodes <= 37);
    assert!(lazy.contains("shape=doublecircle"));
}
