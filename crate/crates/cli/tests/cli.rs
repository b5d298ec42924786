use std::path::Path;
use std::process::{Command, Output};

fn blockham(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_blockham")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

fn k5() -> String {
    let mut s = String::from("blockham v1 k=1 sizes=5\n");
    for u in 0..5 {
        for v in u + 1..5 {
            s.push_str(&format!("{u} {v}\n"));
        }
    }
    s
}

#[test]
fn generate_then_check() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("g.txt");
    let o = blockham(&["generate", "--sizes", "30,30", "--p", "0.3", "--q", "0.05", "--seed", "4", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("blockham v1 k=2 sizes=30,30"));
    let again = blockham(&["generate", "--sizes", "30,30", "--p", "0.3", "--q", "0.05", "--seed", "4"]);
    assert_eq!(stdout(&again), text);
    let o = blockham(&["check", out.to_str().unwrap(), "--predicate", "c1", "--json"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("\"holds\":true") || stdout(&o).contains("\"holds\": true"));
}

#[test]
fn false_verdict_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "path.txt", "blockham v1 k=1 sizes=4\n0 1\n1 2\n2 3\n");
    let o = blockham(&["check", &path, "--predicate", "d2"]);
    assert_eq!(o.status.code(), Some(2));
    let o = blockham(&["solve", &path]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("verdict=infeasible"));
}

#[test]
fn solve_with_forced_pairs() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "k5.txt", &k5());
    let f = write(dir.path(), "forced.txt", "# two pairs\n0 2\n1 3\n");
    let o = blockham(&["solve", &g, "--forced", &f, "--seed", "3"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let line = out.lines().find_map(|l| l.strip_prefix("cycle=")).expect("cycle printed");
    let cycle: Vec<usize> = line.split(',').map(|t| t.parse().unwrap()).collect();
    assert_eq!(cycle.len(), 5);
    let adjacent = |a: usize, b: usize| (0..5).any(|i| {
        let (x, y) = (cycle[i], cycle[(i + 1) % 5]);
        (x, y) == (a, b) || (y, x) == (a, b)
    });
    assert!(adjacent(0, 2) && adjacent(1, 3));
    let bad = write(dir.path(), "bad.txt", "0 9\n");
    assert_eq!(blockham(&["solve", &g, "--forced", &bad]).status.code(), Some(1));
}

#[test]
fn malformed_inputs_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let junk = write(dir.path(), "junk.txt", "not a graph\n");
    let o = blockham(&["check", &junk, "--predicate", "d2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("error"));
    let g = write(dir.path(), "k5.txt", &k5());
    assert_eq!(blockham(&["check", &g, "--predicate", "nope"]).status.code(), Some(1));
    assert_eq!(blockham(&["sweep", "--trials", "0"]).status.code(), Some(1));
}

#[test]
fn sweep_flags_override_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "sweep.cfg", "sizes = 40,40\nwindow = 0,1\ntrials = 50\nseed = 2\n");
    let o = blockham(&["sweep", "--config", &cfg, "--trials", "3", "--window=-1:1:1", "--threads", "2"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "c,n,trials,p_hat_ham,p_hat_d2,p_hat_gap,predicted,ci_lo,ci_hi");
    assert_eq!(lines.len(), 4);
    assert!(lines[1..].iter().all(|l| l.split(',').nth(2) == Some("3")));
    let json = dir.path().join("out.json");
    let o = blockham(&["sweep", "--config", &cfg, "--trials", "2", "--format", "json", "--out", json.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(std::fs::read_to_string(json).unwrap().contains("\"schema_version\": 1"));
}

#[test]
fn sweep_lints_go_to_stderr() {
    let o = blockham(&["sweep", "--sizes", "60", "--trials", "1"]);
    assert!(o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning"));
}

#[test]
fn stitch_prints_trace_and_summary() {
    let o = blockham(&["stitch", "--sizes", "150,150", "--seed", "1", "--c", "3"]);
    let out = stdout(&o);
    let summary = out.lines().last().unwrap();
    assert!(summary.starts_with('{') && summary.contains("\"outcome\""));
    if o.status.success() {
        assert!(out.lines().any(|l| l.starts_with("level=1 block=0")));
    } else {
        assert_eq!(o.status.code(), Some(2));
    }
}
