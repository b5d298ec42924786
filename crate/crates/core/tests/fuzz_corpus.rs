//! Replays the checked-in fuzz seeds through the same checks as the fuzz targets.

use std::fs;
use std::path::PathBuf;

use blockham::harness::{parse_config, parse_sweep_json, parse_window, to_json_string};
use blockham::model::{parse_edge_list, to_edge_list};
use blockham::solver::parse_forced_pairs;

fn seeds(target: &str) -> Vec<(String, Vec<u8>)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<_> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| {
            let p = e.unwrap().path();
            (p.file_name().unwrap().to_string_lossy().into_owned(), fs::read(&p).unwrap())
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

fn text(data: &[u8]) -> &str {
    std::str::from_utf8(data).expect("seeds are utf-8")
}

#[test]
fn edge_list_seeds() {
    let mut parsed = 0;
    for (name, data) in seeds("parse_edge_list") {
        if let Ok(g) = parse_edge_list(text(&data)) {
            let again = parse_edge_list(&to_edge_list(&g)).unwrap();
            assert_eq!(again.edge_vec(), g.edge_vec(), "{name}");
            parsed += 1;
        }
    }
    assert!(parsed > 0);
}

#[test]
fn forced_pair_seeds() {
    let mut outcomes = Vec::new();
    for (name, data) in seeds("parse_forced_pairs") {
        let (&n, rest) = data.split_first().unwrap();
        let r = parse_forced_pairs(text(rest), n as usize);
        if let Ok(set) = &r {
            for &(u, v) in set.pairs() {
                assert!(u < v && v < n as usize, "{name}");
                assert_eq!(set.partner(u), Some(v));
            }
        }
        outcomes.push((name, r.is_ok()));
    }
    assert!(outcomes.iter().any(|o| o.1) && outcomes.iter().any(|o| !o.1), "{outcomes:?}");
}

#[test]
fn config_seeds() {
    for (name, data) in seeds("parse_config") {
        match parse_config(text(&data)) {
            Ok(cfg) => assert!(cfg.trials >= 1 && !cfg.window.is_empty(), "{name}"),
            Err(e) => assert!(name.starts_with("bad"), "{name}: {e}"),
        }
    }
}

#[test]
fn sweep_json_seeds() {
    for (name, data) in seeds("parse_sweep_json") {
        match parse_sweep_json(text(&data)) {
            Ok(table) => {
                let again = parse_sweep_json(&to_json_string(&table)).unwrap();
                assert_eq!(again, table, "{name}");
            }
            Err(e) => assert!(name.starts_with("bad"), "{name}: {e}"),
        }
    }
}

#[test]
fn window_seeds() {
    for (name, data) in seeds("parse_window") {
        match parse_window(text(&data).trim()) {
            Ok(w) => assert!(!w.is_empty() && w.iter().all(|c| c.is_finite()), "{name}"),
            Err(e) => assert_eq!(name, "reversed", "{e}"),
        }
    }
}
