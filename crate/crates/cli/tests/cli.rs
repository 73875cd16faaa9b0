use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use leavitt_cli::{emit, parse_graph_file, Body};
use leavitt_core::row_graphs::{pyramid, truncate};
use proptest::prelude::*;

const BIN: &str = env!("CARGO_BIN_EXE_leavitt");

fn leavitt(args: &[&str]) -> Output {
    Command::new(BIN).args(args).current_dir(env!("CARGO_MANIFEST_DIR")).output().unwrap()
}

fn corpus() -> Vec<PathBuf> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus");
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir).unwrap().map(|e| e.unwrap().path()).collect();
    files.sort();
    files
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn every_corpus_file_validates_and_round_trips() {
    let files = corpus();
    assert!(files.len() >= 20);
    for f in &files {
        let out = leavitt(&["validate", f.to_str().unwrap()]);
        assert!(out.status.success(), "{}", f.display());
        let text = std::fs::read_to_string(f).unwrap();
        let doc = parse_graph_file(&text).unwrap();
        let canonical = emit(&doc);
        let again = parse_graph_file(&canonical).unwrap();
        assert_eq!(again, doc);
        assert_eq!(emit(&again), canonical);
    }
}

#[test]
fn corpus_pyramids_match_generators() {
    let read = |name: &str| {
        let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus").join(name);
        parse_graph_file(&std::fs::read_to_string(path).unwrap()).unwrap().body
    };
    assert_eq!(read("pyramid3.graph"), Body::Rows(pyramid(3).unwrap()));
    assert_eq!(read("truncated-pyramid2.graph"), Body::Graph(truncate(&pyramid(2).unwrap(), 4).unwrap()));
}

#[test]
fn census_field_dependence() {
    for (field, expected) in [
        ("countable", "countably-infinite"),
        ("finite:2", "countably-infinite"),
        ("finite:9", "countably-infinite"),
        ("uncountable", "uncountable"),
    ] {
        let out = leavitt(&["--format", "json", "census", "--field", field, "corpus/loop.graph"]);
        assert!(out.status.success());
        let v = json(&out);
        assert_eq!(v["result"]["cardinality"], expected, "{field}");
        assert_eq!(v["result"]["evidence"]["kind"], "cycle-with-field");
    }
}

#[test]
fn pyramid_command() {
    let out = leavitt(&["--format", "json", "pyramid", "3"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["command"], "pyramid");
    assert_eq!(v["result"]["census"], "finite(3)");
    assert_eq!(v["result"]["hereditarySaturated"].as_array().unwrap().len(), 4);
}

#[test]
fn exit_codes() {
    // Input errors: unreadable file, parse error, bad field, missing field,
    // unknown command and flag, rowgraph for chen.
    for args in [
        &["analyze", "corpus/missing.graph"][..],
        &["census", "--field", "countable-ish", "corpus/loop.graph"],
        &["census", "--field", "finite:1", "corpus/loop.graph"],
        &["census", "corpus/loop.graph"],
        &["frobnicate", "corpus/loop.graph"],
        &["analyze", "--colour", "corpus/loop.graph"],
        &["chen", "corpus/pyramid3.graph"],
        &["pyramid", "0"],
        &["--format", "yaml", "analyze", "corpus/loop.graph"],
    ] {
        assert_eq!(leavitt(args).status.code(), Some(2), "{args:?}");
    }
    let out = leavitt(&["--max-lattice", "3", "lattice", "corpus/breaking.graph"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("lattice too large"));
    assert_eq!(leavitt(&["lattice", "corpus/breaking.graph"]).status.code(), Some(0));
}

#[test]
fn parse_errors_are_positioned() {
    let dir = std::env::temp_dir().join(format!("leavitt-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.graph");
    std::fs::write(&path, "graph g\nvertex v\nedge e v w\n").unwrap();
    let out = leavitt(&["analyze", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("bad.graph:3:10: unknown vertex `w`"), "{err}");
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn reports_are_byte_identical_across_runs() {
    for f in corpus() {
        let f = f.to_str().unwrap();
        for cmd in [&["analyze", f][..], &["lattice", f], &["chain", f], &["census", "--field", "countable", f]] {
            let mut args = vec!["--format", "json"];
            args.extend_from_slice(cmd);
            assert_eq!(leavitt(&args).stdout, leavitt(&args).stdout, "{args:?}");
        }
    }
}

#[test]
fn text_census_lines() {
    let out = leavitt(&["census", "--field", "uncountable", "corpus/two-loops.graph"]);
    assert!(stdout(&out).starts_with("census: uncountable\n"));
    let out = leavitt(&["census", "--field", "countable", "corpus/apart-loops.graph"]);
    assert!(stdout(&out).starts_with("census: countably-infinite\n"));
}

fn token() -> impl Strategy<Value = String> {
    "[a-z][a-z0-9_']{0,3}"
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    // Canonical text is a fixed point of parse ∘ emit, whatever the
    // declaration order, comments or spacing of the source.
    #[test]
    fn emit_parse_round_trip(
        verts in prop::collection::btree_set(token(), 1..6),
        edges in prop::collection::vec((0usize..6, 0usize..6, 0u8..4), 0..8),
        pad in "[ \t]{1,3}",
    ) {
        let verts: Vec<String> = verts.into_iter().collect();
        let mut text = String::from("# generated\ngraph g\n");
        for v in verts.iter().rev() {
            text.push_str(&format!("vertex{pad}{v}{pad}# v\n"));
        }
        for (i, (s, r, m)) in edges.iter().enumerate() {
            let mult = match m { 0 => String::new(), 3 => " inf".into(), m => format!(" {m}") };
            text.push_str(&format!("edge e{i}{pad}{}{pad}{}{mult}\n", verts[s % verts.len()], verts[r % verts.len()]));
        }
        let doc = parse_graph_file(&text).unwrap();
        let canonical = emit(&doc);
        let again = parse_graph_file(&canonical).unwrap();
        prop_assert_eq!(&again, &doc);
        prop_assert_eq!(emit(&again), canonical);
    }
}
