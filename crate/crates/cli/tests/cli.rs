use std::path::PathBuf;
use std::process::{Command, Output};

use schubert_core::render::{parse_products_json, parse_products_text};
use schubert_core::{BuildOptions, CosetTable, FlagSpec};

fn schubert(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_schubert"))
        .args(args)
        .env_remove("SCHUBERT_CACHE_DIR")
        .env_remove("SCHUBERT_JOBS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(
        out.status.success(),
        "exit {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn fixture(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures").join(name);
    std::fs::read_to_string(p).unwrap()
}

#[test]
fn coset_tables_match_golden_files() {
    for n in [6, 7, 8] {
        let preset = format!("E{}", n);
        let out = schubert(&["coset", "--preset", &preset, "--complement", "2", "--max-length", "10"]);
        assert_eq!(stdout(&out), fixture(&format!("e{}_cosets.txt", n)), "{}", preset);
    }
}

#[test]
fn product_tables_match_golden_files() {
    for n in [6, 7, 8] {
        for d in [9, 10] {
            let preset = format!("E{}", n);
            let out = schubert(&["table", "--preset", &preset, "--complement", "2", "--degree", &d.to_string()]);
            assert_eq!(stdout(&out), fixture(&format!("e{}_degree{}.txt", n, d)), "{} degree {}", preset, d);
        }
    }
}

#[test]
fn small_queries() {
    let e6 = ["--preset", "E6", "--complement", "2"];
    let run = |extra: &[&str]| {
        let mut args = vec!["multiply"];
        args.extend_from_slice(&e6);
        args.extend_from_slice(extra);
        stdout(&schubert(&args))
    };
    assert!(run(&["4.2", "5.3"]).ends_with("w_{4,2} w_{5,3} | 5 5 2 1 1\n"));
    assert_eq!(run(&["0.1", "3.1", "--w", "3.1"]), "1\n");
    assert_eq!(run(&["1.1", "8.4", "--w", "9.5"]), "1\n");
    // σ_2 named by its word, w_{9,5} by index
    assert_eq!(run(&["s:2", "8.4", "--w", "9.5", "--mode", "naive"]), "1\n");

    let out = stdout(&schubert(&["coset", "--preset", "E6", "--complement", "2", "--max-length", "0"]));
    assert_eq!(out, "w_{0,1}  id\n");
    let out = stdout(&schubert(&["coset", "--preset", "A3", "--K", ""]));
    assert_eq!(out.lines().count(), 24);
    let out = stdout(&schubert(&["table", "--preset", "B3", "--K", "1", "--degree", "0"]));
    assert_eq!(out, "u v | w_{0,1}\nw_{0,1} w_{0,1} | 1\n");
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| schubert(args).status.code().unwrap();
    assert_eq!(code(&["presets"]), 0);
    assert_eq!(code(&["coset", "--preset", "E9"]), 2);
    assert_eq!(code(&["coset", "--preset", "A3", "--K", "7"]), 2);
    assert_eq!(code(&["coset"]), 2);
    assert_eq!(code(&["frobnicate"]), 2);
    assert_eq!(code(&["verify", "nonsense"]), 2);
    assert_eq!(code(&["multiply", "--preset", "E6", "--complement", "2", "1.1", "8.1", "--w", "8.1"]), 2);
    assert_eq!(code(&["multiply", "--preset", "E6", "--complement", "2", "1.1", "1.7"]), 2);
    assert_eq!(code(&["multiply", "--preset", "A2", "1.1", "1.1", "--w", "s:1.1"]), 2);
    assert_eq!(code(&["verify", "grassmannian", "--n", "4", "--k", "2"]), 0);

    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("t.json");
    let cache = cache.to_str().unwrap();
    assert_eq!(code(&["coset", "--preset", "A3", "--K", "1", "--cache", cache]), 0);
    // a cache for another manifold is refused
    assert_eq!(code(&["coset", "--preset", "A3", "--K", "2", "--cache", cache]), 1);
}

#[test]
fn json_round_trips() {
    let text = stdout(&schubert(&["table", "--preset", "E7", "--complement", "2", "--degree", "9"]));
    let json = stdout(&schubert(&[
        "table", "--preset", "E7", "--complement", "2", "--degree", "9", "--format", "json",
    ]));
    let (_, rows) = parse_products_text(&text).unwrap();
    assert_eq!(parse_products_json(&json).unwrap(), rows);

    let json = stdout(&schubert(&["coset", "--preset", "F4", "--K", "1,2", "--format", "json"]));
    let spec = FlagSpec::preset_with_k("F4", &[1, 2]).unwrap();
    let fresh = CosetTable::build(&spec, BuildOptions::default()).unwrap();
    assert_eq!(CosetTable::from_json(&json).unwrap(), fresh);
}

#[test]
fn cache_reuse_gives_identical_output() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["table", "--preset", "E7", "--complement", "2", "--degree", "10"];
    let fresh = stdout(&schubert(&args));
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_schubert"))
            .args(args)
            .env("SCHUBERT_CACHE_DIR", dir.path())
            .output()
            .unwrap()
    };
    let first = run();
    let files: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(files.len(), 1);
    let second = run();
    assert!(String::from_utf8_lossy(&second.stderr).contains("loaded"));
    assert_eq!(stdout(&first), fresh);
    assert_eq!(stdout(&second), fresh);

    // a shallow cache is extended when a deeper table is needed
    let cache = dir.path().join("shallow.json");
    let cache = cache.to_str().unwrap();
    let shallow = ["coset", "--preset", "E6", "--complement", "2", "--max-length", "3", "--cache", cache];
    stdout(&schubert(&shallow));
    let deep = stdout(&schubert(&[
        "coset", "--preset", "E6", "--complement", "2", "--max-length", "10", "--cache", cache,
    ]));
    assert_eq!(deep, fixture("e6_cosets.txt"));
    assert_eq!(stdout(&schubert(&shallow)).lines().count(), 5);
}

#[test]
fn output_independent_of_jobs() {
    let base = ["table", "--preset", "E8", "--complement", "2", "--degree", "10"];
    let one = stdout(&schubert(&[&base[..], &["--jobs", "1"]].concat()));
    let four = stdout(&schubert(&[&base[..], &["--jobs", "4"]].concat()));
    assert_eq!(one, four);
}

#[test]
fn spec_files() {
    let dir = tempfile::tempdir().unwrap();
    let preset = dir.path().join("e6.json");
    std::fs::write(&preset, r#"{"name": "E6 mod D5", "preset": "E6", "K": [1, 3, 4, 5, 6]}"#).unwrap();
    let out = stdout(&schubert(&["coset", "--spec", preset.to_str().unwrap(), "--max-length", "10"]));
    assert_eq!(out, fixture("e6_cosets.txt"));

    let g2 = dir.path().join("g2.json");
    std::fs::write(&g2, r#"{"n": 2, "cartan": [[2, -1], [-3, 2]], "K": []}"#).unwrap();
    let out = stdout(&schubert(&["coset", "--spec", g2.to_str().unwrap()]));
    assert_eq!(out.lines().count(), 12);

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"cartan": [[2, -1], [0, 2]], "K": []}"#).unwrap();
    let code = schubert(&["coset", "--spec", bad.to_str().unwrap()]).status.code();
    assert_eq!(code, Some(2));
}

#[test]
fn csv_output() {
    let out = stdout(&schubert(&[
        "multiply", "--preset", "E6", "--complement", "2", "1.1", "8.1", "--format", "csv",
    ]));
    assert_eq!(out, "u,v,w,a\n1.1,8.1,9.1,1\n1.1,8.1,9.2,1\n1.1,8.1,9.3,0\n1.1,8.1,9.4,0\n1.1,8.1,9.5,0\n");
}
