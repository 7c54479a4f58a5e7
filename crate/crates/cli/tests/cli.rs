//! End-to-end tests of the command-line surface: shorthand and JSON
//! descriptor inputs, output formats, and exit codes.

use std::process::{Command, Output};

fn tropflip(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tropflip"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).trim().to_string()
}

const FIG1_JSON: &str = r#"{"type":"graphic","vertices":6,
    "edges":[[0,1],[0,2],[0,3],[1,2],[1,3],[2,3],[1,4],[4,5],[5,2]]}"#;

const FIG3_JSON: &str = r#"{
    "group": {"type": "Zk", "k": 4},
    "vertices": 3,
    "edges": [
        {"id": 0, "from": 0, "to": 1, "gain": 1},
        {"id": 1, "from": 1, "to": 0, "gain": 0},
        {"id": 2, "from": 1, "to": 2, "gain": 2},
        {"id": 3, "from": 2, "to": 0, "gain": 3},
        {"id": 4, "from": 2, "to": 2, "gain": 1}
    ]
}"#;

#[test]
fn flip_uniform_shorthand() {
    let out = tropflip(&["flip", "uniform:5:3", "uniform:5:3"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "6");
}

#[test]
fn flip_accepts_pivot_and_memo_flags() {
    for extra in [
        &["--pivot", "2"][..],
        &["--pivot", "auto"][..],
        &["--memo", "iso"][..],
        &["--jobs", "2"][..],
    ] {
        let mut args = vec!["flip", "uniform:6:3", "uniform:6:4"];
        args.extend_from_slice(extra);
        let out = tropflip(&args);
        assert!(out.status.success(), "{extra:?} failed");
        assert_eq!(stdout(&out), "10", "{extra:?}"); // C(5,2)
    }
}

#[test]
fn flip_glued_graph_from_file_and_inline() {
    let out = tropflip(&["flip", FIG1_JSON, FIG1_JSON]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "0");

    let path = std::env::temp_dir().join(format!("tropflip-fig1-{}.json", std::process::id()));
    std::fs::write(&path, FIG1_JSON).unwrap();
    let path_str = path.to_str().unwrap();
    let out = tropflip(&["flip", path_str, path_str]);
    std::fs::remove_file(&path).ok();
    assert!(out.status.success());
    assert_eq!(stdout(&out), "0");
}

#[test]
fn infinite_flip_renders() {
    let out = tropflip(&["flip", "uniform:2:2", "uniform:2:2"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "infinity");
    let out = tropflip(&["flip", "uniform:2:2", "uniform:2:2", "--format", "json"]);
    assert_eq!(stdout(&out), r#"{"value":"infinity"}"#);
}

#[test]
fn oracle_matches_flip() {
    let flip = tropflip(&["flip", "uniform:4:2", "uniform:4:3"]);
    let oracle = tropflip(&["oracle", "uniform:4:2", "uniform:4:3", "--seed", "9", "--epsilon", "2"]);
    assert!(oracle.status.success());
    assert_eq!(stdout(&flip), stdout(&oracle));
}

#[test]
fn oracle_rejects_wrong_regime() {
    let out = tropflip(&["oracle", "uniform:3:1", "uniform:3:1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn invariant_commands() {
    let out = tropflip(&["beta", "uniform:4:2"]);
    assert_eq!(stdout(&out), "2");
    let out = tropflip(&["nbc", "uniform:5:3"]);
    assert_eq!(stdout(&out), "6");
    let out = tropflip(&["charpoly", "uniform:3:2", "--format", "json"]);
    assert_eq!(
        stdout(&out),
        r#"{"coeffs":[1,-3,2],"mu":[1,2],"reduced":[1,-2]}"#
    );
}

#[test]
fn hadamard_emits_reusable_descriptor() {
    let out = tropflip(&["hadamard", "uniform:3:2", "uniform:3:2", "--format", "json"]);
    assert!(out.status.success());
    let descriptor = stdout(&out);
    // The emitted descriptor is valid input for other commands.
    let nbc = tropflip(&["nbc", &descriptor]);
    assert!(nbc.status.success());
    assert_eq!(stdout(&nbc), "1"); // free matroid has one nbc-basis
}

#[test]
fn realisation_commands() {
    // The triangle has one plane realisation.
    let out = tropflip(&["c2", "graphic:0-1,0-2,1-2"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "1");
    // Moved-edge glued graph: 8 realisations.
    let gprime = r#"{"type":"graphic","vertices":6,
        "edges":[[0,1],[0,3],[1,2],[1,3],[2,3],[1,4],[4,5],[5,2],[2,4]]}"#;
    let out = tropflip(&["c2", gprime]);
    assert_eq!(stdout(&out), "8");
    // Three-vertex Z_4 gain graph: 6 rotation-symmetric realisations.
    let out = tropflip(&["csym", FIG3_JSON]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "6");
    // A non-rigid graph is an input error.
    let out = tropflip(&["c2", "graphic:0-1,1-2,2-3,3-0"]);
    assert_eq!(out.status.code(), Some(2));
    // Periodic count for three independent loops on one vertex.
    let per = r#"{"group":{"type":"Zd","d":2},"vertices":1,"edges":[
        {"id":0,"from":0,"to":0,"gain":[1,0]},
        {"id":1,"from":0,"to":0,"gain":[0,1]},
        {"id":2,"from":0,"to":0,"gain":[1,1]}]}"#;
    let out = tropflip(&["cper", per]);
    assert_eq!(stdout(&out), "1");
}

#[test]
fn odd_self_product_is_internal_consistency_exit() {
    // Minimally periodic by the counts, but the self product is odd.
    let per = r#"{"group":{"type":"Zd","d":1},"vertices":1,
        "edges":[{"id":0,"from":0,"to":0,"gain":[1]}]}"#;
    let out = tropflip(&["cper", per]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn tables_and_json_round_trip() {
    let out = tropflip(&["selftable", "3", "--format", "json"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text, r#"{"0":2,"2":1}"#);
    // Parsing and re-rendering the emitted JSON is idempotent.
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string(&value).unwrap(), text);

    let out = tropflip(&["htable", "1", "3", "--format", "json"]);
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["table"], serde_json::json!({"0": 12, "1": 6}));
    assert_eq!(value["conjecture"]["surjective"], serde_json::json!(true));
}

#[test]
fn bad_inputs_exit_2() {
    let out = tropflip(&["flip", "uniform:3:9", "uniform:3:2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = tropflip(&["flip", "no-such-file.json", "uniform:3:2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = tropflip(&["flip", "uniform:3:2", "uniform:4:2"]);
    assert_eq!(out.status.code(), Some(2)); // ground set mismatch
    let out = tropflip(&["selftable", "4"]);
    assert_eq!(out.status.code(), Some(2)); // even n unsupported
    let out = tropflip(&["flip", "uniform:3:2", "uniform:3:2", "--no-such-flag"]);
    assert_eq!(out.status.code(), Some(2)); // unknown flags rejected by clap
}
