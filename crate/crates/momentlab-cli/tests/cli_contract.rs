//! Binary-level contract checks: documented example values, the frozen
//! small J table, exit codes, config-file merging, and byte-identical
//! reruns.

use std::path::PathBuf;
use std::process::{Command, Output};

fn momentlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_momentlab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 stdout")
}

fn value_cells(csv: &str) -> Vec<String> {
    csv.lines()
        .skip(1)
        .map(|line| line.split(',').nth(6).expect("value column").to_string())
        .collect()
}

#[test]
fn documented_examples_give_their_printed_values() {
    let out = momentlab(&[
        "compute-i", "--ensemble", "sym", "--k", "1", "--n", "4", "--N", "5", "--engine", "auto",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(value_cells(&text), vec!["3"]);
    assert!(text.contains(",closed,"), "auto resolution is recorded: {text}");

    let out = momentlab(&["compute-i", "--ensemble", "orth", "--k", "2", "--n", "0", "--N", "3"]);
    assert!(out.status.success());
    assert_eq!(value_cells(&stdout(&out)), vec!["2"]);
}

#[test]
fn the_small_symplectic_grid_reproduces_the_frozen_j_table() {
    let out = momentlab(&["grid", "--ensemble", "sym", "--k", "1", "--N", "2"]);
    assert!(out.status.success());
    let expected: [[&str; 5]; 5] = [
        ["1", "0", "1", "0", "1"],
        ["0", "1", "0", "1", "0"],
        ["1", "0", "2", "0", "1"],
        ["0", "1", "0", "1", "0"],
        ["1", "0", "1", "0", "1"],
    ];
    let cells = value_cells(&stdout(&out));
    assert_eq!(cells.len(), 25);
    for m in 0..5 {
        for n in 0..5 {
            assert_eq!(cells[5 * m + n], expected[m][n], "J({m}, {n}; 2)");
        }
    }
}

#[test]
fn n_ranges_expand_to_one_row_per_index() {
    let out = momentlab(&[
        "compute-i", "--ensemble", "sym", "--k", "2", "--n", "0..7", "--N", "4", "--engine", "ssyt",
    ]);
    assert!(out.status.success());
    assert_eq!(
        value_cells(&stdout(&out)),
        vec!["1", "4", "19", "56", "161", "344", "624", "876"]
    );
}

#[test]
fn usage_errors_exit_1() {
    for args in [
        vec!["compute-i", "--ensemble", "sym", "--k", "1", "--N", "2"],
        vec!["compute-i", "--ensemble", "sym", "--k", "1", "--n", "1", "--N", "2", "--engine", "warp"],
        vec!["fit-gamma", "--ensemble", "sym", "--k", "1", "--c", "x/y"],
        vec!["fit-gamma", "--ensemble", "sym", "--k", "1", "--c", "1/3", "--dilates", "2,4"],
        vec!["compute-i", "--ensemble", "sym", "--k", "1", "--n", "5", "--N", "2", "--engine", "closed"],
        vec!["ff-identities", "--q", "4", "--k", "4", "--ell", "2"],
        vec!["no-such-subcommand"],
    ] {
        let out = momentlab(&args);
        assert_eq!(out.status.code(), Some(1), "args {args:?}");
    }
}

#[test]
fn help_and_version_exit_0() {
    assert_eq!(momentlab(&["--help"]).status.code(), Some(0));
    assert_eq!(momentlab(&["--version"]).status.code(), Some(0));
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = [
        "rmt-mc", "--ensemble", "sym", "--k", "1", "--n", "0..2", "--N", "2", "--samples", "1000",
        "--seed", "42", "--format", "json",
    ];
    let first = momentlab(&args);
    let second = momentlab(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);

    let args = ["grid", "--ensemble", "orth", "--k", "2", "--N", "1", "--jobs", "3"];
    let threaded = momentlab(&args);
    let sequential = momentlab(&args[..args.len() - 2]);
    assert!(threaded.status.success());
    assert_eq!(threaded.stdout, sequential.stdout);
}

#[test]
fn config_files_fill_missing_flags_and_flags_override() {
    let dir = tempfile::tempdir().unwrap();
    let conf: PathBuf = dir.path().join("run.conf");
    std::fs::write(
        &conf,
        "# moment run\nensemble=sym\nk=1\nn=4\nN=5\nengine=auto\n",
    )
    .unwrap();
    let conf_str = conf.to_str().unwrap();

    let from_file = momentlab(&["compute-i", "--config", conf_str]);
    assert!(from_file.status.success());
    let from_flags = momentlab(&[
        "compute-i", "--ensemble", "sym", "--k", "1", "--n", "4", "--N", "5", "--engine", "auto",
    ]);
    assert_eq!(from_file.stdout, from_flags.stdout);

    let overridden = momentlab(&["compute-i", "--config", conf_str, "--n", "0"]);
    assert!(overridden.status.success());
    assert_eq!(value_cells(&stdout(&overridden)), vec!["1"]);

    let bad = dir.path().join("bad.conf");
    std::fs::write(&bad, "mystery=7\n").unwrap();
    let out = momentlab(&["compute-i", "--config", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn output_files_receive_the_rows_and_notes_stay_on_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("gamma.csv");
    let out = momentlab(&[
        "fit-gamma", "--ensemble", "sym", "--k", "1", "--c", "1/2", "--output",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let file = std::fs::read_to_string(&path).unwrap();
    assert!(file.starts_with("ensemble,k,m,n,N,engine,value,stderr,seed"));
    assert!(file.contains("sym,1,,,,lattice,1/4,,"));
    let console = stdout(&out);
    assert!(console.contains("gamma = 1/4"));
    assert!(!console.contains("ensemble,k"), "rows went to the file");
}

#[test]
fn json_documents_carry_meta_and_mirror_the_columns() {
    let out = momentlab(&[
        "compute-i", "--ensemble", "orth", "--k", "2", "--n", "0", "--N", "3", "--format", "json",
    ]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["meta"]["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(doc["meta"]["config"]["subcommand"], "compute-i");
    assert_eq!(doc["meta"]["config"]["ensemble"], "orth");
    assert_eq!(doc["rows"][0]["value"], "2");
    assert_eq!(doc["rows"][0]["engine"], "closed");
    assert_eq!(doc["rows"][0]["N"], "3");
}

#[test]
fn every_exact_engine_agrees_through_the_binary() {
    let mut tables = Vec::new();
    for engine in ["ssyt", "series", "lattice", "auto"] {
        let out = momentlab(&[
            "compute-i", "--ensemble", "orth", "--k", "2", "--n", "0..6", "--N", "3", "--engine",
            engine,
        ]);
        assert!(out.status.success(), "engine {engine}");
        tables.push(value_cells(&stdout(&out)));
    }
    for pair in tables.windows(2) {
        assert_eq!(pair[0], pair[1]);
    }
}
