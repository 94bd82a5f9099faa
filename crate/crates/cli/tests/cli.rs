use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::sync::Arc;

use gorenstein::format::{parse_algebra_file, parse_module_file};
use gorenstein::rep::{is_isomorphic, IsoOptions};
use gorenstein_cli::{run, EXIT_COMPUTATION, EXIT_OK, EXIT_PARSE};

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn corpus(dir: &str) -> Vec<PathBuf> {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/corpus").join(dir);
    let mut files: Vec<PathBuf> = fs::read_dir(root).unwrap().map(|e| e.unwrap().path()).collect();
    files.sort();
    files
}

fn gorenstein(args: &[&str], env_seed: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_gorenstein"));
    cmd.args(args).env_remove("GORENSTEIN_SEED");
    if let Some(s) = env_seed {
        cmd.env("GORENSTEIN_SEED", s);
    }
    cmd.output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn sg_on_a_simple_is_certified() {
    let c3 = data("c3.alg");
    let out = gorenstein(&["--algebra", &c3, "sg", "--n", "3", "simple", "1"], None);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("certified_yes"));
    let out = gorenstein(&["--algebra", &c3, "sg", "--n", "2", "--module", "simple:1"], None);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("certified_no"));
}

#[test]
fn period_set_of_a_simple() {
    let r = run(
        ["gorenstein", "--algebra", &data("c3.alg"), "--format", "json", "period-set", "--horizon", "9", "simple", "1"],
        None,
    );
    assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["result"]["members"], serde_json::json!([3, 6, 9]));
    assert_eq!(v["result"]["all_certified"], true);
    assert_eq!(v["result"]["verdicts"][2]["outcome"], "certified_yes");
    assert_eq!(v["result"]["verdicts"][2]["kind"], "projective_flavor");
    assert_eq!(v["result"]["verdicts"][2]["witness_present"], true);
}

#[test]
fn verify_passes_on_small_cycles() {
    let r = run(["gorenstein", "--algebra", &data("c3.alg"), "verify", "--horizon", "9"], None);
    assert_eq!(r.code, EXIT_OK, "{}{}", r.stdout, r.stderr);
    assert!(!r.stdout.contains("FAIL"));
    let r = run(["gorenstein", "--algebra", "C5", "--prime", "3", "verify", "--horizon", "10"], None);
    assert_eq!(r.code, EXIT_OK, "{}{}", r.stdout, r.stderr);
    let r = run(["gorenstein", "--algebra", &data("a2.alg"), "verify", "--horizon", "4"], None);
    assert_eq!(r.code, EXIT_OK, "{}{}", r.stdout, r.stderr);
    assert!(r.stdout.contains("SKIP"));
}

#[test]
fn resolve_ext_strip_and_complexity() {
    let c3 = data("c3.alg");
    let r = run(["gorenstein", "--algebra", &c3, "--format", "json", "resolve", "--horizon", "7", "simple", "1"], None);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    let terms: Vec<u64> = v["result"]["terms"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| t["projectives"][0].as_u64().unwrap())
        .collect();
    assert_eq!(terms, vec![1, 2, 3, 1, 2, 3, 1]);
    assert_eq!(v["result"]["dims_sequence"], serde_json::json!([2, 2, 2, 2, 2, 2, 2]));

    let r = run(
        [
            "gorenstein", "--algebra", &c3, "--format", "json", "ext", "--module", "simple 1", "--module", "simple 1",
            "--degree-from", "0", "--degree-to", "6",
        ],
        None,
    );
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    let dims: Vec<u64> = v["result"].as_array().unwrap().iter().map(|x| x["dimension"].as_u64().unwrap()).collect();
    assert_eq!(dims, vec![1, 0, 0, 1, 0, 0, 1]);

    let r = run(["gorenstein", "--algebra", &c3, "--format", "json", "strip", "--module", &data("s1-p2-c3.mod")], None);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["result"]["stable_dims"], serde_json::json!([1, 0, 0]));
    assert_eq!(v["result"]["projective_vertices"], serde_json::json!([2]));

    let r = run(["gorenstein", "--algebra", &c3, "--format", "json", "complexity", "--horizon", "10", "simple", "1"], None);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["result"]["classification"]["class"], "bounded");
    assert_eq!(v["result"]["classification"]["period"], 3);
    assert_eq!(v["result"]["certified"], true);
}

#[test]
fn sg_extras_require_certification() {
    let c3 = data("c3.alg");
    let r = run(["gorenstein", "--algebra", &c3, "sg", "--n", "2", "--cycle-sum", "simple", "1"], None);
    assert_eq!(r.code, EXIT_COMPUTATION);
    let r = run(["gorenstein", "--algebra", &c3, "sg", "--n", "1", "--self-ext", "simple", "1"], None);
    assert_eq!(r.code, EXIT_COMPUTATION);
    let r = run(
        ["gorenstein", "--algebra", &c3, "--format", "json", "sg", "--n", "3", "--cycle-sum", "--self-ext", "simple", "1"],
        None,
    );
    assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["result"]["cycle_sum"]["total_dims"], serde_json::json!([1, 1, 1]));
    assert_eq!(v["result"]["cycle_sum"]["omega_isomorphic"], true);
    assert_eq!(v["result"]["self_ext"]["projective"], false);
}

#[test]
fn non_self_injective_verdicts() {
    let r = run(
        ["gorenstein", "--algebra", &data("a2.alg"), "--format", "json", "sg", "--n", "1", "simple", "1"],
        None,
    );
    assert_eq!(r.code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["result"]["verdict"]["outcome"], "bounded_no");
    let r = run(
        ["gorenstein", "--algebra", &data("kronecker-trunc.alg"), "--format", "json", "sg", "--n", "1", "proj", "1"],
        None,
    );
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["result"]["verdict"]["outcome"], "certified_yes");
}

#[test]
fn json_output_is_deterministic() {
    let c4 = data("c4-p3.alg");
    let commands: Vec<Vec<&str>> = vec![
        vec!["period-set", "--horizon", "8", "simple", "2", "+", "simple", "4"],
        vec!["sg", "--n", "4", "--cycle-sum", "simple", "1"],
        vec!["complexity", "--horizon", "9", "simple", "1", "+", "proj", "2"],
        vec!["verify", "--horizon", "8"],
        vec!["dual", "inj", "3"],
    ];
    for cmd in commands {
        let mut args = vec!["--algebra", c4.as_str(), "--format", "json", "--seed", "12345"];
        args.extend(&cmd);
        let a = gorenstein(&args, None);
        let b = gorenstein(&args, Some("999"));
        assert_eq!(a.status.code(), Some(0), "{cmd:?}");
        assert_eq!(a.stdout, b.stdout, "{cmd:?}");
        let in_process = run(std::iter::once("gorenstein").chain(args.iter().copied()), None);
        assert_eq!(in_process.stdout.as_bytes(), &a.stdout[..]);
    }
}

#[test]
fn seed_precedence() {
    let c3 = data("c3.alg");
    let args = ["--algebra", c3.as_str(), "sg", "--n", "3", "simple", "1"];
    assert!(stdout(&gorenstein(&args, None)).contains("seed=0xc0ffee"));
    assert!(stdout(&gorenstein(&args, Some("0x2a"))).contains("seed=0x2a"));
    let mut flagged = vec!["--seed", "7"];
    flagged.extend(args);
    assert!(stdout(&gorenstein(&flagged, Some("0x2a"))).contains("seed=0x7"));
    assert_eq!(gorenstein(&args, Some("banana")).status.code(), Some(EXIT_PARSE));
}

#[test]
fn dual_files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let op_alg = dir.path().join("op.alg");
    let dual_mod = dir.path().join("dual.mod");
    let back_mod = dir.path().join("back.mod");
    let c3 = data("c3.alg");
    let original = data("mixed-c3.mod");
    let r = run(
        [
            "gorenstein", "--algebra", &c3, "dual", "--module", &original, "--output",
            dual_mod.to_str().unwrap(), "--algebra-output", op_alg.to_str().unwrap(),
        ],
        None,
    );
    assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
    let r = run(
        [
            "gorenstein", "--algebra", op_alg.to_str().unwrap(), "dual", "--module", dual_mod.to_str().unwrap(),
            "--output", back_mod.to_str().unwrap(),
        ],
        None,
    );
    assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
    let alg = Arc::new(parse_algebra_file(&fs::read_to_string(&c3).unwrap()).unwrap());
    let m = parse_module_file(&fs::read_to_string(&original).unwrap(), &alg).unwrap().module;
    let back = parse_module_file(&fs::read_to_string(&back_mod).unwrap(), &alg).unwrap().module;
    assert!(is_isomorphic(&m, &back, &IsoOptions::default()).is_isomorphic());
}

#[test]
fn table_output_of_dual_is_a_module_file() {
    let c3 = data("c3.alg");
    let r = run(["gorenstein", "--algebra", &c3, "dual", "--module", &data("p1-c3.mod")], None);
    assert_eq!(r.code, EXIT_OK);
    let op = Arc::new(gorenstein::algebra::opposite(&parse_algebra_file(&fs::read_to_string(&c3).unwrap()).unwrap()));
    let dual = parse_module_file(&r.stdout, &op).unwrap();
    assert_eq!(dual.module.dims(), &[1, 1, 0]);
}

#[test]
fn bad_algebra_files_exit_with_parse_error() {
    let files = corpus("bad-algebra");
    assert!(files.len() >= 8);
    for f in files {
        let r = run(["gorenstein", "--algebra", f.to_str().unwrap(), "sg", "--n", "1", "simple", "1"], None);
        assert_eq!(r.code, EXIT_PARSE, "{}: {}", f.display(), r.stderr);
        assert!(r.stderr.contains("line "), "{}: {}", f.display(), r.stderr);
        assert!(r.stdout.is_empty());
    }
}

#[test]
fn bad_module_files_exit_with_parse_error() {
    let c3 = data("c3.alg");
    let files = corpus("bad-module");
    assert!(files.len() >= 8);
    for f in files {
        let r = run(["gorenstein", "--algebra", &c3, "strip", "--module", f.to_str().unwrap()], None);
        assert_eq!(r.code, EXIT_PARSE, "{}: {}", f.display(), r.stderr);
        assert!(r.stderr.contains("line "), "{}: {}", f.display(), r.stderr);
    }
    let violated = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/corpus/bad-module/relation-violated.mod");
    let r = run(["gorenstein", "--algebra", &c3, "strip", "--module", violated.to_str().unwrap()], None);
    assert!(r.stderr.contains("a1 a2"), "{}", r.stderr);
}

#[test]
fn usage_errors_exit_with_parse_error() {
    let c3 = data("c3.alg");
    let cases: Vec<Vec<&str>> = vec![
        vec!["sg", "--n", "1", "simple", "1"],
        vec!["--algebra", &c3, "sg", "simple", "1"],
        vec!["--algebra", &c3, "sg", "--n", "0", "simple", "1"],
        vec!["--algebra", &c3, "sg", "--n", "1", "simple", "9"],
        vec!["--algebra", &c3, "sg", "--n", "1", "widget", "1"],
        vec!["--algebra", &c3, "ext", "simple", "1"],
        vec!["--algebra", &c3, "ext", "--module", "simple 1", "--module", "simple 2", "--degree-from", "3", "--degree-to", "1"],
        vec!["--algebra", &c3, "complexity", "--horizon", "3", "simple", "1"],
        vec!["--algebra", &c3, "--prime", "3", "resolve", "simple", "1"],
        vec!["--algebra", "C1", "resolve", "simple", "1"],
        vec!["--algebra", "missing.alg", "resolve", "simple", "1"],
        vec!["--algebra", &c3, "--format", "xml", "resolve", "simple", "1"],
        vec!["--algebra", &c3, "frobnicate"],
    ];
    for args in cases {
        let r = run(std::iter::once("gorenstein").chain(args.iter().copied()), None);
        assert_eq!(r.code, EXIT_PARSE, "{args:?}: {}", r.stderr);
    }
}
