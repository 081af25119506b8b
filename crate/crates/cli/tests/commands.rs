use std::process::Command;

use pg_cli::{run, EXIT_CAP, EXIT_FAIL, EXIT_PASS, EXIT_USAGE};

fn pg(args: &[&str]) -> (i32, String, String) {
    pg_env(args, None)
}

fn pg_env(args: &[&str], env_cap: Option<&str>) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(std::iter::once("pg").chain(args.iter().copied()), env_cap, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn build_info() {
    let (code, out, _) = pg(&["build", "alt(5)", "--info"]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(out, "order: 60\ndegree: 5\ngenerators: 2\ncenter: 1\nsolvable: false\nnilpotent: false\n");
    let (code, out, _) = pg(&["build", "prod(sym(3),cyclic(2))"]);
    assert_eq!((code, out.as_str()), (EXIT_PASS, "order: 12\n"));
}

#[test]
fn family_and_lambda_sets() {
    let (code, out, _) = pg(&["set", "wreathY(2,3,1)", "--family", "pgroup:2", "--element", "g0^2"]);
    assert_eq!(code, EXIT_PASS);
    assert!(out.contains("measure: 1/9"), "{out}");
    let (code, out, _) = pg(&["set", "sym(3)", "--family", "solvable", "--element", "g0", "--cross-check"]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(out, "cross-check: agree\nsize: 6\nmeasure: 1/1\n");
    let (code, out, _) = pg(&["set", "sym(3)", "--lambdanil", "--element", "1"]);
    assert_eq!((code, out.as_str()), (EXIT_PASS, "size: 6\nmeasure: 1/1\n"));
    // g0 of Alt(5) is a 5-cycle, not a 2-element
    let (code, _, err) = pg(&["set", "alt(5)", "--lambda", "2", "--element", "g0"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("not a 2-element"), "{err}");
}

#[test]
fn set_needs_exactly_one_kind() {
    assert_eq!(pg(&["set", "sym(3)", "--element", "g0"]).0, EXIT_USAGE);
    assert_eq!(pg(&["set", "sym(3)", "--family", "all", "--lambdanil", "--element", "g0"]).0, EXIT_USAGE);
}

#[test]
fn structure_queries() {
    let (code, out, _) = pg(&["struct", "sym(4)", "--compute", "chief"]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(out, "4 abelian p=2\n3 abelian p=3\n2 abelian p=2\nlength: 3\n");
    for (what, order) in [("sylow:2", 8), ("op:2", 4), ("fitting", 4), ("radical", 24), ("hypercenter", 1)] {
        let (code, out, _) = pg(&["struct", "sym(4)", "--compute", what]);
        assert_eq!((code, out), (EXIT_PASS, format!("order: {order}\n")), "{what}");
    }
    assert_eq!(pg(&["struct", "sym(4)", "--compute", "op:4"]).0, EXIT_USAGE);
    assert_eq!(pg(&["struct", "sym(4)", "--compute", "derived"]).0, EXIT_USAGE);
}

#[test]
fn tau_is_json() {
    let (code, out, _) = pg(&["tau", "alt(5)", "--element", "g0"]);
    assert_eq!(code, EXIT_PASS);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["tau_nonab"], 1);
    assert_eq!(v["tau_total"], 1);
}

#[test]
fn measure_intervals() {
    let (code, out, _) =
        pg(&["measure", "slprod", "--element", "tail=trivial", "--family", "oddsolvable", "--depth", "2"]);
    assert_eq!(code, EXIT_PASS);
    assert!(out.starts_with("lo: "));
    assert!(out.contains("hi: 21/32\n"), "{out}");
    let (code, out, _) = pg(&[
        "measure",
        "xtower(2,3,1)",
        "--element",
        "tail=designated",
        "--family",
        "nilpotent",
        "--depth",
        "1",
        "--epsilon",
        "7/10",
    ]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(out, "lo: 7/12\nhi: 7/9\ndepth: 1\nverdict: unknown\n");
    let (_, out, _) = pg(&[
        "measure",
        "xtower(2,3,1)",
        "--element",
        "tail=designated",
        "--family",
        "nilpotent",
        "--depth",
        "1",
        "--epsilon",
        "0.3",
    ]);
    assert!(out.ends_with("verdict: yes\n"), "{out}");
    let (_, out, _) = pg(&[
        "measure",
        "ytower(2,3)",
        "--element",
        "tail=designated",
        "--family",
        "pgroup:2",
        "--depth",
        "1",
        "--epsilon",
        "1/2",
    ]);
    assert!(out.ends_with("verdict: no\n"), "{out}");
    let (code, out, _) =
        pg(&["measure", "altpow(5)", "--element", "", "--family", "solvable", "--depth", "1", "--epsilon", "1"]);
    assert_eq!(code, EXIT_PASS);
    assert!(out.ends_with("verdict: yes\n"), "{out}");
    assert_eq!(pg(&["measure", "ytower(2,3)", "--element", "", "--family", "abelian", "--depth", "1"]).0, EXIT_USAGE);
}

#[test]
fn usage_errors() {
    assert_eq!(pg(&[]).0, EXIT_USAGE);
    assert_eq!(pg(&["frobnicate"]).0, EXIT_USAGE);
    let (code, _, err) = pg(&["build", "sym(3"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.starts_with("error: parse error"), "{err}");
    assert_eq!(pg(&["set", "sym(3)", "--family", "pgroup:4", "--element", "g0"]).0, EXIT_USAGE);
    assert_eq!(pg(&["set", "sym(3)", "--family", "all", "--element", "g7"]).0, EXIT_USAGE);
    assert_eq!(pg(&["verify", "nonexistent"]).0, EXIT_USAGE);
    assert_eq!(pg(&["--help"]).0, EXIT_PASS);
}

#[test]
fn cap_exceeded() {
    assert_eq!(pg(&["build", "sym(9)"]).0, EXIT_CAP);
    assert_eq!(pg(&["--cap", "10", "build", "sym(4)"]).0, EXIT_CAP);
    assert_eq!(pg_env(&["build", "sym(4)"], Some("10")).0, EXIT_CAP);
    // flags beat the environment
    assert_eq!(pg_env(&["--cap", "100", "build", "sym(4)"], Some("10")).0, EXIT_PASS);
}

#[test]
fn config_file_layer() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("pg.conf");
    std::fs::write(&path, "cap = 10\nthreads = 2\n").unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(pg(&["--config", p, "build", "sym(4)"]).0, EXIT_CAP);
    assert_eq!(pg_env(&["--config", p, "build", "sym(4)"], Some("24")).0, EXIT_PASS);
    std::fs::write(&path, "cap = ten\n").unwrap();
    let (code, _, err) = pg(&["--config", p, "build", "sym(3)"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("cap"), "{err}");
    assert_eq!(pg(&["--config", "/nonexistent/pg.conf", "build", "sym(3)"]).0, EXIT_USAGE);
}

#[test]
fn verify_single_claims() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let (code, out, _) = pg(&["verify", "Y1-measure", "--json", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_PASS);
    assert!(out.starts_with("PASS Y1-measure: 1/9"), "{out}");
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let obj = v.as_array().unwrap()[0].as_object().unwrap();
    let mut keys: Vec<&str> = obj.keys().map(|k| k.as_str()).collect();
    keys.sort();
    assert_eq!(keys, ["computed", "expected", "id", "paper_anchor", "runtime_ms", "status"]);
    assert_eq!(obj["computed"], "1/9");

    let (code, out, _) = pg(&["verify", "xtower-interval"]);
    assert_eq!(code, EXIT_FAIL);
    assert!(out.starts_with("FAIL xtower-interval: 7/12"), "{out}");

    let (code, out, _) = pg(&["--cap", "100", "verify", "Y2-measure"]);
    assert_eq!(code, EXIT_CAP);
    assert!(out.starts_with("SKIP"), "{out}");
}

#[test]
fn binary_exit_codes_and_env() {
    let bin = env!("CARGO_BIN_EXE_pg");
    let ok = Command::new(bin).args(["build", "cyclic(5)"]).env_remove("PG_CAP").output().unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_PASS));
    assert_eq!(String::from_utf8_lossy(&ok.stdout), "order: 5\n");
    let capped = Command::new(bin).args(["build", "cyclic(5)"]).env("PG_CAP", "4").output().unwrap();
    assert_eq!(capped.status.code(), Some(EXIT_CAP));
    let bad = Command::new(bin).args(["build"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_USAGE));
}
