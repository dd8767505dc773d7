use std::collections::HashSet;
use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

use nijenhuis::expr::{eval_str, JsonLinComb};
use nijenhuis::{LinComb, Symbol};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nijenhuis"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "fixtures", name]
        .iter()
        .collect();
    p.to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).trim().to_string()
}

fn xyz() -> HashSet<Symbol> {
    ["x", "y", "z"]
        .iter()
        .map(|n| Symbol::new(n).unwrap())
        .collect()
}

fn decode_json(text: &str) -> LinComb {
    let j: JsonLinComb = serde_json::from_str(text).unwrap();
    LinComb::try_from(&j).unwrap()
}

#[test]
fn mul_of_two_brackets() {
    let o = bin(&["mul", "[x]", "[y]"]);
    assert_eq!(o.status.code(), Some(0));
    let got = eval_str(&stdout(&o), &xyz()).unwrap();
    let want = eval_str("[[x]*y] + [x*[y]] - [[x*y]]", &xyz()).unwrap();
    assert_eq!(got, want);
}

#[test]
fn json_and_text_agree() {
    let cases: [&[&str]; 3] = [
        &["mul", "[[x]]", "[y]"],
        &["eval", "star(x, [y])"],
        &["eval", "P(x*y) - 1/2*succ(x,z)"],
    ];
    for args in cases {
        let text = bin(args);
        let mut jargs = vec!["--json"];
        jargs.extend(args);
        let json = bin(&jargs);
        assert_eq!(text.status.code(), Some(0));
        assert_eq!(json.status.code(), Some(0));
        assert_eq!(
            eval_str(&stdout(&text), &xyz()).unwrap(),
            decode_json(&stdout(&json))
        );
    }
}

#[test]
fn undeclared_generator_is_usage_error() {
    let o = bin(&["eval", "x*w"]);
    assert_eq!(o.status.code(), Some(2));
    let o = bin(&["--generators", "x,w", "eval", "x*w"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "x*w");
}

#[test]
fn syntax_errors_exit_2() {
    for e in ["x +", "[x", "x*[]", "prec(x)", "3"] {
        assert_eq!(bin(&["eval", e]).status.code(), Some(2), "{e}");
    }
}

#[test]
fn sweeps_pass() {
    for args in [
        vec!["assoc-check", "--max-size", "2"],
        vec!["nijenhuis-check", "--max-size", "2"],
        vec!["ns-check"],
        vec!["ndend-check"],
    ] {
        let o = bin(&args);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stdout(&o));
    }
}

#[test]
fn solve_relspace_json() {
    let o = bin(&["--json", "solve-relspace"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["dimension"], 5);
    assert_eq!(v["equals_ndendriform"], true);
    assert_eq!(v["contains_ns"], true);
    assert_eq!(v["basis"].as_array().unwrap().len(), 5);
    assert_eq!(v["monomials"].as_array().unwrap().len(), 13);
}

#[test]
fn fd_check_fixtures() {
    for f in [
        "projection.json",
        "scalar0.json",
        "scalar1.json",
        "scalar2.json",
        "projection_ns.json",
        "zero_ns_1.json",
    ] {
        let o = bin(&["fd-check", &fixture(f)]);
        assert_eq!(o.status.code(), Some(0), "{f}: {}", stdout(&o));
    }
    let o = bin(&["fd-check", &fixture("swap.json")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("(e1, e1)"));
}

#[test]
fn malformed_file_is_usage_error() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(
        f,
        "{{\"dim\": 2, \"mult\": [[[\"1\"]]], \"op\": [[\"1\"]]}}"
    )
    .unwrap();
    let o = bin(&["fd-check", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(
        bin(&["fd-check", "/nonexistent/file.json"]).status.code(),
        Some(2)
    );
}

#[test]
fn induce_ns_output_passes_fd_check() {
    let o = bin(&["induce-ns", &fixture("projection.json")]);
    assert_eq!(o.status.code(), Some(0));
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(&o.stdout).unwrap();
    assert_eq!(
        bin(&["fd-check", f.path().to_str().unwrap()]).status.code(),
        Some(0)
    );
    assert_eq!(
        bin(&["induce-ns", &fixture("swap.json")]).status.code(),
        Some(1)
    );
}

#[test]
fn enveloping_commands() {
    let o = bin(&["env-generators", &fixture("projection.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 12);

    let o = bin(&[
        "eval-hom",
        &fixture("projection.json"),
        &fixture("identity_map.json"),
        "e1*[e1] - e1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let o = bin(&[
        "--json",
        "eval-hom",
        &fixture("projection.json"),
        &fixture("identity_map.json"),
        "[e1]",
    ]);
    assert_eq!(o.status.code(), Some(0));

    let member = bin(&[
        "ideal-member",
        &fixture("projection.json"),
        "[e1 - e1*[e1]]",
    ]);
    assert_eq!(member.status.code(), Some(0));
    assert!(stdout(&member).starts_with("Member"));
    let not = bin(&["ideal-member", &fixture("projection.json"), "e1"]);
    assert_eq!(not.status.code(), Some(0));
    assert!(stdout(&not).starts_with("NotDetected"));
}
