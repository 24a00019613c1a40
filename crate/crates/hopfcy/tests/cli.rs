use hopfcy::cli::catalog;
use hopfcy::cli::config::parse_file;
use hopfcy::cli::Report;
use serde_json::Value;
use std::path::PathBuf;
use std::process::Command;

fn run(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_hopfcy")).args(args).output().expect("binary runs");
    (String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap(), out.status.code().expect("exit code"))
}

fn temp_file(name: &str, text: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("hopfcy-{}-{name}", std::process::id()));
    std::fs::write(&path, text).unwrap();
    path
}

fn without_timing(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("timing_ms");
    v
}

#[test]
fn exit_codes() {
    let (out, _, code) = run(&["is-cy", "--object", "cleft", "@rank2_unlinked"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("y1^2*y2^2"), "{out}");
    let (out, _, code) = run(&["is-cy", "--object", "hopf", "@rank2_unlinked"]);
    assert_eq!(code, 1, "{out}");
    let (_, _, code) = run(&["validate", "/nonexistent/input.toml"]);
    assert_eq!(code, 2);
    let (_, _, code) = run(&["validate", "@no_such_entry"]);
    assert_eq!(code, 2);
    let (_, _, code) = run(&["is-cy", "@rank2_unlinked"]);
    assert_eq!(code, 2, "missing --object is a usage error");
}

#[test]
fn json_reports_round_trip() {
    for args in [
        ["nakayama", "--object", "hopf", "@sl3_double"],
        ["is-cy", "--object", "crossed", "@polynomial_z2_twisted"],
        ["is-cy", "--object", "cleft", "@sl3_double_generic_cocycle"],
    ] {
        let mut full = vec!["--format", "json"];
        full.extend(args);
        let (out, _, code) = run(&full);
        let r: Report = serde_json::from_str(&out).unwrap();
        assert_eq!(r.exit_code(), code);
        let again: Report = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(again, r);
        assert_eq!(r.to_json().trim_end(), out.trim_end());
    }
}

#[test]
fn reports_are_deterministic() {
    let args = ["--format", "json", "is-cy", "--object", "smash", "@sl2_quantum_plane"];
    let a: Value = serde_json::from_str(&run(&args).0).unwrap();
    let b: Value = serde_json::from_str(&run(&args).0).unwrap();
    assert_eq!(without_timing(a), without_timing(b));
    assert_eq!(run(&args[2..]).0, run(&args[2..]).0, "text reports carry no timing");
}

#[test]
fn config_errors_are_located() {
    let good = catalog::get("sl2_quantum_plane").unwrap();
    let missing_char = good.replace(r#"chi = [["q^2"], ["q^-2"]]"#, r#"chi = [["q^2"]]"#);
    assert_ne!(missing_char, good);
    let path = temp_file("missing-char.toml", &missing_char);
    let (_, err, code) = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("character count is 1, expected 2"), "{err}");

    let path = temp_file("syntax.toml", "params = [\"q\"]\n[datum\nrank = 1\n");
    let (out, _, code) = run(&["--format", "json", "validate", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert!(v["error"].as_str().unwrap().contains("line 2"), "{out}");

    let (_, err, code) = run(&["validate", "@rank2_deformed_linked"]);
    assert_eq!(code, 2);
    assert!(err.contains("linking"), "{err}");
    // permissive mode loads the datum, but its Hopf presentation has an unresolvable overlap
    let (_, err, code) = run(&["--mode", "permissive", "validate", "@rank2_deformed_linked"]);
    assert_eq!(code, 2);
    assert!(err.contains("not confluent"), "{err}");
    let (out, _, code) = run(&["--mode", "permissive", "frobenius-nakayama", "@rank2_deformed_linked"]);
    assert_eq!(code, 0, "{out}");
}

#[test]
fn json_input_matches_toml() {
    let text = catalog::get("rank2_unlinked").unwrap();
    let json = serde_json::to_string_pretty(&parse_file(text).unwrap()).unwrap();
    let path = temp_file("rank2.json", &json);
    let from_json: Report =
        serde_json::from_str(&run(&["--format", "json", "is-cy", "--object", "cleft", path.to_str().unwrap()]).0).unwrap();
    let from_toml: Report = serde_json::from_str(&run(&["--format", "json", "is-cy", "--object", "cleft", "@rank2_unlinked"]).0).unwrap();
    assert_eq!(from_json.input, from_toml.input);
    assert_eq!(from_json.results, from_toml.results);
    assert_eq!(from_json.status, from_toml.status);
}

#[test]
fn roots_and_catalog() {
    let (out, _, code) = run(&["--format", "json", "roots", "--cartan", "A3"]);
    assert_eq!(code, 0);
    let r: Report = serde_json::from_str(&out).unwrap();
    assert_eq!(r.results["count"], 6, "{out}");
    let (out, _, code) = run(&["catalog"]);
    assert_eq!(code, 0);
    for (name, _) in catalog::ENTRIES {
        assert!(out.contains(name), "{name} missing from {out}");
    }
}

#[test]
fn regression_table() {
    let (out, _, code) = run(&["regress"]);
    let fails: Vec<&str> = out.lines().filter(|l| l.contains("FAIL")).collect();
    // the quantum affine space rows disagree with the stated formula; see the README
    assert_eq!(fails.len(), 3, "{out}");
    assert!(fails.iter().all(|l| l.contains("frobenius.affine")), "{out}");
    assert_eq!(code, 1);
    assert_eq!(run(&["paper-regress"]).0, out);
}
