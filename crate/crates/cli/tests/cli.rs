use std::path::PathBuf;

use hvir_cli::{run, Outcome};
use serde_json::{json, Value};

fn tmp(name: &str, contents: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn report(out: &Outcome) -> Value {
    serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{e}: {out:?}"))
}

#[test]
fn config_file_then_flags() {
    let cfg = tmp("cli_config.json", r#"{"n": 1, "window_B": 1, "seed": 3}"#);
    let out = run(["--config", cfg.to_str().unwrap(), "jacobi"], None);
    assert_eq!(out.code, 0);
    let r = report(&out);
    assert_eq!(r["payload"]["n"], 1);
    assert_eq!(r["payload"]["B"], 1);

    let out = run(["--n", "2", "jacobi", "--B", "1", "--variant", "wa"], Some(cfg.clone()));
    assert_eq!(report(&out)["payload"]["n"], 2);
}

#[test]
fn bad_config_is_a_usage_error() {
    let cfg = tmp("cli_bad_config.json", r#"{"n": 2, "window": 3}"#);
    let out = run(["--config", cfg.to_str().unwrap(), "jacobi"], None);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("unknown field"), "{}", out.stderr);

    let cfg = tmp("cli_bad_mu.json", r#"{"n": 2, "mu_values": [1]}"#);
    assert_eq!(run(["--config", cfg.to_str().unwrap(), "jacobi"], None).code, 2);
}

#[test]
fn specialized_bracket() {
    let out = run(
        ["--mu", "2,1/3", "bracket", "--lhs", "E[1,0]", "--rhs", "E[-1,0]"],
        None,
    );
    assert_eq!(out.code, 0);
    assert_eq!(report(&out)["payload"]["result"], "-4*E[0,0] + (1/2)*C1");
    let out = run(["--mu", "1,1", "bracket", "--lhs", "E[1,-1]", "--rhs", "C1"], None);
    assert_eq!(out.code, 1);
    assert_eq!(report(&out)["counterexamples"][0]["alpha"], json!([1, -1]));
}

#[test]
fn variant_mismatch_and_help() {
    let out = run(
        ["bracket", "--lhs", "H[1,0]", "--rhs", "E[0,0]", "--variant", "solwitt"],
        None,
    );
    assert_eq!(out.code, 2);
    let out = run(["--help"], None);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("verma-growth"));
}

#[test]
fn pretty_output() {
    let out = run(["--pretty", "theta-check", "--which", "2", "--theta", "x^2-x"], None);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("status   ok"), "{}", out.stdout);
    assert!(out.stdout.contains("defect   0"), "{}", out.stdout);
}

#[test]
fn cochain_files() {
    let c = tmp(
        "cli_cochain.json",
        r#"[{"pair": ["H[1]", "H[-1]"], "value": "2*m1/3"},
            {"pair": ["H[2]", "H[-2]"], "value": "4*m1/3"},
            {"pair": ["E[1]", "E[-1]"], "value": "m1"},
            {"pair": ["E[2]", "E[-2]"], "value": "2*m1"}]"#,
    );
    let path = c.to_str().unwrap();
    let out = run(["--n", "1", "cocycle-check", "--cochain", path, "--B", "2"], None);
    assert_eq!(out.code, 0, "{out:?}");
    let out = run(["--n", "1", "cocycle-decompose", "--cochain", path, "--B", "2"], None);
    assert_eq!(out.code, 0, "{out:?}");
    let r = report(&out);
    assert_eq!(r["payload"]["a"], json!(["0", "0", "2"]));
    assert_eq!(r["payload"]["b"], json!([{"symbol": "E[0]", "value": "-1/2"}]));

    let missing = run(["cocycle-decompose", "--cochain", "/nonexistent/c.json"], None);
    assert_eq!(missing.code, 2);
}

#[test]
fn generator_cocycle_check_window() {
    let out = run(
        [
            "--samples",
            "100",
            "--seed",
            "5",
            "cocycle-check",
            "--which",
            "1",
            "--B",
            "2",
        ],
        None,
    );
    assert_eq!(out.code, 0);
    assert_eq!(report(&out)["payload"]["triples"]["sampled"], 100);
}

#[test]
fn module_commands() {
    let out = run(
        [
            "tmod-act",
            "--x",
            "H[0,1]",
            "--vector",
            r#"[{"kappa":[1,0],"coeff":"2"}]"#,
            "--F",
            "3",
        ],
        None,
    );
    assert_eq!(
        report(&out)["payload"]["result"],
        json!([{"kappa": [1, 1], "coeff": "6"}])
    );

    let out = run(["tmod-submodule", "--a", "0", "--b", "1", "--F", "0", "--B", "1"], None);
    let inv = &report(&out)["payload"]["invariant"];
    assert_eq!(inv.as_array().unwrap().len(), 1);
    assert_eq!(inv[0].as_array().unwrap().len(), 8);

    let out = run(["tmod-axioms", "--quotient", "--a", "1"], None);
    assert_eq!(out.code, 2);
}

#[test]
fn verma_commands() {
    let out = run(["verma-act", "--x", "H[0,0]", "--c0", "5"], None);
    assert_eq!(report(&out)["payload"]["text"], "5*v");

    let creator = r#"[{"kind":"E","alpha":[1,0]}]"#;
    assert_eq!(run(["verma-act", "--x", "E[0,0]", "--monomial", creator], None).code, 2);
    let out = run(
        [
            "verma-act",
            "--x",
            "E[0,0]",
            "--monomial",
            creator,
            "--mirror",
            "--lam",
            "0",
        ],
        None,
    );
    assert_eq!(report(&out)["payload"]["text"], "m1*E[1,0]*v");

    let out = run(["verma-weights", "--gamma", "[-1,0]", "--D", "2", "--K", "2"], None);
    assert_eq!(report(&out)["payload"]["count"], 10);

    let out = run(["verma-growth", "--gamma", "1,0", "--K", "1,2,3", "--mirror"], None);
    let r = report(&out);
    assert_eq!(r["payload"]["counts"], json!([6, 10, 14]));
    assert_eq!(r["payload"]["strictly_increasing"], true);
}

#[test]
fn genverma_command() {
    let out = run(
        [
            "--exhaustive",
            "genverma-level",
            "--level",
            "0",
            "--B",
            "1",
            "--kappa",
            "1",
        ],
        None,
    );
    assert_eq!(out.code, 0, "{out:?}");
    let r = report(&out);
    assert_eq!(r["payload"]["basis_size"], 1);
    assert_eq!(r["payload"]["pairs"]["exhaustive"], true);
    assert_eq!(run(["--n", "1", "genverma-level", "--level", "1"], None).code, 2);
}
