//! End-to-end checks of the command-line surface through the argument
//! parser, without spawning processes.

use nsymm_cli::run_from;

fn run(args: &[&str]) -> (i32, String) {
    let mut full = vec!["nsymm"];
    full.extend_from_slice(args);
    let outcome = run_from(full);
    (outcome.code, outcome.stdout)
}

#[test]
fn newton_primitive_text() {
    let (code, out) = run(&["newton", "p", "2"]);
    assert_eq!(code, 0);
    assert_eq!(out, "2*Z2 - Z1^2\n");

    let (code, out) = run(&["newton", "q", "3"]);
    assert_eq!(code, 0);
    assert_eq!(out, "3*Z3 - Z1*Z2 - 2*Z2*Z1 + Z1^3\n");
}

#[test]
fn lyndon_listing() {
    let (code, out) = run(&["lyndon", "3"]);
    assert_eq!(code, 0);
    assert_eq!(out, "[3] [1,2]\n");

    let (code, out) = run(&["--output", "json", "lyndon", "3"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v, serde_json::json!([[3], [1, 2]]));

    let (code, _) = run(&["lyndon", "0"]);
    assert_eq!(code, 2);
}

#[test]
fn primitive_command() {
    let (code, out) = run(&["primitive", "[1,2]"]);
    assert_eq!(code, 0);
    assert_eq!(out, "Z1*Z2 - Z2*Z1\n");

    // Non-Lyndon input is a usage error with a message.
    let (code, out) = run(&["primitive", "[2,1]"]);
    assert_eq!(code, 2);
    assert!(out.contains("not a Lyndon"));

    let (code, out) = run(&["primitive", "oops"]);
    assert_eq!(code, 2);
    assert!(out.contains("cannot parse"));
}

#[test]
fn curve_respects_truncation() {
    let (code, out) = run(&["curve", "[1,2]", "--truncation", "2"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 2);
    assert!(out.starts_with("d(1) = Z1*Z2 - Z2*Z1\n"));

    let (code, out) = run(&["--output", "json", "curve", "[2]", "--truncation", "3"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["host"], "NSymm");
    assert_eq!(v["terms"].as_array().unwrap().len(), 3);
    // Round-trip through the documented schema.
    let back = nsymm::json::curve_from_json(&v).unwrap();
    assert_eq!(back.bound(), 3);
}

#[test]
fn isobaric_entries() {
    let (code, out) = run(&["isobaric", "n", "1", "2"]);
    assert_eq!(code, 0);
    assert_eq!(out, "3*Z3 - 2*Z1*Z2 - Z2*Z1 + Z1^3\n");

    let (code, out) = run(&["isobaric", "l", "1", "1"]);
    assert_eq!(code, 0);
    assert_eq!(out, "X1*Y1 - Y1*X1\n");

    let (code, out) = run(&["isobaric", "n-swl", "2", "1"]);
    assert_eq!(code, 0);
    assert_eq!(out, "3*Z3 - 2*Z1*Z2 - Z2*Z1 + Z1^3\n");

    let (code, _) = run(&["isobaric", "n", "0", "2"]);
    assert_eq!(code, 2);
}

#[test]
fn shuffle_command() {
    let (code, out) = run(&["shuffle", "[1]", "[2,3]"]);
    assert_eq!(code, 0);
    assert_eq!(out, "[2,4] + [3,3] + [1,2,3] + [2,1,3] + [2,3,1]\n");

    let (code, out) = run(&["--output", "json", "shuffle", "[1]", "[1]"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let q = nsymm::json::qelem_from_json(&v).unwrap();
    assert_eq!(q.coeff(&nsymm::Composition::new(vec![2])), nsymm::int(1));
}

#[test]
fn pairing_from_files() {
    let dir = std::env::temp_dir();
    let p_path = dir.join("nsymm_cli_test_p.json");
    let q_path = dir.join("nsymm_cli_test_q.json");
    std::fs::write(&p_path, r#"[{"word": [1,2], "coeff": "1"}]"#).unwrap();
    std::fs::write(&q_path, r#"[{"composition": [1,2], "coeff": "5"}]"#).unwrap();

    let (code, out) = run(&["pair", p_path.to_str().unwrap(), q_path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(out, "5\n");

    let (code, out) = run(&["pair", "/definitely/missing.json", q_path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(out.contains("cannot read"));

    // A two-alphabet polynomial cannot be paired.
    let x_path = dir.join("nsymm_cli_test_x.json");
    std::fs::write(&x_path, r#"[{"word": [["X",1]], "coeff": "1"}]"#).unwrap();
    let (code, out) = run(&["pair", x_path.to_str().unwrap(), q_path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(out.contains("NSymm"));
}

#[test]
fn index_table_small() {
    let (code, out) = run(&["index-table", "--max-weight", "4"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 5);
    assert!(lines[4].starts_with("4"));
    assert!(lines.iter().skip(1).all(|l| l.ends_with("ok")));

    let (code, out) = run(&["--output", "json", "index-table", "--max-weight", "3"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 3);
    assert_eq!(v[2]["index_lattice"], "2");
    assert_eq!(v[2]["agree"], true);
}

#[test]
fn verify_suites() {
    let (code, out) = run(&["verify", "orders", "--max-weight", "3"]);
    assert_eq!(code, 0);
    assert!(out.contains("suite orders: pass"));

    let (code, out) = run(&["--output", "json", "verify", "qsymm", "--max-weight", "3"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["suite"], "qsymm");
    assert_eq!(v["passed"], true);
    for c in v["checks"].as_array().unwrap() {
        assert_eq!(c["status"], "pass");
    }

    let (code, out) = run(&["verify", "no-such-suite"]);
    assert_eq!(code, 2);
    assert!(out.contains("unknown suite"));
}

#[test]
fn identical_configuration_gives_identical_bytes() {
    let args = ["verify", "hopf-axioms", "--max-weight", "3", "--seed", "42"];
    let (c1, o1) = run(&args);
    let (c2, o2) = run(&args);
    assert_eq!(c1, 0);
    assert_eq!((c1, o1), (c2, o2));
}
