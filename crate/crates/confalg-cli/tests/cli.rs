//! End-to-end tests of the `confalg` binary: exit codes, output formats,
//! determinism, and the cache contract.

use std::path::Path;
use std::process::{Command, Output};

fn confalg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_confalg"))
        .args(args)
        .env_remove("CONFALG_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn confalg_in(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_confalg"))
        .args(args)
        .env("CONFALG_CACHE_DIR", dir)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 stderr")
}

const CURVE_DOC: &str = r#"
[space]
name = "elliptic"
dimension = 1
smooth = true
proper = true
connected = true
unital = true
unit = "e"

[[basis]]
label = "e"
degree = 0
weight = 0

[[basis]]
label = "a"
degree = 1
weight = 1

[[basis]]
label = "b"
degree = 1
weight = 1

[[basis]]
label = "p"
degree = 2
weight = 2

[[product]]
left = "e"
right = "e"
terms = [{ basis = "e", coeff = "1" }]

[[product]]
left = "e"
right = "a"
terms = [{ basis = "a", coeff = "1" }]

[[product]]
left = "a"
right = "e"
terms = [{ basis = "a", coeff = "1" }]

[[product]]
left = "e"
right = "b"
terms = [{ basis = "b", coeff = "1" }]

[[product]]
left = "b"
right = "e"
terms = [{ basis = "b", coeff = "1" }]

[[product]]
left = "e"
right = "p"
terms = [{ basis = "p", coeff = "1" }]

[[product]]
left = "p"
right = "e"
terms = [{ basis = "p", coeff = "1" }]

[[product]]
left = "a"
right = "b"
terms = [{ basis = "p", coeff = "1" }]

[[product]]
left = "b"
right = "a"
terms = [{ basis = "p", coeff = "-1" }]
"#;

#[test]
fn compute_affine_golden_rows() {
    let out = confalg(&[
        "compute",
        "--builtin",
        "affine",
        "--n",
        "1",
        "--max-card",
        "4",
        "--format",
        "table",
    ]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    // cardinality 4 rows of the golden table: (8, 8) and (7, 6)
    assert!(text.contains("4\t8\t8\t1"), "missing top row:\n{text}");
    assert!(text.contains("4\t7\t6\t1"), "missing subtop row:\n{text}");
    assert!(text.contains("associated_graded: false"));
}

#[test]
fn compute_max_card_one_is_the_input() {
    let out = confalg(&[
        "compute",
        "--builtin",
        "affine",
        "--n",
        "1",
        "--max-card",
        "1",
        "--format",
        "csv",
    ]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "normalization,k,degree,weight,dim\nconstant,1,2,2,1\n"
    );
}

#[test]
fn validate_accepts_a_valid_curve_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("curve.toml");
    std::fs::write(&path, CURVE_DOC).unwrap();
    let out = confalg(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("ok"));
}

#[test]
fn validate_rejects_duplicate_labels_with_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("dup.toml");
    std::fs::write(
        &path,
        r#"
[space]
name = "X"
smooth = false
proper = false
connected = true
unital = false

[[basis]]
label = "x"
degree = 0
weight = 0

[[basis]]
label = "x"
degree = 2
weight = 2
"#,
    )
    .unwrap();
    let out = confalg(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("duplicate"));
}

#[test]
fn validate_reports_commutativity_witness_with_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.toml");
    // odd x with x·x ≠ 0 violates graded commutativity
    std::fs::write(
        &path,
        r#"
[space]
name = "X"
smooth = false
proper = false
connected = true
unital = false

[[basis]]
label = "x"
degree = 1
weight = 0

[[basis]]
label = "y"
degree = 2
weight = 0

[[product]]
left = "x"
right = "x"
terms = [{ basis = "y", coeff = "1" }]
"#,
    )
    .unwrap();
    let out = confalg(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = stderr(&out);
    assert!(err.contains("commutativity"), "stderr: {err}");
    assert!(err.contains("`x`"), "stderr: {err}");
}

#[test]
fn compute_rejects_non_associative_input_with_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("nonassoc.toml");
    // graded-commutative but (a·a)·b = z while a·(a·b) = 0
    std::fs::write(
        &path,
        r#"
[space]
name = "X"
smooth = false
proper = false
connected = true
unital = false

[[basis]]
label = "a"
degree = 2
weight = 0

[[basis]]
label = "b"
degree = 2
weight = 0

[[basis]]
label = "w"
degree = 4
weight = 0

[[basis]]
label = "u"
degree = 4
weight = 0

[[basis]]
label = "z"
degree = 6
weight = 0

[[product]]
left = "a"
right = "a"
terms = [{ basis = "w", coeff = "1" }]

[[product]]
left = "b"
right = "b"
terms = [{ basis = "u", coeff = "1" }]

[[product]]
left = "w"
right = "b"
terms = [{ basis = "z", coeff = "1" }]

[[product]]
left = "b"
right = "w"
terms = [{ basis = "z", coeff = "1" }]
"#,
    )
    .unwrap();
    let out = confalg(&[
        "compute",
        "--input",
        path.to_str().unwrap(),
        "--max-card",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(
        stderr(&out).contains("ssociativity"),
        "stderr: {}",
        stderr(&out)
    );
}

#[test]
fn stability_requires_smooth_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("nonsmooth.toml");
    std::fs::write(
        &path,
        r#"
[space]
name = "X"
smooth = false
proper = false
connected = true
unital = false

[[basis]]
label = "t"
degree = 2
weight = 2
"#,
    )
    .unwrap();
    let out = confalg(&[
        "stability",
        "--input",
        path.to_str().unwrap(),
        "--max-card",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("smooth"));
}

#[test]
fn stability_of_the_affine_plane_is_clean() {
    let out = confalg(&[
        "stability",
        "--builtin",
        "affine",
        "--n",
        "2",
        "--max-card",
        "5",
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(!text.contains("MISMATCH"));
    assert!(text.contains("dimension-level"));
}

#[test]
fn stability_of_a_loaded_curve_is_clean() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("curve.toml");
    std::fs::write(&path, CURVE_DOC).unwrap();
    let out = confalg(&[
        "stability",
        "--input",
        path.to_str().unwrap(),
        "--max-card",
        "5",
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    assert!(!stdout(&out).contains("MISMATCH"));
}

#[test]
fn json_round_trips_and_matches_the_table() {
    let out = confalg(&[
        "compute",
        "--builtin",
        "projective",
        "--n",
        "1",
        "--max-card",
        "3",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    assert_eq!(value["normalization"], "constant");
    assert_eq!(value["space"]["name"], "P^1");
    let cards = value["cards"].as_array().unwrap();
    assert_eq!(cards.len(), 3);
    // dims are natural numbers, degrees/weights integers; no rationals
    for card in cards {
        for row in card["betti"].as_array().unwrap() {
            assert!(row["degree"].is_i64());
            assert!(row["weight"].is_i64());
            assert!(row["dim"].is_u64() && row["dim"].as_u64().unwrap() >= 1);
        }
    }
    // k = 1 is P^1 itself
    let k1 = &cards[0]["betti"].as_array().unwrap();
    assert_eq!(k1.len(), 2);
}

#[test]
fn both_normalizations_emit_two_documents() {
    let out = confalg(&[
        "compute",
        "--builtin",
        "curve",
        "--genus",
        "1",
        "--max-card",
        "2",
        "--normalization",
        "both",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    let docs = value.as_array().expect("array of two documents");
    assert_eq!(docs.len(), 2);
    assert_eq!(docs[0]["normalization"], "constant");
    assert_eq!(docs[1]["normalization"], "dualizing");
}

#[test]
fn dualizing_needs_smoothness() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("nonsmooth.toml");
    std::fs::write(
        &path,
        r#"
[space]
name = "X"
smooth = false
proper = false
connected = true
unital = false

[[basis]]
label = "t"
degree = 2
weight = 2
"#,
    )
    .unwrap();
    let out = confalg(&[
        "compute",
        "--input",
        path.to_str().unwrap(),
        "--max-card",
        "2",
        "--normalization",
        "dualizing",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn runs_are_deterministic() {
    let args = [
        "compute",
        "--builtin",
        "curve",
        "--genus",
        "2",
        "--max-card",
        "4",
        "--format",
        "json",
    ];
    let a = confalg(&args);
    let b = confalg(&args);
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout, "byte-for-byte determinism");
}

#[test]
fn cache_hits_are_byte_identical_and_persisted() {
    let cache = tempfile::tempdir().unwrap();
    let args = [
        "compute",
        "--builtin",
        "curve",
        "--genus",
        "1",
        "--max-card",
        "3",
        "--format",
        "table",
    ];
    let cold = confalg_in(cache.path(), &args);
    assert!(cold.status.success(), "stderr: {}", stderr(&cold));
    let entries: Vec<_> = std::fs::read_dir(cache.path()).unwrap().collect();
    assert_eq!(entries.len(), 1, "one cache document written");
    let hit = confalg_in(cache.path(), &args);
    assert!(hit.status.success());
    assert_eq!(cold.stdout, hit.stdout, "cache hit must be byte-identical");

    // different math config gets a different key
    let other = confalg_in(
        cache.path(),
        &[
            "compute",
            "--builtin",
            "curve",
            "--genus",
            "1",
            "--max-card",
            "4",
            "--format",
            "table",
        ],
    );
    assert!(other.status.success());
    let entries: Vec<_> = std::fs::read_dir(cache.path()).unwrap().collect();
    assert_eq!(entries.len(), 2);
}

#[test]
fn cache_environment_overrides_flag() {
    let env_dir = tempfile::tempdir().unwrap();
    let flag_dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_confalg"))
        .args([
            "compute",
            "--builtin",
            "affine",
            "--n",
            "1",
            "--max-card",
            "2",
            "--cache-dir",
            flag_dir.path().to_str().unwrap(),
        ])
        .env("CONFALG_CACHE_DIR", env_dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(std::fs::read_dir(env_dir.path()).unwrap().count(), 1);
    assert_eq!(std::fs::read_dir(flag_dir.path()).unwrap().count(), 0);

    // with no environment override the flag directory is used
    let out = confalg_in_flag_only(flag_dir.path());
    assert!(out.status.success());
    assert_eq!(std::fs::read_dir(flag_dir.path()).unwrap().count(), 1);
}

fn confalg_in_flag_only(dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_confalg"))
        .args([
            "compute",
            "--builtin",
            "affine",
            "--n",
            "1",
            "--max-card",
            "2",
            "--cache-dir",
            dir.to_str().unwrap(),
        ])
        .env_remove("CONFALG_CACHE_DIR")
        .output()
        .unwrap()
}

#[test]
fn generator_flag_accepts_inline_spec() {
    let out = confalg(&[
        "compute",
        "--builtin",
        "affine",
        "--n",
        "1",
        "--max-card",
        "2",
        "--generator",
        "0:0",
        "--format",
        "csv",
    ]);
    assert!(out.status.success());
    // identical to the default generator
    let default = confalg(&[
        "compute",
        "--builtin",
        "affine",
        "--n",
        "1",
        "--max-card",
        "2",
        "--format",
        "csv",
    ]);
    assert_eq!(stdout(&out), stdout(&default));

    let bad = confalg(&[
        "compute",
        "--builtin",
        "affine",
        "--n",
        "1",
        "--max-card",
        "2",
        "--generator",
        "nope",
    ]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn missing_input_selection_is_a_precondition_failure() {
    let out = confalg(&["compute", "--max-card", "2"]);
    assert_eq!(out.status.code(), Some(3));
}
