use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};

fn umrow(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_umrow"))
        .args(args)
        .env_remove("UMROW_SEED")
        .output()
        .expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("umrow-cli-{}-{name}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn write(dir: &Path, name: &str, v: &Value) -> String {
    let p = dir.join(name);
    fs::write(&p, serde_json::to_string_pretty(v).unwrap()).unwrap();
    p.to_str().unwrap().to_owned()
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json on stdout")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn analyze(dir: &Path, name: &str, gens: Value) -> Value {
    let p = write(dir, name, &json!({"rank": gens[0].as_array().unwrap().len(), "generators": gens}));
    let o = umrow(&["monoid", "analyze", &p]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    stdout_json(&o)
}

#[test]
fn analyze_reports_match_known_monoids() {
    let dir = scratch("analyze");
    let free = analyze(&dir, "free.json", json!([[1, 0], [0, 1]]));
    assert_eq!((free["normal"].clone(), free["seminormal"].clone()), (json!(true), json!(true)));
    assert_eq!((free["phi_simplicial"].clone(), free["complexity"].clone()), (json!(true), json!(0)));

    let cusp = analyze(&dir, "cusp.json", json!([[2], [3]]));
    assert_eq!(cusp["normal"], json!(false));
    assert_eq!(cusp["seminormal"], json!(false));
    assert_eq!(cusp["phi_simplicial"], json!(true));

    let square = analyze(&dir, "square.json", json!([[0, 0, 1], [1, 0, 1], [0, 1, 1], [1, 1, 1]]));
    assert_eq!(square["normal"], json!(true));
    assert_eq!(square["phi_simplicial"], json!(false));
    assert_eq!(square["complexity"], json!(3));
    assert_eq!(square["phi_vertices"].as_array().unwrap().len(), 4);
}

#[test]
fn monoid_errors_use_parse_and_desk_scale_codes() {
    let dir = scratch("monoid-errors");
    let broken = dir.join("broken.json");
    fs::write(&broken, "{\"rank\": 2, \"generators\": [[1, 0]").unwrap();
    assert_eq!(code(&umrow(&["monoid", "analyze", broken.to_str().unwrap()])), 2);
    let gens: Vec<Vec<i64>> = (0..5).map(|i| (0..5).map(|j| i64::from(i == j)).collect()).collect();
    let big = write(&dir, "big.json", &json!({"rank": 5, "generators": gens}));
    let o = umrow(&["monoid", "analyze", &big]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("desk-scale"));
}

#[test]
fn hilbert_and_decompose() {
    let dir = scratch("hilbert");
    let cone = write(&dir, "cone.json", &json!({"rank": 2, "generators": [[1, 0], [1, 3]]}));
    let o = umrow(&["monoid", "hilbert", &cone, "--ambient"]);
    assert_eq!(stdout_json(&o)["hilbert_basis"], json!([[1, 0], [1, 1], [1, 2], [1, 3]]));

    let free = write(&dir, "free.json", &json!({"rank": 2, "generators": [[1, 0], [0, 1]]}));
    let o = umrow(&["monoid", "decompose", &free, "--apex", "1,0"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o)["degree_functional"], json!([1, -1]));
    // Not an extremal generator.
    assert_eq!(code(&umrow(&["monoid", "decompose", &free, "--apex", "1,1"])), 4);
}

fn row(n: u64, kind: &str, entries: &[&str]) -> Value {
    json!({"ring": {"kind": "mod", "n": n}, "form": {"kind": kind, "size": entries.len()}, "entries": entries})
}

#[test]
fn radical_reduction_replays_with_relative_structure() {
    let dir = scratch("radical");
    let input = write(&dir, "row.json", &row(4, "symplectic", &["3", "2", "2", "2"]));
    let out = dir.join("t.json");
    let o = umrow(&["row", "reduce", &input, "--procedure", "radical", "--relative-ideal", "2", "-o", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(String::from_utf8_lossy(&o.stdout), "replay: OK\nrelative: OK\n");
    let o = umrow(&["transcript", "replay", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert_eq!(String::from_utf8_lossy(&o.stdout), "replay: OK\nrelative: OK\n");
}

#[test]
fn e1_gives_the_empty_word_for_every_applicable_procedure() {
    let dir = scratch("e1");
    let input = write(&dir, "e1.json", &row(7, "symplectic", &["1", "0", "0", "0"]));
    for p in ["field", "semilocal", "pivot", "search"] {
        let o = umrow(&["row", "reduce", &input, "--procedure", p]);
        assert_eq!(code(&o), 0, "{p}");
        assert_eq!(stdout_json(&o)["word"], json!([]), "{p}");
    }
}

#[test]
fn non_isotropic_orthogonal_row_is_a_precondition_failure() {
    let dir = scratch("isotropy");
    let input = write(&dir, "o.json", &row(5, "orthogonal", &["1", "1", "0", "0", "0", "0"]));
    let o = umrow(&["row", "reduce", &input, "--procedure", "semilocal"]);
    assert_eq!(code(&o), 4);
    assert!(String::from_utf8_lossy(&o.stderr).contains("isotropy violated"));
    // The same holds when the form is switched on the command line.
    let sp = write(&dir, "sp.json", &row(4, "symplectic", &["3", "2", "2", "2"]));
    assert_eq!(code(&umrow(&["row", "reduce", &sp, "--form", "orthogonal"])), 4);
}

#[test]
fn missing_ideal_and_unknown_procedure() {
    let dir = scratch("flags");
    let input = write(&dir, "row.json", &row(4, "symplectic", &["3", "2", "2", "2"]));
    assert_eq!(code(&umrow(&["row", "reduce", &input, "--procedure", "radical"])), 4);
    assert_eq!(code(&umrow(&["row", "reduce", &input, "--procedure", "magic"])), 2);
}

fn produce_transcript(dir: &Path) -> Value {
    let input = write(dir, "row.json", &row(4, "symplectic", &["3", "2", "2", "2"]));
    let o = umrow(&["row", "reduce", &input, "--procedure", "radical", "--relative-ideal", "2"]);
    assert_eq!(code(&o), 0);
    stdout_json(&o)
}

#[test]
fn tampered_parameter_fails_replay() {
    let dir = scratch("tamper");
    let mut t = produce_transcript(&dir);
    t["output"][1] = json!("2");
    let p = write(&dir, "bad.json", &t);
    let o = umrow(&["transcript", "replay", &p]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stdout).starts_with("replay: FAIL"));
}

#[test]
fn out_of_ideal_token_fails_the_relative_check() {
    let dir = scratch("relative");
    let mut t = produce_transcript(&dir);
    // ge_13(1) ge_13(-1) leaves the row alone but is not in the relative subgroup.
    let w = t["word"].as_array_mut().unwrap();
    w.push(json!({"op": "ge", "i": 1, "j": 3, "lam": "1"}));
    w.push(json!({"op": "ge", "i": 1, "j": 3, "lam": "3"}));
    let p = write(&dir, "inj.json", &t);
    let o = umrow(&["transcript", "replay", &p]);
    assert_eq!(code(&o), 1);
    assert_eq!(String::from_utf8_lossy(&o.stdout), "replay: OK\nrelative: FAIL\n");
}

#[test]
fn malformed_transcript_is_a_parse_error() {
    let dir = scratch("malformed");
    let mut t = produce_transcript(&dir);
    t["word"] = json!([{"op": "ge", "i": 1, "j": 1, "lam": "1"}]);
    let p = write(&dir, "bad.json", &t);
    assert_eq!(code(&umrow(&["transcript", "replay", &p])), 2);
}

#[test]
fn monoid_ring_row_search() {
    let dir = scratch("monoid-row");
    let carrier = json!({"kind": "monoid", "coeffs": {"kind": "mod", "n": 2}, "monoid": {"rank": 1, "generators": [[2], [3]]}});
    let entries = json!([[{"exp": [2], "coef": "1"}], [{"exp": [0], "coef": "1"}, {"exp": [2], "coef": "1"}], [], []]);
    let doc = json!({"ring": carrier, "form": {"kind": "symplectic", "size": 4}, "entries": entries});
    let input = write(&dir, "row.json", &doc);
    let check = stdout_json(&umrow(&["row", "check", &input]));
    assert_eq!(check["unimodular"], json!(true));
    let out = dir.join("t.json");
    let o = umrow(&["row", "reduce", &input, "-o", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(code(&umrow(&["transcript", "replay", out.to_str().unwrap()])), 0);
    assert_eq!(code(&umrow(&["row", "reduce", &input, "--procedure", "semilocal"])), 4);
}

#[test]
fn corpus_is_deterministic_and_descends() {
    let dir = scratch("corpus");
    let cfg = write(&dir, "cfg.json", &json!({"seed": 42, "family": "fixing", "count": 3, "sizes": [6], "ring": {"kind": "mod", "n": 7}}));
    let (a, b) = (dir.join("a"), dir.join("b"));
    for d in [&a, &b] {
        assert_eq!(code(&umrow(&["corpus", "generate", &cfg, "--out", d.to_str().unwrap()])), 0);
    }
    let manifest = fs::read_to_string(a.join("manifest.json")).unwrap();
    assert_eq!(manifest, fs::read_to_string(b.join("manifest.json")).unwrap());

    let reseeded = Command::new(env!("CARGO_BIN_EXE_umrow"))
        .args(["corpus", "generate", &cfg, "--out", dir.join("c").to_str().unwrap()])
        .env("UMROW_SEED", "43")
        .output()
        .unwrap();
    assert_eq!(code(&reseeded), 0);
    assert_ne!(manifest, fs::read_to_string(dir.join("c/manifest.json")).unwrap());

    for k in 0..3 {
        let m = a.join(format!("matrix-sp6-{k:05}.json"));
        let check = stdout_json(&umrow(&["group", "check", m.to_str().unwrap()]));
        assert_eq!(check["in_group"], json!(true));
        assert_eq!(check["fixes_last_basis_vector"], json!(true));
        let (w, beta) = (dir.join(format!("w{k}.json")), dir.join(format!("b{k}.json")));
        let o = umrow(&["group", "descend", m.to_str().unwrap(), "--word-out", w.to_str().unwrap(), "--matrix-out", beta.to_str().unwrap()]);
        assert_eq!(code(&o), 0);
        assert!(String::from_utf8_lossy(&o.stdout).contains("reconstruction: OK"));
        let beta: Value = serde_json::from_str(&fs::read_to_string(beta).unwrap()).unwrap();
        assert_eq!(beta["form"]["size"], json!(4));
    }
}

#[test]
fn descending_the_identity_gives_the_empty_word() {
    let dir = scratch("identity");
    let id: Vec<Vec<&str>> = (0..4).map(|i| (0..4).map(|j| if i == j { "1" } else { "0" }).collect()).collect();
    let m = write(&dir, "id.json", &json!({"ring": {"kind": "mod", "n": 5}, "form": {"kind": "orthogonal", "size": 4}, "matrix": id}));
    let (w, b) = (dir.join("w.json"), dir.join("b.json"));
    let o = umrow(&["group", "descend", &m, "--word-out", w.to_str().unwrap(), "--matrix-out", b.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let w: Value = serde_json::from_str(&fs::read_to_string(w).unwrap()).unwrap();
    assert_eq!(w["word"], json!([]));
    let mut not_fixing = id.clone();
    not_fixing[0][3] = "1";
    let bad = write(&dir, "bad.json", &json!({"ring": {"kind": "mod", "n": 5}, "form": {"kind": "orthogonal", "size": 4}, "matrix": not_fixing}));
    assert_eq!(code(&umrow(&["group", "descend", &bad, "--word-out", "/dev/null", "--matrix-out", "/dev/null"])), 4);
}

#[test]
fn config_errors_exit_2() {
    let dir = scratch("config");
    let zero = write(&dir, "zero.json", &json!({"seed": 42, "family": "unimodular", "count": 0, "ring": {"kind": "mod", "n": 360}}));
    assert_eq!(code(&umrow(&["corpus", "generate", &zero, "--out", dir.join("x").to_str().unwrap()])), 2);
    let ok = write(&dir, "ok.json", &json!({"seed": 42, "family": "unimodular", "count": 2, "ring": {"kind": "mod", "n": 360}}));
    let bad_seed = Command::new(env!("CARGO_BIN_EXE_umrow"))
        .args(["corpus", "generate", &ok, "--out", dir.join("y").to_str().unwrap()])
        .env("UMROW_SEED", "not-a-number")
        .output()
        .unwrap();
    assert_eq!(code(&bad_seed), 2);
}
