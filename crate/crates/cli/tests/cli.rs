use std::path::PathBuf;
use std::process::{Command, Output};

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(name)
}

fn qwa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qwa")).args(args).output().unwrap()
}

fn run(args: &[&str]) -> (i32, String) {
    let out = qwa(args);
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn file(name: &str) -> String {
    corpus(name).to_str().unwrap().to_string()
}

fn has(stdout: &str, line: &str) -> bool {
    stdout.lines().any(|l| l == line)
}

#[test]
fn empty_relations_are_admissible() {
    let (code, out) = run(&["check", &file("empty.qwa")]);
    assert_eq!(code, 0);
    assert!(has(&out, "admissible=true"), "{out}");
    assert!(has(&out, "cross_check=agree"), "{out}");
}

#[test]
fn weyl_triangle_is_inadmissible() {
    let (code, out) = run(&["check", &file("inadmissible.qwa")]);
    assert_eq!(code, 1);
    assert!(has(&out, "admissible=false"), "{out}");
}

#[test]
fn all_weyl_triangle_reduces_to_one_pair() {
    let (code, out) = run(&["reduce", &file("weyl_triangle.qwa")]);
    assert_eq!(code, 0);
    assert!(has(&out, "n=2") && has(&out, "r=1") && has(&out, "replay=exact"), "{out}");
}

#[test]
fn emitted_canonical_form_reduces_to_itself() {
    let dir = std::env::temp_dir().join(format!("qwa-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("canonical.qwa");
    let (code, _) = run(&["reduce", &file("gcd_graph.qwa"), "--emit-qwa", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let (code, out) = run(&["reduce", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(has(&out, "n=3") && has(&out, "r=1"), "{out}");
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn different_weyl_counts_are_not_equivalent() {
    let (code, out) = run(&["equiv", &file("s21q.qwa"), &file("s22q.qwa")]);
    assert_eq!(code, 1);
    assert!(has(&out, "reason=NEQ_WSUPDEG"), "{out}");
}

#[test]
fn semiclassical_self_equivalence_has_witness() {
    let (code, out) = run(&["equiv", &file("s22q.qwa"), &file("s22q.qwa")]);
    assert_eq!(code, 0);
    assert!(has(&out, "reason=EQ_SEMICLASSICAL") && has(&out, "witness=verified"), "{out}");
}

#[test]
fn torus_queries() {
    let (code, out) = run(&["torus", "center", &file("block_torus.qwa")]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("[[0,0,2,0],[0,0,0,2]]") || out.contains("[[0, 0, 2, 0], [0, 0, 0, 2]]"), "{out}");
    assert_eq!(run(&["torus", "simple", &file("quantum_plane.qwa")]).0, 0);
    assert_eq!(run(&["torus", "simple", &file("minus_one_plane.qwa")]).0, 1);
    assert_eq!(run(&["torus", "iso", &file("quantum_plane.qwa"), &file("quantum_plane_inverse.qwa")]).0, 0);
    let (code, _) = run(&["torus", "morphism", &file("quantum_plane.qwa"), &file("quantum_plane_inverse.qwa"), "--matrix", "0,1;1,0"]);
    assert_eq!(code, 0);
    let (code, _) = run(&["torus", "morphism", &file("quantum_plane.qwa"), &file("quantum_plane_inverse.qwa"), "--matrix", "1,0;0,1"]);
    assert_eq!(code, 1);
}

#[test]
fn map_verification() {
    let (code, out) = run(&["embed", "verify", &file("t21q.qwa"), &file("enveloping_tensor_plane.qwa")]);
    assert_eq!(code, 0, "{out}");
    let (code, out) = run(&["embed", "verify", &file("t21q.qwa"), &file("enveloping_tensor_plane_bad.qwa")]);
    assert_eq!(code, 1, "{out}");
}

#[test]
fn embeddings() {
    let (code, out) = run(&["embed", "mixed", &file("s22q.qwa")]);
    assert_eq!(code, 0, "{out}");
    assert!(has(&out, "m=2") && has(&out, "s=1") && has(&out, "t=0") && has(&out, "bounds=true"), "{out}");
    let (code, out) = run(&["embed", "torus", &file("torus3.qwa")]);
    assert_eq!(code, 0, "{out}");
}

#[test]
fn quantum_weyl_queries() {
    let (code, out) = run(&["qweyl", "localize", &file("qweyl_1q.qwa")]);
    assert_eq!(code, 0, "{out}");
    let (code, out) = run(&["qweyl", "invariants", &file("qweyl_11q.qwa")]);
    assert_eq!(code, 0);
    assert!(has(&out, "w_supdeg=4"), "{out}");
    let (code, out) = run(&["qweyl", "equiv", &file("qweyl_1q.qwa"), &file("qweyl_qq.qwa")]);
    assert_eq!(code, 1);
    assert!(has(&out, "reason=NEQ_WSUPDEG"), "{out}");
}

#[test]
fn json_output_is_one_object() {
    let (code, out) = run(&["--json", "invariants", &file("s22q.qwa")]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["w_supdeg"], "4");
    assert_eq!(v["command"], "invariants");
}

#[test]
fn errors_exit_2_without_machine_block() {
    let out = qwa(&["check", "/definitely/missing.qwa"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
    let (code, _) = run(&["reduce", &file("inadmissible.qwa")]);
    assert_eq!(code, 2);
}

#[test]
fn normalize_is_stable_on_the_corpus() {
    let dir = std::env::temp_dir().join(format!("qwa-norm-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let mut seen = 0;
    for entry in std::fs::read_dir(corpus("")).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_none_or(|e| e != "qwa") {
            continue;
        }
        let (code, once) = run(&["normalize", path.to_str().unwrap()]);
        assert_eq!(code, 0, "{}", path.display());
        let tmp = dir.join(path.file_name().unwrap());
        std::fs::write(&tmp, &once).unwrap();
        let (_, twice) = run(&["normalize", tmp.to_str().unwrap()]);
        assert_eq!(once, twice, "{}", path.display());
        assert_eq!(run(&["normalize", path.to_str().unwrap()]).1, once);
        seen += 1;
    }
    assert!(seen >= 20);
    std::fs::remove_dir_all(dir).unwrap();
}
