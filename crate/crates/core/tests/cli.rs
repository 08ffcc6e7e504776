use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_tate-tori")
}

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

fn run(args: &[&str], file: &Path) -> Output {
    Command::new(bin())
        .arg(args[0])
        .arg(file)
        .args(&args[1..])
        .env_remove("TATE_TORI_ORDER_CAP")
        .output()
        .unwrap()
}

fn write(dir: &tempfile::TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn cohomology_degree_one_text() {
    let out = run(&["cohomology", "--degree", "1"], &data("quadratic.toml"));
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "H^1 = Z/2\n");
    let out = run(&["cohomology", "--degree", "-1"], &data("quadratic.toml"));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "H^-1 = Z/2\n");
}

#[test]
fn sha_json_for_the_biquadratic_torus() {
    let out = run(&["sha", "--json"], &data("biquadratic.toml"));
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["sha"]["invariant_factors"], serde_json::json!(["2"]));
    assert_eq!(v["sha"]["order"], "2");
    assert_eq!(v["exact"], true);
    assert_eq!(v["group"]["order"], "4");
    assert_eq!(v["torus"]["rank"], 3);
}

#[test]
fn json_is_independent_of_section_order() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(
        &dir,
        "a.toml",
        "[group]\ngenerators = [\"(1 2)\", \"(3 4)\"]\n[subgroups]\nA = [\"(1 2)\"]\n[torus]\nspec = \"sum(norm1, perm(A))\"\n[places]\nmode = \"mixed\"\nextra = [\"A\"]\n",
    );
    let b = write(
        &dir,
        "b.toml",
        "[places]\nextra = [\"A\"]\nmode = \"mixed\"\n\n[torus]\nspec = \"sum( norm1 , perm(A) )\"\n[subgroups]\nA = [\"(2 1)\"]\n[group]\ngenerators = [\"(1 2)\", \"(3 4)\"]\n",
    );
    let ra = run(&["report", "--json"], &a);
    let rb = run(&["report", "--json"], &b);
    assert_eq!(
        ra.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&ra.stderr)
    );
    assert_eq!(ra.stdout, rb.stdout);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let unknown = write(
        &dir,
        "u.toml",
        "[group]\ngenerators = [\"(1 2)\"]\n[torus]\nspec = \"perm(H9)\"\n",
    );
    let out = run(&["report"], &unknown);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("H9"));

    let syntax = write(&dir, "s.toml", "[group]\ngenerators = [\"(1 2)\"\n");
    let out = run(&["report"], &syntax);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line"));

    let out = Command::new(bin())
        .args(["sha"])
        .arg(data("biquadratic.toml"))
        .env("TATE_TORI_ORDER_CAP", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));

    let big = write(
        &dir,
        "big.toml",
        "[group]\ngenerators = [\"(1 2 3 4 5 6 7 8)\", \"(9 10)\"]\n[torus]\nspec = \"split(100)\"\n",
    );
    let out = run(&["cohomology", "--degree", "2", "--no-fast-path"], &big);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--force"));
}

#[test]
fn verify_runs_clean_on_cyclic_problems() {
    let out = run(&["verify"], &data("quadratic.toml"));
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("[paper-discrepancy] one-dimensional-brauer-order"));
    assert!(text.ends_with("all checks passed\n"));
}
