//! Exit codes and file formats of the command-line tool.

use std::fs;
use std::path::PathBuf;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_grpiso"))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("grpiso-cli-{}-{name}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn run(args: &[&str]) -> (i32, String) {
    let out = bin().args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn certificate_round_trip() {
    let dir = scratch("iso");
    let a = dir.join("a.txt");
    let b = dir.join("b.txt");
    let cert = dir.join("cert.txt");
    fs::write(&a, "abelian = 7\nm = 3\naction = 2\nscramble_seed = 4\n").unwrap();
    fs::write(&b, "abelian = 7\nm = 3\naction = 4\nscramble_seed = 9\n").unwrap();
    let (code, out) = run(&["iso", a.to_str().unwrap(), b.to_str().unwrap(), "--emit", cert.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.starts_with("ISOMORPHIC"));
    let text = fs::read_to_string(&cert).unwrap();
    assert!(text.lines().all(|l| l.contains(" -> ")));
    let (code, _) = run(&["iso", a.to_str().unwrap(), b.to_str().unwrap(), "--check", cert.to_str().unwrap()]);
    assert_eq!(code, 0);

    // a corrupted table is rejected
    let bad: String = text.replacen("0 -> ", "0 -> 00", 1).lines().map(|l| format!("{l}\n")).collect();
    fs::write(&cert, bad).unwrap();
    let (code, _) = run(&["iso", a.to_str().unwrap(), b.to_str().unwrap(), "--check", cert.to_str().unwrap()]);
    assert_ne!(code, 0);
}

#[test]
fn exit_codes() {
    let dir = scratch("codes");
    let a = dir.join("a.txt");
    let c = dir.join("c.txt");
    let bad = dir.join("bad.txt");
    fs::write(&a, "abelian = 7\nm = 3\naction = 2\n").unwrap();
    fs::write(&c, "abelian = 21\n").unwrap();
    fs::write(&bad, "abelian = 2\nm = 2\n").unwrap();
    let (code, out) = run(&["iso", a.to_str().unwrap(), c.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(out.starts_with("NOT-ISOMORPHIC"));
    assert_eq!(run(&["iso", a.to_str().unwrap(), bad.to_str().unwrap()]).0, 2);
    assert_eq!(run(&["decompose", dir.join("missing").to_str().unwrap()]).0, 2);
    assert_eq!(run(&["gen", "--abelian", "2", "--m", "2"]).0, 2);
    assert_eq!(run(&["quantum-demo", "--n", "65"]).0, 2);
}

#[test]
fn gen_writes_valid_specs() {
    let dir = scratch("gen");
    let (code, _) = run(&["--seed", "4", "gen", "--abelian", "3,3,3,3", "--m", "4", "--count", "5", "--out", dir.to_str().unwrap()]);
    assert_eq!(code, 0);
    for i in 0..5 {
        let spec = dir.join(format!("spec_{i:04}.txt"));
        let (code, out) = run(&["decompose", spec.to_str().unwrap()]);
        assert_eq!(code, 0);
        assert!(out.contains("verification: ok"));
    }
}

#[test]
fn solvers_print_none() {
    let dir = scratch("solvers");
    let sd = dir.join("sd.txt");
    fs::write(&sd, "7 1\n3\n2\n").unwrap();
    let (code, out) = run(&["setdlog", sd.to_str().unwrap()]);
    assert_eq!((code, out.trim()), (1, "NONE"));
    let cl = dir.join("cl.txt");
    fs::write(&cl, "3 1\n2\n3 1\n1\n").unwrap();
    let (code, out) = run(&["conjlog", cl.to_str().unwrap()]);
    assert_eq!((code, out.trim()), (1, "NONE"));
    fs::write(&cl, "3 1\n2\n").unwrap();
    assert_eq!(run(&["conjlog", cl.to_str().unwrap()]).0, 2);
}

#[test]
fn selftest_fault_injection() {
    let (code, out) = run(&["selftest", "--only", "5", "--inject-fault"]);
    assert_eq!(code, 1);
    assert!(out.contains("[FAIL] 5"));
    let (code, out) = run(&["selftest", "--only", "1"]);
    assert_eq!(code, 0);
    assert!(out.contains("[PASS] 1"));
}
