use std::collections::hash_map::DefaultHasher;
use std::fs;
use std::hash::{Hash, Hasher};
use std::process::{Command, Output};

use serde_json::Value;

fn ncann(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ncann"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn digest(bytes: &[u8]) -> u64 {
    let mut h = DefaultHasher::new();
    bytes.hash(&mut h);
    h.finish()
}

#[test]
fn nf_matches_relation() {
    let o = ncann(&["nf", "--ring", "armendariz_3_3", "a[2]*b[0]"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "a[1]*b[1] + a[0]*b[2]\n");
}

#[test]
fn printed_elements_reparse() {
    for (ring, p, expr) in [
        ("armendariz_3_3", "2", "a[3]*b[0] + a[0]"),
        ("section4", "5", "3*b[0]*a[2]*a[1] - a[1] + 2"),
        ("cedo_3_1", "3", "a1[1]*alam[1] + a0[0]*b2[1]"),
    ] {
        let first = stdout(&ncann(&["nf", "--ring", ring, "-p", p, expr]));
        let again = stdout(&ncann(&["nf", "--ring", ring, "-p", p, first.trim()]));
        assert_eq!(first, again, "{ring}");
    }
}

#[test]
fn ann_json_shape() {
    let o = ncann(&[
        "ann",
        "--ring",
        "section4",
        "--side",
        "left",
        "--idx",
        "3",
        "--deg",
        "2",
        "--elems",
        "a[0];a[1]",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["dim"], 3);
    assert_eq!(
        v["basis"],
        serde_json::json!([["b[1]"], ["b[2]"], ["b[3]"]])
    );
    assert_eq!(v["slice"]["kind"], "ring");
    assert_eq!(v["evidence_only"], false);
}

#[test]
fn reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let mut digests = Vec::new();
    for n in 0..2 {
        let path = dir.path().join(format!("run{n}.json"));
        let o = ncann(&[
            "check",
            "section4",
            "--seed",
            "7",
            "--output",
            path.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0));
        digests.push(digest(&fs::read(&path).unwrap()));
    }
    assert_eq!(digests[0], digests[1]);
    let other = ncann(&["check", "section4", "--seed", "8"]);
    assert_eq!(other.status.code(), Some(0));
}

#[test]
fn ledgers_exit_zero() {
    for (name, p) in [
        ("cedo_3_1", "3"),
        ("armendariz_3_3", "2"),
        ("section4", "2"),
    ] {
        let o = ncann(&["check", name, "-p", p]);
        assert_eq!(o.status.code(), Some(0), "{name}: {}", stdout(&o));
        let v: Value = serde_json::from_slice(&o.stdout).unwrap();
        assert!(v.as_array().unwrap().len() > 1);
    }
}

#[test]
fn ring_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("toy.ring");
    fs::write(
        &path,
        "field 2;\nfamily u(0);\nfamily v(0);\nrule u*u -> 0;\nrule v*v -> 0;\nrule v*u -> u*v;\n",
    )
    .unwrap();
    let ring = path.to_str().unwrap();
    let o = ncann(&["nf", "--ring", ring, "v*u*v"]);
    assert_eq!(stdout(&o), "0\n");
    let o = ncann(&[
        "armendariz",
        "--ring",
        ring,
        "--idx",
        "0",
        "--deg",
        "4",
        "--f",
        "u + v*x",
        "--g",
        "u + v*x",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["verdict"], "fail");
}

#[test]
fn exit_codes() {
    assert_eq!(
        ncann(&["nf", "--ring", "section4", "c[0]"]).status.code(),
        Some(2)
    );
    assert_eq!(
        ncann(&["nf", "--ring", "nowhere", "a[0]"]).status.code(),
        Some(2)
    );
    assert_eq!(ncann(&["bogus"]).status.code(), Some(2));
    assert_eq!(
        ncann(&["check", "armendariz_3_3", "-p", "3"]).status.code(),
        Some(2)
    );
    assert_eq!(
        ncann(&["mul", "--ring", "section4", "--idx", "1", "--deg", "1", "a[0]", "a[1]"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        ncann(&["ann", "--ring", "section4", "--side", "left", "--idx", "1", "--elems", "a[4]"])
            .status
            .code(),
        Some(3)
    );
    let capped = Command::new(env!("CARGO_BIN_EXE_ncann"))
        .args([
            "ann", "--ring", "section4", "--side", "right", "--idx", "3", "--deg", "3", "--elems",
            "b[0]",
        ])
        .env("NCANN_MAX_SLICE", "10")
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(3));
    // no finite subset works: b[0] kills both from the right
    let zip = ncann(&[
        "zip",
        "--ring",
        "section4",
        "--side",
        "right",
        "--elems",
        "a[0];b[1]",
    ]);
    assert_eq!(zip.status.code(), Some(1));
}
