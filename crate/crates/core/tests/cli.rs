use std::path::Path;
use std::process::{Command, Output};

use presheaf_topos::workspace::{Workspace, WorkspaceFile};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_topos-audit")).args(args).output().unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn fixture_workspaces_audit_cleanly() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    assert_eq!(bin(&["--fixtures", d]).status.code(), Some(0));
    for name in ["terminal", "gamma", "l3", "diamond", "mon_e"] {
        let ws = format!("{d}/{name}.json");
        let out = bin(&[&ws, "full-audit"]);
        assert_eq!(out.status.code(), Some(0), "{name}: {}", String::from_utf8_lossy(&out.stdout));
    }
}

#[test]
fn reports_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    bin(&["--fixtures", d]);
    let ws = format!("{d}/l3.json");
    let (a, b) = (format!("{d}/a.json"), format!("{d}/b.json"));
    bin(&[&ws, "--json", &a]);
    bin(&[&ws, "--json", &b]);
    let (ra, rb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert!(!ra.is_empty());
    assert_eq!(ra, rb);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let gamma =
        write(dir.path(), "g.json", r#"{"generator":{"kind":"gamma"},"ideals":{"I'":{"N":["id_N"],"A":["s","t"]}}}"#);
    assert_eq!(bin(&[&gamma, "ideals"]).status.code(), Some(0));
    assert_eq!(bin(&[&gamma, "ideal-audit", "nope"]).status.code(), Some(2));
    assert_eq!(bin(&[&gamma, "--cap", "max_morphisms=2"]).status.code(), Some(3));
    let bad = write(dir.path(), "bad.json", "{\"generator\": {\"kind\": \"gamma\"},\n\"objects\": [}");
    let out = bin(&[&bad]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    // an ideal empty at x is not action preserving for M
    let l3 = write(
        dir.path(),
        "l3.json",
        r#"{"generator":{"kind":"poset","le":[["x","y"],["y","1"]]},
            "ideals":{"no_x":{"y":["x<=y"],"1":["x<=1"]}},
            "admissible_classes":{"M":["id_x","id_y","id_1","x<=y"]}}"#,
    );
    assert_eq!(bin(&[&l3, "equivariance", "¬¬", "M"]).status.code(), Some(0));
    let out = bin(&[&l3, "equivariance", "no_x", "M"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("witness"));
}

#[test]
fn requests_in_the_file_are_run() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "w.json", r#"{"generator":{"kind":"terminal"},"requests":["validate","omega"]}"#);
    let json = format!("{}/r.json", dir.path().display());
    assert_eq!(bin(&[&p, "--json", &json]).status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(v["command"], "requests");
    assert!(v["results"]["omega"].is_object());
}

#[test]
fn round_trip_through_disk() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    bin(&["--fixtures", d]);
    for name in ["gamma", "l3", "mon_e"] {
        let ws = Workspace::load(&dir.path().join(format!("{name}.json")), &[]).unwrap();
        let out = ws.to_file();
        let p = write(dir.path(), "again.json", &out.to_json());
        let again = Workspace::load(Path::new(&p), &[]).unwrap();
        assert_eq!(again.to_file(), out);
        assert_eq!(WorkspaceFile::parse(&out.to_json()).unwrap(), out);
    }
}
