use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use hm_core::{hmf, Hypermap};
use serde_json::Value;
use tempfile::TempDir;

fn hm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hm"))
        .args(args)
        .env_remove("HM_THREADS")
        .output()
        .expect("hm runs")
}

fn hm_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_hm"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("hm runs");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn path(dir: &TempDir, name: &str) -> PathBuf {
    dir.path().join(name)
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn gen(dir: &TempDir, family: &[&str], name: &str) -> PathBuf {
    let p = path(dir, name);
    let mut args = vec!["gen"];
    args.extend_from_slice(family);
    args.extend_from_slice(&["-o", s(&p)]);
    let o = hm(&args);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    p
}

fn load(p: &Path) -> Hypermap {
    hmf::parse(&std::fs::read_to_string(p).unwrap()).unwrap()
}

#[test]
fn info_on_plane_example() {
    let dir = TempDir::new().unwrap();
    let p = gen(&dir, &["plane_example"], "example_plane.hmf");
    let o = hm(&["info", s(&p), "--json"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["chi"], 2);
    assert_eq!(v["eps"], 0);
    assert_eq!(v["v"], 5);
    assert!(stdout(&hm(&["info", s(&p)])).contains("euler genus 0"));
}

#[test]
fn poly_of_ladder_with_both_engines() {
    let dir = TempDir::new().unwrap();
    let p = gen(&dir, &["ladder", "4"], "ladder4.hmf");
    let o = hm(&["poly", s(&p), "--engine", "both", "--json"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["display"], "2 + 6z^2 + 6z^4 + 2z^6");
    assert_eq!(v["engines_agree"], true);
    assert_eq!(v["subsets"], 16);
    assert_eq!(v["interpolating"], false);
    let o = hm(&["poly", s(&p), "--orientable", "--threads", "3"]);
    assert_eq!(stdout(&o), "2 + 6z + 6z^2 + 2z^3\n");
}

#[test]
fn pdual_then_info() {
    let dir = TempDir::new().unwrap();
    let p = gen(&dir, &["fig7"], "fig7.hmf");
    let out = path(&dir, "out.hmf");
    let o = hm(&["pdual", s(&p), "-A", "e1", "-o", s(&out)]);
    assert!(o.status.success());
    let v = json(&hm(&["info", s(&out), "--json"]));
    assert_eq!(v["v"], 2);
    let by_mask = hm(&["pdual", s(&p), "-A", "0b1"]);
    assert_eq!(stdout(&by_mask), std::fs::read_to_string(&out).unwrap());
}

#[test]
fn stdin_and_stdout_streams() {
    let dir = TempDir::new().unwrap();
    let p = gen(&dir, &["torus_example"], "t.hmf");
    let text = std::fs::read_to_string(&p).unwrap();
    let o = hm_stdin(&["dual", "-", "-o", "-"], &text);
    assert!(o.status.success());
    let d = hmf::parse(&stdout(&o)).unwrap();
    assert_eq!(d.vertex_count(), load(&p).face_count());
}

#[test]
fn bipartite_input_is_accepted() {
    let dir = TempDir::new().unwrap();
    let p = path(&dir, "plane.bmf");
    std::fs::write(&p, hm_core::generators::PLANE_EXAMPLE_BMF).unwrap();
    let v = json(&hm(&["info", s(&p), "--json"]));
    assert_eq!((v["v"].as_u64(), v["f"].as_u64()), (Some(5), Some(6)));
}

#[test]
fn spectrum_reports_gaps() {
    let dir = TempDir::new().unwrap();
    let p = gen(&dir, &["fig7"], "fig7.hmf");
    let v = json(&hm(&["spectrum", s(&p), "--orientable", "--json"]));
    assert_eq!(v["spectrum"], serde_json::json!([1, 2, 3]));
    assert_eq!(v["interpolating"], true);
    let o = hm(&["spectrum", s(&gen(&dir, &["ladder", "3"], "l3.hmf"))]);
    assert!(stdout(&o).contains("gap 1..1 (size 1)"));
}

#[test]
fn constructions_round_trip() {
    let dir = TempDir::new().unwrap();
    let f = gen(&dir, &["fig7"], "fig7.hmf");
    let st = gen(&dir, &["star", "3"], "star.hmf");
    let outputs = [
        hm(&["join", s(&f), s(&st), "--at", "v1@x17", "--at2", "1"]),
        hm(&[
            "amalgamate",
            s(&f),
            s(&st),
            "--at",
            "v1@x1,v2@x7",
            "--at2",
            "v1@1",
        ]),
        hm(&["subdivide", s(&f), "-e", "e2"]),
        hm(&["pendant", s(&f), "-e", "e1", "--at", "5"]),
    ];
    for o in &outputs {
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        let h = hmf::parse(&stdout(o)).unwrap();
        let again = hmf::parse(&hmf::write(&h)).unwrap();
        assert_eq!(h.canonical_code(), again.canonical_code());
    }
    let sub = hmf::parse(&stdout(&outputs[2])).unwrap();
    assert_eq!(sub.counts().eps, 2);
    assert_eq!(sub.edge_count(), 6);
}

#[test]
fn domain_errors_exit_one_with_json() {
    let dir = TempDir::new().unwrap();
    let f = gen(&dir, &["fig7"], "fig7.hmf");
    let o = hm(&["pdual", s(&f), "-A", "e9"]);
    assert_eq!(o.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["error"], "UnknownHyperedge");
    let o = hm(&[
        "subdivide",
        s(&gen(&dir, &["ladder", "3"], "l.hmf")),
        "-e",
        "e2",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let o = hm(&["info", s(&path(&dir, "missing.hmf"))]);
    assert_eq!(o.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["error"], "Io");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(hm(&["poly"]).status.code(), Some(2));
    assert_eq!(hm(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        hm(&["poly", "x.hmf", "--engine", "fast"]).status.code(),
        Some(2)
    );
}

#[test]
fn check_on_bundled_examples() {
    let dir = TempDir::new().unwrap();
    let files: Vec<PathBuf> = ["plane_example", "torus_example", "fig7"]
        .iter()
        .map(|f| gen(&dir, &[f], &format!("{f}.hmf")))
        .collect();
    let mut args = vec!["check"];
    args.extend(files.iter().map(|p| s(p)));
    let o = hm(&args);
    assert!(o.status.success(), "{}", stdout(&o));
    let v = json(&o);
    assert_eq!(v["passed"], true);
    let fig7 = &v["reports"][2]["checks"];
    let adv = fig7
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "spectrum.fig7_claim")
        .unwrap();
    assert_eq!(adv["status"], "advisory");
}

#[test]
fn check_rejects_corrupted_input() {
    let dir = TempDir::new().unwrap();
    let p = path(&dir, "bad.hmf");
    std::fs::write(&p, "hmf 1\nvertex a (1 1) (2 3)\nhyperedge e (1 2) (3 4)\n").unwrap();
    let o = hm(&["check", s(&p)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(serde_json::from_slice::<Value>(&o.stderr).is_ok());
}

#[test]
fn threads_do_not_change_output() {
    let dir = TempDir::new().unwrap();
    let p = gen(&dir, &["cycle_hypertree", "6"], "c6.hmf");
    let one = stdout(&hm(&["poly", s(&p), "--threads", "1"]));
    let many = Command::new(env!("CARGO_BIN_EXE_hm"))
        .args(["poly", s(&p)])
        .env("HM_THREADS", "5")
        .output()
        .unwrap();
    assert_eq!(one, stdout(&many));
}

#[test]
fn random_generator_is_seeded() {
    let a = stdout(&hm(&["gen", "random_hypertree", "5", "--seed", "3"]));
    let b = stdout(&hm(&["gen", "random_hypertree", "5", "--seed", "3"]));
    assert_eq!(a, b);
    assert_eq!(hmf::parse(&a).unwrap().edge_count(), 5);
    assert_eq!(hm(&["gen", "ladder"]).status.code(), Some(1));
}
