use std::path::PathBuf;
use std::process::{Command, Output};

fn suture(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_suture")).args(args).output().unwrap()
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name).to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn matchings_human_lists_gradings() {
    let o = suture(&["matchings", "--n", "3"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let gradings: Vec<&str> = out.lines().filter(|l| l.starts_with('#')).map(|l| l.rsplit("e=").next().unwrap()).collect();
    assert_eq!(gradings, ["2", "0", "0", "-2", "0"]);
}

#[test]
fn matchings_machine_counts() {
    for (n, count) in [("1", 1), ("5", 42)] {
        let o = suture(&["matchings", "--n", n, "--format", "machine"]);
        assert_eq!(stdout(&o).lines().count(), count);
    }
    assert_eq!(stdout(&suture(&["matchings", "--n", "1", "--format", "machine"])), "(0 1)\t0\n");
}

#[test]
fn machine_output_is_stable() {
    let a = suture(&["matchings", "--n", "6", "--format", "machine"]);
    let b = suture(&["matchings", "--n", "6", "--format", "machine"]);
    assert_eq!(a.stdout, b.stdout);
    let a = suture(&["module", "--punctured-torus", "2", "--format", "machine"]);
    let b = suture(&["module", "--punctured-torus", "2", "--format", "machine"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn matchings_out_of_range_is_input_error() {
    assert_eq!(suture(&["matchings", "--n", "9"]).status.code(), Some(2));
    assert_eq!(suture(&["matchings", "--n", "0"]).status.code(), Some(2));
}

#[test]
fn module_disk_six() {
    let o = suture(&["module", "--disk", "6"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("rank 4; e=2:1, e=0:2, e=-2:1\n"));
}

#[test]
fn module_from_file_and_preset_agree() {
    let a = stdout(&suture(&["module", "--surface", &data("annulus22.json"), "--bound", "3", "--format", "machine"]));
    let b = stdout(&suture(&["module", "--annulus", "2", "2", "--bound", "3", "--format", "machine"]));
    assert_eq!(a, b);
    assert!(a.starts_with("rank\t4\n"));
}

#[test]
fn strict_escalates_rank_mismatch() {
    // At bound 1 the annulus presentation is too small.
    assert!(suture(&["module", "--annulus", "2", "2", "--bound", "1"]).status.success());
    assert_eq!(suture(&["module", "--annulus", "2", "2", "--bound", "1", "--strict"]).status.code(), Some(1));
    assert!(suture(&["module", "--annulus", "2", "2", "--bound", "3", "--strict"]).status.success());
}

#[test]
fn export_writes_json() {
    let dir = std::env::temp_dir().join(format!("suture-export-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("m.json");
    assert!(suture(&["module", "--disk", "6", "--export", path.to_str().unwrap()]).status.success());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["rank"], 4);
    assert_eq!(v["generators"].as_array().unwrap().len(), 5);
}

#[test]
fn class_of_k0_prime_is_sum_of_l0_and_l1() {
    let o = suture(&["class", "--surface", &data("annulus22.json"), "--k", &data("K0prime.json"), "--bound", "3"]);
    let k0 = stdout(&o).split('\t').nth(1).unwrap().to_string();
    let o = suture(&["class", "--surface", &data("annulus22.json"), "--k", &data("L0.json"), "--k", &data("L1.json"), "--bound", "3"]);
    let out = stdout(&o);
    let sum = out.lines().last().unwrap().strip_prefix("sum\t").unwrap();
    assert_eq!(sum, k0);
    assert_ne!(k0, "0000");
}

#[test]
fn class_rejects_other_surface() {
    let o = suture(&["class", "--surface", &data("disk6.json"), "--k", &data("K0prime.json")]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn glue_reports_map() {
    let o = suture(&["glue", "--datum", &data("attach_phi1.json"), "--bound", "0"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("target rank 2"));
    assert!(out.contains("map rank 2"));
    // The third catalog configuration dies under this map.
    assert!(out.lines().any(|l| l == "00\t(0 1)(2 5)(3 4) | (0 1)"));
}

#[test]
fn lift_is_infeasible_and_replays() {
    let o = suture(&["lift", "--box", "4"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.starts_with("INFEASIBLE\n"));
    assert!(out.contains("(1,1): phi3(b)=2 need 0"));
    let dir = std::env::temp_dir().join(format!("suture-cert-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("cert.txt");
    std::fs::write(&path, &out).unwrap();
    let r = suture(&["lift", "--replay", path.to_str().unwrap()]);
    assert!(r.status.success());
    assert_eq!(stdout(&r), "replay ok: INFEASIBLE\n");
    std::fs::write(&path, out.replace("force b=(1,1)", "force b=(2,1)")).unwrap();
    assert_eq!(suture(&["lift", "--replay", path.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn relaxed_lift_is_feasible() {
    let o = suture(&["lift", "--box", "4", "--relaxed"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.starts_with("FEASIBLE\n"));
    assert!(out.contains("feasible a=(1,0) b=(1,1) d=(0,1)"));
    assert!(out.contains("signs "));
}

#[test]
fn lift_box_too_small() {
    assert_eq!(suture(&["lift", "--box", "1"]).status.code(), Some(2));
}

#[test]
fn verify_suites_pass() {
    for suite in ["disk", "annulus", "torus", "lift"] {
        let o = suture(&["verify", "--suite", suite]);
        assert!(o.status.success(), "{suite}: {}", stdout(&o));
        assert!(!stdout(&o).contains("FAIL"));
    }
    assert_eq!(suture(&["verify", "--suite", "nope"]).status.code(), Some(2));
}

#[test]
fn verify_all_covers_every_criterion() {
    let o = suture(&["verify", "--suite", "all"]);
    assert!(o.status.success());
    let out = stdout(&o);
    for name in ["catalan", "disk ranks", "distinctness", "superposition", "annulus:", "vanishing torus", "gluing tables", "lift infeasible", "oracle equivalence", "multiplicativity"] {
        assert!(out.contains(&format!("PASS {name}")), "{name}");
    }
}

#[test]
fn missing_file_is_input_error() {
    assert_eq!(suture(&["module", "--surface", "/nonexistent.json"]).status.code(), Some(2));
    assert_eq!(suture(&["module"]).status.code(), Some(2));
}
