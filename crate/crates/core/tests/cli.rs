use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_bridgesynth"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

const EX1: [&str; 4] = ["--num", "1,2.171e8,4.824e9", "--den", "1.632,1.575e8,2.838e8"];
const EX2: [&str; 4] = ["--num", "1.665e5,5.776e5,5.466e7", "--den", "1,1.544e6,0.342"];

fn with<'a>(head: &[&'a str], tail: &[&'a str]) -> Vec<&'a str> {
    head.iter().chain(tail).copied().collect()
}

#[test]
fn classify_brief() {
    let o = run(&with(&["classify", "--brief"], &EX1));
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&o.stdout).trim(), "bridge-realizable: fig1a");

    let o = run(&["classify", "--brief", "--num", "1,1,1", "--den", "1,1,1"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn classify_json_reports_conditions() {
    let o = run(&with(&["classify"], &EX2));
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["membership"]["verdict"], "in_zb");
    assert_eq!(v["realizable_five_element_bridge"], "yes");
    assert!(v["recommended"].as_array().unwrap().iter().any(|x| x == "fig5"));
}

#[test]
fn synth_single_config_and_netlist() {
    let dir = std::env::temp_dir().join(format!("bridgesynth-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let net = dir.join("fig5.cir");
    let o = run(&with(&["synth", "--config", "fig5", "--netlist", net.to_str().unwrap()], &EX2));
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["realization"]["config"], "fig5");
    let r1 = v["realization"]["values"]["R1"].as_f64().unwrap();
    assert!((r1 / 1.598e8 - 1.0).abs() < 5e-3);
    let text = std::fs::read_to_string(&net).unwrap();
    assert!(text.lines().any(|l| l.starts_with("R1 ")));
    assert!(text.contains(".end"));
}

#[test]
fn synth_all_is_sorted() {
    let o = run(&with(&["synth"], &EX1));
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let outs = v["outcomes"].as_array().unwrap();
    let ids: Vec<&str> = outs.iter().map(|o| o["realization"]["config"].as_str().unwrap()).collect();
    assert!(ids.contains(&"fig1a") && ids.contains(&"fig2a"), "{ids:?}");
    assert_eq!(outs[0]["method"], "closed_form");
}

#[test]
fn synth_unmet_condition_exits_3() {
    let o = run(&with(&["synth", "--config", "fig5"], &EX1));
    assert_eq!(o.status.code(), Some(3));
    assert!(!o.stderr.is_empty());
}

#[test]
fn forward_unit_fig1a() {
    let o = run(&["forward", "--config", "fig1a", "--values", "R1=1,R2=1,R3=1,C1=1,C2=1"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let num: Vec<f64> = serde_json::from_value(v["num"].clone()).unwrap();
    let den: Vec<f64> = serde_json::from_value(v["den"].clone()).unwrap();
    assert_eq!(num, vec![1.0, 5.0, 2.0]);
    assert_eq!(den, vec![2.0, 5.0, 1.0]);
}

#[test]
fn verify_through_stdin_and_file() {
    let dir = std::env::temp_dir().join(format!("bridgesynth-verify-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let real = dir.join("r.json");
    std::fs::write(&real, r#"{"config":"fig1a","values":{"R1":1,"R2":1,"R3":1,"C1":1,"C2":1}}"#).unwrap();
    let mut child = bin()
        .args(["verify", "--realization", real.to_str().unwrap(), "--impedance", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(br#"{"num":[2,10,4],"den":[4,10,2]}"#)
        .unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["pass"], true);

    let o = run(&["verify", "--realization", real.to_str().unwrap(), "--num", "1,5,2", "--den", "2,5,1.01"]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(json(&o)["pass"], false);
}

#[test]
fn canonical_output() {
    let o = run(&["canonical", "--num", "2,6,3", "--den", "1,3,1"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let w = v["W"].as_f64().unwrap();
    assert!((w - 1.5f64.sqrt()).abs() < 1e-12);
    assert_eq!(v["regular"], true);
}

#[test]
fn region_csv_and_svg() {
    let dir = std::env::temp_dir().join(format!("bridgesynth-region-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let svg = dir.join("map.svg");
    let o = run(&["region", "--w", "2", "--grid", "10", "--svg", svg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let csv = String::from_utf8(o.stdout).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("U,V,verdict,flags"));
    assert_eq!(lines.count(), 100);
    assert!(std::fs::read_to_string(&svg).unwrap().starts_with("<svg"));

    let seq = run(&["region", "--w", "2", "--grid", "10", "--sequential"]);
    assert_eq!(String::from_utf8(seq.stdout).unwrap(), csv);
}

#[test]
fn invalid_input_exits_2() {
    for args in [
        vec!["classify", "--num", "1,2", "--den", "1,2,3"],
        vec!["classify", "--num", "1,-2,3", "--den", "1,2,3"],
        vec!["classify"],
        vec!["forward", "--config", "fig1a", "--values", "R1=1"],
        vec!["region", "--w", "0"],
        vec!["synth", "--config", "fig9", "--num", "1,2,3", "--den", "1,2,3"],
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
}
