use std::path::Path;
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use butterfly_core::extension::{butterfly_from_extension, ExtensionDatum};
use butterfly_core::fingroup::{catalog, GroupHom};
use butterfly_core::serial::{butterfly_to_json, canonical, monoidal_to_json};
use butterfly_core::weakmap::{extract_monoidal, SetSection};
use serde_json::{json, Value};
use tempfile::TempDir;

fn run(ws: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_butterfly"))
        .arg("--workspace")
        .arg(ws)
        .args(args)
        .env_remove("BUTTERFLY_WORKSPACE")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn json_out(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn write(dir: &Path, name: &str, v: &Value) -> String {
    let p = dir.join(name);
    std::fs::write(&p, serde_json::to_string_pretty(v).unwrap()).unwrap();
    p.to_string_lossy().into_owned()
}

fn first_token(o: &Output) -> String {
    stdout(o).split_whitespace().next().unwrap().to_string()
}

fn xmod(construct: &str, group: &str) -> Value {
    json!({"kind": "crossed_module", "construct": construct, "group": {"kind": "group", "catalog": group}})
}

fn z4_butterfly() -> butterfly_core::butterfly::Butterfly {
    let z2 = catalog::cyclic(2).into_arc();
    let z4 = catalog::cyclic(4).into_arc();
    let iota = GroupHom::new(z2.clone(), z4.clone(), vec![0, 2]).unwrap();
    let sigma = GroupHom::new(z4, z2, vec![0, 1, 0, 1]).unwrap();
    butterfly_from_extension(&ExtensionDatum::new(iota, sigma).unwrap()).unwrap()
}

#[test]
fn validate_reports_and_exit_codes() {
    let tmp = TempDir::new().unwrap();
    let ws = tmp.path().join("ws");
    let x = write(tmp.path(), "x.json", &xmod("conjugation", "Z2"));
    let id = run(&ws, &["--json", "identity", &x]);
    assert_eq!(code(&id), 0);
    let b = json_out(&id)["object"].clone();
    let good = write(tmp.path(), "good.json", &b);
    let o = run(&ws, &["validate", &good]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("valid butterfly"));

    // rho := sigma makes kappa;rho the boundary, which is nonzero here
    let mut bad = b.clone();
    bad["rho"] = bad["sigma"].clone();
    let bad = write(tmp.path(), "bad.json", &bad);
    let o = run(&ws, &["--json", "validate", &bad]);
    assert_eq!(code(&o), 1);
    let r = json_out(&o);
    assert_eq!(r["valid"], false);
    assert!(r["issues"].as_array().unwrap().iter().any(|i| i["check"] == "(i) complex"));

    std::fs::write(tmp.path().join("broken.json"), "{\"kind\": ").unwrap();
    let o = run(&ws, &["validate", tmp.path().join("broken.json").to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("malformed JSON"));

    let o = run(&ws, &["validate", &write(tmp.path(), "w.json", &json!({"kind": "widget"}))]);
    assert_eq!(code(&o), 2);
    assert_eq!(code(&run(&ws, &["frobnicate"])), 2);
    assert_eq!(code(&run(&ws, &["validate", "no-such-file-or-ref"])), 2);
}

#[test]
fn compose_identities_with_witness() {
    let tmp = TempDir::new().unwrap();
    let ws = tmp.path().join("ws");
    let x = write(tmp.path(), "x.json", &xmod("aut", "S3"));
    let id = first_token(&run(&ws, &["identity", &x]));
    let o = run(&ws, &["--json", "--check", "compose", &id, &id, "--witness"]);
    assert_eq!(code(&o), 0);
    let v = json_out(&o);
    assert_eq!(v["witness"]["target"], id.as_str());
    assert_eq!(v["witness"]["map"].as_array().unwrap().len(), 36);

    let o = run(&ws, &["compose", &id, &id]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).split_whitespace().next().unwrap().len(), 64);
}

#[test]
fn flip_and_split() {
    let tmp = TempDir::new().unwrap();
    let ws = tmp.path().join("ws");
    let o = run(&ws, &["--json", "classify", "Z2", "Z2"]);
    assert_eq!(code(&o), 0);
    let class = json_out(&o)["classes"][0]["butterfly"].as_str().unwrap().to_string();
    let o = run(&ws, &["flip", &class]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("not flippable"));

    let x = write(tmp.path(), "x.json", &xmod("conjugation", "S3"));
    let id = first_token(&run(&ws, &["identity", &x]));
    let flipped = first_token(&run(&ws, &["--check", "flip", &id]));
    assert_eq!(flipped.len(), 64);

    let s3 = xmod("conjugation", "S3");
    let p = json!({
        "kind": "xmod_morphism",
        "dom": s3, "cod": s3,
        "p": [0, 1, 2, 3, 4, 5], "p0": [0, 1, 2, 3, 4, 5],
    });
    let o = run(&ws, &["--json", "--check", "split", &write(tmp.path(), "p.json", &p)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(json_out(&o)["section"].as_array().unwrap().len(), 6);

    let o = run(&ws, &["--json", "--check", "span", &id]);
    assert_eq!(code(&o), 0);
    assert_eq!(json_out(&o)["left_is_weak_equivalence"], true);
}

#[test]
fn weakmap_extract_matches_the_library() {
    let tmp = TempDir::new().unwrap();
    let ws = tmp.path().join("ws");
    let b = z4_butterfly();
    let path = write(tmp.path(), "z4.json", &butterfly_to_json(&b));
    // normalized, and the largest lift of the generator rather than the canonical one
    let s = vec![0, b.e().elements().rev().find(|&u| b.sigma().apply(u) == 1).unwrap()];
    let arg = s.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",");
    let o = run(&ws, &["--json", "--check", "weakmap", "extract", &path, "--section", &arg]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v = json_out(&o);
    let expected = extract_monoidal(&b, &SetSection::new(&b, s).unwrap()).unwrap();
    assert_eq!(canonical(&v["object"]), canonical(&monoidal_to_json(&expected)));
    assert_eq!(v["strict"], false);

    let m = v["ref"].as_str().unwrap().to_string();
    let o = run(&ws, &["--check", "weakmap", "build", &m]);
    assert_eq!(code(&o), 0);
    let canon = first_token(&run(&ws, &["weakmap", "extract", &path]));
    assert_eq!(code(&run(&ws, &["weakmap", "iso", &m, &canon])), 0);

    let o = run(&ws, &["weakmap", "extract", &path, "--section", "0,0"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn classify_reports() {
    let tmp = TempDir::new().unwrap();
    let ws = tmp.path().join("ws");
    let o = run(&ws, &["--json", "classify", "Z2", "Z2", "--oracle"]);
    assert_eq!(code(&o), 0);
    let v = json_out(&o);
    assert_eq!(v["classes"].as_array().unwrap().len(), 2);
    assert_eq!(v["oracle"]["agree"], true);
    let mut types: Vec<&str> = v["classes"].as_array().unwrap().iter().map(|k| k["E_type"].as_str().unwrap()).collect();
    types.sort();
    assert_eq!(types, ["V4", "Z4"]);
    // cached on the second run, same answer
    let again = json_out(&run(&ws, &["--json", "classify", "Z2", "Z2", "--oracle"]));
    assert_eq!(again, v);

    let o = run(&ws, &["classify", "Z2", "Z2", "--csv"]);
    assert_eq!(stdout(&o), "H,G,classes,split\nZ2,Z2,2,1\n");

    let o = run(&ws, &["--json", "classify", "Z3", "1"]);
    assert_eq!(json_out(&o)["classes"].as_array().unwrap().len(), 1);

    let o = run(&ws, &["classify", "Z4", "Z2xZ4"]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("bound is 16"));
}

#[test]
fn suites_from_the_command_line() {
    let tmp = TempDir::new().unwrap();
    let ws = tmp.path().join("ws");
    let t = Instant::now();
    let o = run(&ws, &["suite", "--suite", "bicategory", "--seed", "0", "--bound", "8"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(t.elapsed() < Duration::from_secs(60));
    let o = run(&ws, &["--json", "suite", "--suite", "fractions", "--bound", "8"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json_out(&o)[0]["failures"].as_array().unwrap().len(), 0);
    let o = run(&ws, &["suite", "--suite", "flip", "--bound", "4", "--fault"]);
    assert_eq!(code(&o), 1);
    let o = run(&ws, &["suite", "--suite", "nosuch"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown suite"));
    assert_eq!(code(&run(&ws, &["suite", "--bound", "17"])), 2);
}

#[test]
fn store_is_content_addressed() {
    let tmp = TempDir::new().unwrap();
    let ws = tmp.path().join("ws");
    let b = butterfly_to_json(&z4_butterfly());
    let pretty = write(tmp.path(), "b.json", &b);
    let h1 = first_token(&run(&ws, &["store", "put", &pretty]));
    let h2 = first_token(&run(&ws, &["store", "put", &pretty]));
    assert_eq!(h1, h2);
    let o = run(&ws, &["store", "get", &h1[..10]]);
    assert_eq!(stdout(&o), canonical(&b));
    assert_eq!(std::fs::read_to_string(ws.join("objects").join(format!("{h1}.json"))).unwrap(), canonical(&b));
    let o = run(&ws, &["--json", "store", "ls"]);
    let entries = json_out(&o);
    assert_eq!(entries.as_array().unwrap().len(), 1);
    assert_eq!(entries[0]["kind"], "butterfly");

    // nested refs resolve before decoding
    let x = first_token(&run(&ws, &["store", "put", &write(tmp.path(), "x.json", &xmod("discrete", "Z3"))]));
    let id = run(&ws, &["identity", &x]);
    let o = run(&ws, &["identity", &write(tmp.path(), "r.json", &json!({"ref": x}))]);
    assert_eq!(first_token(&o), first_token(&id));
    let m = json!({"kind": "xmod_morphism", "dom": {"ref": x}, "cod": {"ref": x}, "p": [0], "p0": [0, 1, 2]});
    assert_eq!(code(&run(&ws, &["validate", &write(tmp.path(), "m.json", &m)])), 0);
}

#[test]
fn workspace_flag_overrides_environment() {
    let tmp = TempDir::new().unwrap();
    let (env_ws, flag_ws) = (tmp.path().join("env"), tmp.path().join("flag"));
    let x = write(tmp.path(), "x.json", &xmod("discrete", "Z2"));
    let bin = env!("CARGO_BIN_EXE_butterfly");
    let o = Command::new(bin).args(["identity", &x]).env("BUTTERFLY_WORKSPACE", &env_ws).output().unwrap();
    assert_eq!(code(&o), 0);
    assert!(env_ws.join("index.json").exists());
    let o = Command::new(bin)
        .arg("--workspace")
        .arg(&flag_ws)
        .args(["identity", &x])
        .env("BUTTERFLY_WORKSPACE", &env_ws)
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    assert!(flag_ws.join("index.json").exists());
    let listed = Command::new(bin).args(["store", "ls"]).env("BUTTERFLY_WORKSPACE", &env_ws).output().unwrap();
    assert_eq!(stdout(&listed).lines().count(), 1);
}
