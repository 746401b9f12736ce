mod common;

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value as Json;
use tempfile::TempDir;

fn pandora(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pandora"))
        .args(args)
        .env_remove("PANDORA_SEED")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Json {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stdout));
    })
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.display().to_string()
}

fn fixture(dir: &TempDir, name: &str, inst: &pandora::Instance) -> String {
    write(dir, name, &inst.to_json())
}

#[test]
fn gen_is_byte_identical_per_seed() {
    let a = pandora(&["gen", "random", "--n", "2", "--m", "2", "--seed", "1"]);
    let b = pandora(&["gen", "random", "--n", "2", "--m", "2", "--seed", "1"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let c = pandora(&["gen", "random", "--n", "2", "--m", "2", "--seed", "2"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn gen_mssc_format() {
    let out = pandora(&["gen", "mssc", "--n", "3", "--m", "3", "--seed", "7"]);
    let inst = pandora::Instance::from_json(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
    assert!(pandora::benchmarks::is_mssc(&inst));
    assert!(inst.scenarios.iter().all(|s| s.values.contains(&pandora::Value::ZERO)));
    assert_eq!(json(&out)["manifest"]["seed"], 7);
}

#[test]
fn gen_product_and_adversarial() {
    let out = pandora(&["gen", "product", "--supports", "0:0.5,2:0.5;1:1.0"]);
    assert_eq!(json(&out)["scenarios"].as_array().unwrap().len(), 2);
    let out = pandora(&["gen", "adversarial-cost", "--n", "3", "--h", "50"]);
    assert!(out.status.success());
}

#[test]
fn gen_rejects_bad_params() {
    assert_eq!(pandora(&["gen", "random", "--n", "13"]).status.code(), Some(2));
    assert_eq!(pandora(&["gen", "product"]).status.code(), Some(2));
    assert_eq!(pandora(&["gen", "nonsense"]).status.code(), Some(2));
}

#[test]
fn env_seed_overrides_flag() {
    let with_env = Command::new(env!("CARGO_BIN_EXE_pandora"))
        .args(["gen", "random", "--seed", "1"])
        .env("PANDORA_SEED", "9")
        .output()
        .unwrap();
    let direct = pandora(&["gen", "random", "--seed", "9"]);
    assert_eq!(with_env.stdout, direct.stdout);
}

#[test]
fn solve_fixtures() {
    let dir = TempDir::new().unwrap();
    let i1 = fixture(&dir, "i1.json", &common::i1());
    let out = pandora(&["solve", &i1, "--variant", "partial"]);
    assert!(out.status.success());
    let j = json(&out);
    assert_eq!(j["cost"]["total"], 1.5);
    assert_eq!(j["policy"]["permutation"], serde_json::json!([0, 1]));

    let i2 = fixture(&dir, "i2.json", &common::i2());
    let j = json(&pandora(&["solve", &i2, "--variant", "full"]));
    assert!((j["cost"]["total"].as_f64().unwrap() - 3.0).abs() < 1e-12);
    assert_eq!(j["tree"]["children"].as_object().unwrap().len(), 2);
}

#[test]
fn solve_error_exit_codes() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.json", r#"{"costs": [1], "scenarios": [{"weight": 1, "values": ["inf"]}]}"#);
    let out = pandora(&["solve", &bad]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("scenario 0 has no finite value"));

    let garbled = write(&dir, "garbled.json", "{not json");
    assert_eq!(pandora(&["solve", &garbled]).status.code(), Some(2));
    assert_eq!(pandora(&["solve", "/nonexistent/x.json"]).status.code(), Some(2));
}

#[test]
fn gen_solve_bench_round_trip() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("inst.json");
    let p = path.to_str().unwrap();
    assert!(pandora(&["gen", "random", "--n", "4", "--m", "6", "--seed", "3", "--out", p]).status.success());
    assert!(Path::new(p).exists());
    assert!(pandora(&["solve", p]).status.success());
    let out = pandora(&["bench", p]);
    assert_eq!(out.status.code(), Some(0));
    let j = json(&out);
    assert!(j["ratio_partial"].as_f64().unwrap() >= 1.0 - 1e-9);
    assert_eq!(j["manifest"]["command"], "bench");
}

#[test]
fn bench_fixtures_and_guard() {
    let dir = TempDir::new().unwrap();
    let j = json(&pandora(&["bench", &fixture(&dir, "i1.json", &common::i1())]));
    assert_eq!((j["ratio_partial"].as_f64(), j["ratio_full"].as_f64()), (Some(1.0), Some(1.0)));

    let j = json(&pandora(&["bench", &fixture(&dir, "i2.json", &common::i2())]));
    let r = j["ratio_partial"].as_f64().unwrap();
    assert!((r - 3.0 / (8.5 / 3.0)).abs() < 1e-12);
    assert_eq!(j["best_permutation"], serde_json::json!([1, 0]));

    let ten = pandora::gen::random_instance(10, 3, 0).unwrap();
    assert_eq!(pandora(&["bench", &fixture(&dir, "ten.json", &ten)]).status.code(), Some(2));
}

#[test]
fn learn_reports_and_sweeps() {
    let dir = TempDir::new().unwrap();
    let i2 = fixture(&dir, "i2.json", &common::i2());
    let args = ["learn", &i2, "--m", "500", "--eps", "0.25", "--delta", "0.1", "--seed", "3"];
    let a = pandora(&args);
    let b = pandora(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let ratio = json(&a)["report"]["ratio"].as_f64().unwrap();
    assert!(ratio <= 4.428 * 1.25 + 0.25);

    let single = pandora::Instance::new(vec![1.0, 2.0], vec![pandora::Scenario::uniform(&[3.0, 0.0])]);
    let j = json(&pandora(&["learn", &fixture(&dir, "one.json", &single), "--m", "5"]));
    assert_eq!(j["report"]["true_cost"], j["report"]["empirical_cost"]);

    let out = pandora(&["learn", &i2, "--m-list", "10,100", "--seeds", "3"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# {"));
    assert_eq!(lines.next().unwrap(), "m,seed,empirical_cost,true_cost,ratio");
    assert_eq!(lines.count(), 6);

    assert_eq!(pandora(&["learn", &i2, "--eps", "0"]).status.code(), Some(2));
}

#[test]
fn check_lemma_modes() {
    let out = pandora(&["check-lemma", "--trees", "500", "--seed", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let j = json(&out);
    assert_eq!(j["checks"], 4500);
    assert_eq!(j["pass"], true);

    let dir = TempDir::new().unwrap();
    let path_tree = write(&dir, "path.json", r#"{"weights":[1],"children":[{"weights":[3]}]}"#);
    let j = json(&pandora(&["check-lemma", "--fixture", &path_tree, "--rho-grid", "0.5"]));
    assert_eq!(j["pass"], true);
    let single = write(&dir, "single.json", r#"{"weights":[4]}"#);
    assert_eq!(pandora(&["check-lemma", "--fixture", &single]).status.code(), Some(0));

    assert_eq!(pandora(&["check-lemma", "--rho-grid", "1.5"]).status.code(), Some(2));
}
