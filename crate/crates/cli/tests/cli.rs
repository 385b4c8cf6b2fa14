use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use jetdiff_core::counting::dof;
use jetdiff_core::genericity::full_genericity_audit;
use jetdiff_core::jetbuilder::SurfacePair;
use jetdiff_core::sampling::random_surface;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use tempfile::TempDir;

const SAME: &str = "# R = S is not generic\nR = x^3 + y^3 + 2*x*y - 3*x + 5*y + 7\nS = x^3 + y^3 + 2*x*y - 3*x + 5*y + 7\n";

fn jetdiff(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jetdiff")).args(args).env_remove("JETDIFF_SEED").output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("bad JSON ({e}): {}", String::from_utf8_lossy(&out.stdout)))
}

fn assert_schema(name: &str, v: &Value) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas").join(format!("{name}.schema.json"));
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let compiled = jsonschema::JSONSchema::compile(&schema).expect("schema compiles");
    let msgs: Vec<String> = match compiled.validate(v) {
        Ok(()) => Vec::new(),
        Err(errors) => errors.map(|e| format!("{} at {}", e, e.instance_path)).collect(),
    };
    assert!(msgs.is_empty(), "{name} report violates its schema: {msgs:?}");
}

fn generic_file(dir: &TempDir, d: u32, e: u32, seed: u64) -> PathBuf {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let surf = loop {
        let s = random_surface(d, e, &mut rng);
        if full_genericity_audit(&s, jetdiff_core::sampling::DEFAULT_SEED).unwrap().pass {
            break s;
        }
    };
    write(dir, &format!("generic{d}{e}.txt"), &surf.to_text())
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn audit_exit_codes() {
    let dir = TempDir::new().unwrap();
    let good = generic_file(&dir, 3, 3, 1);
    let out = jetdiff(&["audit", "--surface", good.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_schema("audit", &v);
    assert_eq!(v["checks"].as_array().unwrap().len(), 40);

    let same = write(&dir, "same.txt", SAME);
    let out = jetdiff(&["audit", "--surface", same.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    let v = json(&out);
    assert_schema("audit", &v);
    assert!(v["checks"].as_array().unwrap().iter().any(|c| c["verdict"] == "fail" && c["witness"].is_string()));

    assert_eq!(code(&jetdiff(&["audit", "--surface", dir.path().join("missing.txt").to_str().unwrap()])), 3);
    let bad = write(&dir, "bad.txt", "R = x^3 +* y\nS = y^3\n");
    let out = jetdiff(&["audit", "--surface", bad.to_str().unwrap()]);
    assert_eq!(code(&out), 3);
    assert!(!out.stderr.is_empty());
    assert_eq!(code(&jetdiff(&["frobnicate"])), 3);
}

#[test]
fn solve_end_to_end() {
    let dir = TempDir::new().unwrap();
    let five = generic_file(&dir, 5, 5, 2);
    let out = jetdiff(&["solve", "--surface", five.to_str().unwrap(), "--m", "1", "--c", "5", "--a", "1"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_schema("solve", &v);
    assert_eq!(v["dimension"].as_u64().unwrap() as usize, v["certificates"].as_array().unwrap().len());

    let three = generic_file(&dir, 3, 3, 3);
    let p = three.to_str().unwrap();
    let out = jetdiff(&["solve", "--surface", p, "--c", "0", "--a", "1"]);
    assert_eq!(code(&out), 0);
    assert_eq!(u128::from(json(&out)["dimension"].as_u64().unwrap()), dof(1, 1).unwrap());

    let out = jetdiff(&["solve", "--surface", p, "--c", "1", "--a", "3"]);
    let v = json(&out);
    assert_schema("solve", &v);
    let certs = v["certificates"].as_array().unwrap();
    assert!(!certs.is_empty());
    for c in certs {
        assert_eq!(c["checks"]["y_divisible"], true);
        assert_eq!(c["checks"]["surface_restriction_exact"], true);
    }

    let out = jetdiff(&["solve", "--surface", p, "--c", "5", "--a", "2", "--require-infinity"]);
    assert_eq!(code(&out), 4);
    assert!(out.stdout.is_empty());

    let same = write(&dir, "same.txt", SAME);
    let s = same.to_str().unwrap();
    assert_eq!(code(&jetdiff(&["solve", "--surface", s, "--c", "0", "--a", "0"])), 1);
    let out = jetdiff(&["solve", "--surface", s, "--c", "0", "--a", "0", "--force"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["audit"], "skipped");
}

#[test]
fn verify_suites() {
    let out = jetdiff(&["verify", "--injectivity", "--d", "3", "--e", "3", "--m", "1", "--seed", "7"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_schema("verify", &v);
    assert_eq!(v["injectivity"]["rank"], v["injectivity"]["columns"]);

    let out = jetdiff(&["verify", "--transfer", "--deg", "4", "--trials", "10"]);
    assert_eq!(code(&out), 0);
    assert_schema("verify", &json(&out));

    let out = jetdiff(&["verify", "--restriction", "--d", "2", "--e", "3", "--trials", "3"]);
    assert_eq!(code(&out), 0);
    assert_schema("verify", &json(&out));

    let out = jetdiff(&["verify", "--injectivity", "--d", "3", "--a", "2"]);
    assert_eq!(code(&out), 4);
    assert_schema("verify", &json(&out));
}

#[test]
fn verify_refuses_non_generic_unless_overridden() {
    let dir = TempDir::new().unwrap();
    let same = write(&dir, "same.txt", SAME);
    let s = same.to_str().unwrap();
    let out = jetdiff(&["verify", "--injectivity", "--surface", s]);
    assert_eq!(code(&out), 1);
    assert_eq!(json(&out)["injectivity"]["verdict"], "error");
    let out = jetdiff(&["verify", "--injectivity", "--surface", s, "--override-genericity"]);
    assert_eq!(code(&out), 1);
    let v = json(&out);
    assert_schema("verify", &v);
    assert_eq!(v["injectivity"]["hypotheses_verified"], false);
    assert!(v["injectivity"]["kernel_witness"].is_object());
}

#[test]
fn count_and_chi() {
    let out = jetdiff(&["count", "--d", "752", "--e", "752"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_schema("count", &v);
    assert!(!v["cubic_value"].as_str().unwrap().starts_with('-'));
    let out = jetdiff(&["count", "--d", "751", "--e", "751"]);
    assert!(json(&out)["cubic_value"].as_str().unwrap().starts_with('-'));
    assert_eq!(code(&jetdiff(&["count", "--d", "0", "--e", "3"])), 4);

    let out = jetdiff(&["chi", "--d", "2", "--e", "3", "--m", "0"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_schema("chi", &v);
    assert_eq!(v["value"], "1");
    assert_eq!(v["cross_check"]["classical"], "2");
}

#[test]
fn deterministic_output_and_seed_override() {
    let args = ["verify", "--injectivity", "--transfer", "--d", "2", "--trials", "2"];
    let (a, b) = (jetdiff(&args), jetdiff(&args));
    assert_eq!(a.stdout, b.stdout);
    let env = Command::new(env!("CARGO_BIN_EXE_jetdiff")).args(args).env("JETDIFF_SEED", "99").output().unwrap();
    assert_eq!(json(&env)["injectivity"]["config"]["seed"], 99);
    assert_ne!(env.stdout, a.stdout);
}

#[test]
fn out_flag_writes_the_report_file() {
    let dir = TempDir::new().unwrap();
    let target = dir.path().join("count.json");
    let out = jetdiff(&["count", "--d", "24", "--e", "1", "--out", target.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&target).unwrap()).unwrap();
    assert_eq!(written, json(&jetdiff(&["count", "--d", "24", "--e", "1"])));
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn surface_file_round_trip() {
    let dir = TempDir::new().unwrap();
    let p = generic_file(&dir, 2, 3, 4);
    let text = std::fs::read_to_string(p).unwrap();
    assert_eq!(SurfacePair::parse(&text).unwrap().to_text(), text);
}
