use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use bmq::quantize;
use bmq::specfile::{module_from_json, module_to_json, parse_spec};
use tempfile::TempDir;

fn bmq(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bmq"))
        .args(args)
        .current_dir(dir)
        .env("BMQ_CACHE_DIR", dir.join("cache"))
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn example(dir: &Path, name: &str, args: &[&str]) -> PathBuf {
    let file = format!("{name}.json");
    let mut full = args.to_vec();
    full.extend(["-o", &file]);
    let o = bmq(dir, &full);
    assert!(o.status.success(), "{}", stderr(&o));
    dir.join(file)
}

fn sphere(dir: &Path, m: &str) -> PathBuf {
    example(dir, &format!("s2_m{m}"), &["example", "s2", "--m", m])
}

#[test]
fn validate_accepts_sphere() {
    let t = TempDir::new().unwrap();
    sphere(t.path(), "2");
    let o = bmq(t.path(), &["validate", "s2_m2.json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
}

#[test]
fn float_literal_is_a_located_parse_error() {
    let t = TempDir::new().unwrap();
    let text = fs::read_to_string(sphere(t.path(), "2")).unwrap();
    fs::write(t.path().join("bad.json"), text.replacen("\"1\"", "0.5", 1)).unwrap();
    let o = bmq(t.path(), &["validate", "bad.json"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line"), "{}", stderr(&o));
}

#[test]
fn missing_side_is_a_schema_error() {
    let t = TempDir::new().unwrap();
    let text = fs::read_to_string(sphere(t.path(), "2")).unwrap();
    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    v["z_components"][0].as_object_mut().unwrap().remove("side_minus");
    fs::write(t.path().join("bad.json"), v.to_string()).unwrap();
    let o = bmq(t.path(), &["validate", "bad.json"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("side_minus"), "{}", stderr(&o));
}

#[test]
fn sphere_tables() {
    let t = TempDir::new().unwrap();
    sphere(t.path(), "2");
    sphere(t.path(), "3");
    for m in ["2", "3"] {
        let o = bmq(t.path(), &["quantize", &format!("s2_m{m}.json"), "--window=-5..5", "--out", "csv"]);
        assert!(o.status.success(), "{}", stderr(&o));
        let csv = fs::read_to_string(t.path().join(format!("s2_m{m}.csv"))).unwrap();
        let mut want = String::from("w1,mult\n");
        for k in -5i64..=5 {
            let v = if m == "2" && k != 0 { 1 } else { 0 };
            want.push_str(&format!("{k},{v}\n"));
        }
        assert_eq!(csv, want);
    }
}

#[test]
fn reversed_window_is_rejected() {
    let t = TempDir::new().unwrap();
    sphere(t.path(), "2");
    let o = bmq(t.path(), &["quantize", "s2_m2.json", "--window=3..-3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn theorem_checks() {
    let t = TempDir::new().unwrap();
    sphere(t.path(), "2");
    sphere(t.path(), "3");
    let o = bmq(t.path(), &["check", "s2_m3.json", "theorem1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("PASS finiteness: dim = 0"), "{}", stdout(&o));
    let o = bmq(t.path(), &["check", "s2_m2.json", "theorem1"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("PASS") && s.contains("xi=[1] c+=1 c-=1 lambda0=1"), "{s}");
}

#[test]
fn stages_on_product() {
    let t = TempDir::new().unwrap();
    example(t.path(), "p", &["example", "s2xs2", "--m", "2"]);
    let o = bmq(t.path(), &["check", "p.json", "stages", "--proj", "[[1,0]]"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = bmq(t.path(), &["check", "p.json", "stages", "--proj", "[[0,1]]"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("non-proper"), "{}", stdout(&o));
}

#[test]
fn pairing_with_segment() {
    let t = TempDir::new().unwrap();
    sphere(t.path(), "2");
    let n = r#"{"halfspaces":[{"normal":[1],"bound":"0","closed":true},{"normal":[-1],"bound":"-2","closed":true}]}"#;
    fs::write(t.path().join("n.json"), n).unwrap();
    let o = bmq(t.path(), &["check", "s2_m2.json", "qr", "--npolytope", "n.json"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("lhs = 2, rhs = 2"), "{}", stdout(&o));
}

#[test]
fn chain_dimension() {
    let t = TempDir::new().unwrap();
    example(t.path(), "c", &["example", "chain", "--pieces", "3", "--m", "3"]);
    let o = bmq(t.path(), &["check", "c.json", "theorem1"]);
    assert!(stdout(&o).contains("dim = -3"), "{}", stdout(&o));
}

#[test]
fn unknown_example_exits_two() {
    let t = TempDir::new().unwrap();
    assert_eq!(bmq(t.path(), &["example", "torus"]).status.code(), Some(2));
}

#[test]
fn module_json_round_trips() {
    let t = TempDir::new().unwrap();
    let spec_path = example(t.path(), "p", &["example", "s2xs2", "--m", "2"]);
    let spec_text = fs::read_to_string(&spec_path).unwrap();
    let o = bmq(t.path(), &["quantize", "p.json", "--out", "json"]);
    assert!(o.status.success(), "{}", stderr(&o));
    // the input is left alone
    assert_eq!(fs::read_to_string(&spec_path).unwrap(), spec_text);
    let text = fs::read_to_string(t.path().join("p.module.json")).unwrap();
    let module = module_from_json(&text).unwrap();
    let spec = parse_spec(&spec_text).unwrap();
    assert_eq!(module, quantize(&spec).unwrap());
    assert_eq!(module_to_json(&module), text);
}

#[test]
fn output_is_deterministic_and_cache_transparent() {
    let t = TempDir::new().unwrap();
    example(t.path(), "c", &["example", "chain", "--pieces", "4", "--m", "3"]);
    let mut seen = Vec::new();
    for (dir, extra) in [("a", None), ("b", None), ("c", Some("--no-cache"))] {
        let mut args = vec!["quantize", "c.json", "--window=-6..6", "--out-dir", dir];
        args.extend(extra);
        let o = bmq(t.path(), &args);
        assert!(o.status.success(), "{}", stderr(&o));
        let json = fs::read(t.path().join(dir).join("c.module.json")).unwrap();
        let csv = fs::read(t.path().join(dir).join("c.csv")).unwrap();
        seen.push((json, csv));
    }
    assert!(t.path().join("cache").read_dir().unwrap().next().is_some());
    assert!(seen.windows(2).all(|w| w[0] == w[1]));
}
