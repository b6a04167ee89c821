use std::path::PathBuf;
use std::process::{Command, Output};

fn lvalues(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lvalues"))
        .args(args)
        .env_remove("LVALUES_JOBS")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("JSON report")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("lvalues-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn theta_all_methods_agree() {
    let out = lvalues(&["theta", "--q", "2", "--ext", "trivial", "--E", "carlitz", "--N", "12", "--method", "all"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["agree"], true);
    for m in ["euler", "trace", "sum"] {
        assert_eq!(v[m]["precision"], 12);
    }
}

#[test]
fn zero_precision_is_a_usage_error() {
    assert_eq!(lvalues(&["theta", "--q", "2", "--N", "0"]).status.code(), Some(2));
}

#[test]
fn unknown_extension_is_a_usage_error() {
    assert_eq!(lvalues(&["theta", "--q", "2", "--ext", "quartic", "--N", "4"]).status.code(), Some(2));
}

#[test]
fn unsupported_conductor_is_a_computation_error() {
    let out = lvalues(&["theta", "--q", "2", "--ext", "cyclotomic:t^2+t", "--N", "4"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unsupported conductor"));
}

#[test]
fn verify_etnf_trivial() {
    let out = lvalues(&["verify", "etnf", "--q", "2", "--ext", "trivial", "--E", "carlitz", "--N", "12"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["pass"], true);
    assert_eq!(v["class_dim"], 0);
    assert_eq!(v["lambda0"], "frame lattice A[G]θ");
}

#[test]
fn verify_trace_tame() {
    let out = lvalues(&["verify", "trace", "--q", "3", "--ext", "cyclotomic:t", "--N", "8"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["euler_trace_differences"], serde_json::json!([]));
}

#[test]
fn verify_brumer_stark_with_trivial_class_module() {
    let out = lvalues(&["verify", "brumer-stark", "--q", "3", "--ext", "cyclotomic:t", "--N", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["member"], true);
    assert_eq!(v["ideal_equality"], true);
}

#[test]
fn verify_brumer_stark_with_nontrivial_class_module() {
    let out = lvalues(&["verify", "brumer-stark", "--q", "2", "--ext", "cyclotomic:t2", "--E", "t^3", "--N", "8"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["integral"], true);
    assert_eq!(v["admissible_annihilator"], serde_json::json!([0, 0, 1]));
}

#[test]
fn fixture_round_trip_is_byte_stable() {
    let path = scratch("wild_t2.fx");
    let p = path.to_str().unwrap();
    let gen = || lvalues(&["fixture", "generate", "--cyclotomic", "t2", "--q", "2", "-o", p]);
    assert_eq!(gen().status.code(), Some(0));
    let first = std::fs::read(&path).unwrap();
    assert_eq!(gen().status.code(), Some(0));
    assert_eq!(first, std::fs::read(&path).unwrap());
    let out = lvalues(&["fixture", "validate", p]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["pass"], true);
    let fx = format!("fixture:{p}");
    let out = lvalues(&["theta", "--q", "2", "--ext", &fx, "--method", "euler", "--N", "8"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(json(&out)["euler"]["assumptions"].is_array());
}

#[test]
fn truncated_fixture_reports_a_location() {
    let path = scratch("short.fx");
    let p = path.to_str().unwrap();
    lvalues(&["fixture", "generate", "--cyclotomic", "t", "--q", "3", "-o", p]);
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::write(&path, &text[..text.len() / 3]).unwrap();
    let out = lvalues(&["fixture", "validate", p]);
    assert_ne!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line"));
}

#[test]
fn output_is_independent_of_jobs() {
    let base = ["theta", "--q", "3", "--ext", "cyclotomic:t", "--N", "6"];
    let one = lvalues(&[&["--jobs", "1"][..], &base[..]].concat());
    let four = lvalues(&[&["--jobs", "4"][..], &base[..]].concat());
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
}
