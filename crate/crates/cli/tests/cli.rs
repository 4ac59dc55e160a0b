use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use sha2::{Digest, Sha256};

fn dlp(args: &[&str], cache: Option<&Path>) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_dlp"));
    c.args(args).env_remove("DLP_CACHE_DIR");
    if let Some(dir) = cache {
        c.env("DLP_CACHE_DIR", dir);
    }
    c.output().expect("run dlp")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn values(o: &Output) -> Vec<Value> {
    stdout(o).lines().map(|l| serde_json::from_str::<Value>(l).unwrap()["value"].clone()).collect()
}

#[test]
fn group_order_example() {
    let o = dlp(&["group-order", "--family", "U", "--n", "4", "--q", "2", "--format", "json-lines"], None);
    assert!(o.status.success());
    assert_eq!(values(&o), vec![Value::from(77760)]);
}

#[test]
fn period_examples_match_formula() {
    let o = dlp(
        &["period", "--pair", "u4xu2", "--q", "2", "--torus", "1,1,1,1;1,1", "--chi", "1,1,1,1,0,2", "--format", "json-lines"],
        None,
    );
    assert!(o.status.success());
    let v: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["value"], -1);
    assert_eq!(v["provenance"]["matches"], true);

    let o = dlp(&["period", "--pair", "parabolic-gl2", "--q", "3", "--torus", "split", "--both-routes", "--format", "json-lines"], None);
    let v: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!((v["value"].clone(), v["provenance"]["frobrec"].clone()), (Value::from(2), Value::from(2)));
    assert_eq!(v["provenance"]["matches"], true);
}

#[test]
fn json_lines_roundtrip_is_byte_identical() {
    for args in [
        &["torus-list", "--family", "U", "--n", "3", "--q", "2"][..],
        &["green", "--family", "GL", "--n", "3", "--q", "2"],
        &["dl-table", "--family", "GL", "--n", "2", "--q", "3", "--torus", "2", "--chi", "1"],
        &["period-scan", "--pair", "diag-gl1", "--q", "2", "--torus", "1;2"],
    ] {
        let mut a = args.to_vec();
        a.extend(["--format", "json-lines"]);
        let text = stdout(&dlp(&a, None));
        assert!(!text.is_empty());
        for line in text.lines() {
            let v: Value = serde_json::from_str(line).unwrap();
            assert_eq!(serde_json::to_string(&v).unwrap(), line);
        }
    }
}

#[test]
fn cache_cold_and_warm_agree() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["period-scan", "--pair", "parabolic-gl2", "--q", "2", "--torus", "2", "--chi", "1", "--nus", "1,2", "--format", "json-lines"];
    let cold = dlp(&args, Some(dir.path()));
    let warm = dlp(&args, Some(dir.path()));
    assert!(cold.status.success() && warm.status.success());
    assert_eq!(values(&cold), values(&warm));
    assert!(stdout(&cold).contains("\"cache\":\"miss\""));
    assert!(stdout(&warm).contains("\"cache\":\"hit\""));
}

#[test]
fn checksum_failure_is_recomputed() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["green", "--family", "GL", "--n", "2", "--q", "2", "--format", "json-lines"];
    let cold = dlp(&args, Some(dir.path()));
    for e in std::fs::read_dir(dir.path()).unwrap() {
        let p = e.unwrap().path();
        if p.extension().is_some_and(|x| x == "json") {
            let t = std::fs::read_to_string(&p).unwrap();
            std::fs::write(&p, t.replacen(": 1", ": 7", 1)).unwrap();
        }
    }
    let again = dlp(&args, Some(dir.path()));
    assert_eq!(values(&cold), values(&again));
    assert!(stdout(&again).contains("repaired"));
}

#[test]
fn exit_codes() {
    let o = dlp(&["group-order", "--family", "GL", "--n", "3", "--q", "7", "--enumerate"], None);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("size cap"));
    let o = dlp(&["period", "--pair", "u4xu2", "--q", "2", "--torus", "split", "--chi", "1,2"], None);
    assert_eq!(o.status.code(), Some(3));
    let o = dlp(&["no-such-command"], None);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn verify_fast_subset_passes() {
    let o = dlp(&["verify", "--criteria", "1,3,4,6", "--format", "json-lines"], None);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(values(&o).iter().all(|v| v == "PASS"));
}

/// A Green cache entry rewritten with a consistent checksum but a wrong
/// coefficient must make the oracle criterion fail.
#[test]
fn corrupted_green_cache_fails_oracle() {
    let dir = tempfile::tempdir().unwrap();
    dlp(&["green", "--family", "GL", "--n", "3"], Some(dir.path()));
    let mut tampered = 0;
    for e in std::fs::read_dir(dir.path()).unwrap() {
        let p = e.unwrap().path();
        if p.extension().is_none_or(|x| x != "json") {
            continue;
        }
        let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&p).unwrap()).unwrap();
        let payload = v["payload"].as_str().unwrap().to_string();
        // Q_{(1,1,1)}(1,1,1) = (q+1)(q^2+q+1); bump its constant term
        let bad = payload.replace("GL 3 (1,1,1) (1,1,1) : 1 ", "GL 3 (1,1,1) (1,1,1) : 2 ");
        assert_ne!(bad, payload);
        v["sha256"] = Value::from(format!("{:x}", Sha256::digest(bad.as_bytes())));
        v["payload"] = Value::from(bad);
        std::fs::write(&p, serde_json::to_string(&v).unwrap()).unwrap();
        tampered += 1;
    }
    assert_eq!(tampered, 1);
    let o = dlp(&["verify", "--criteria", "2"], Some(dir.path()));
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).starts_with("FAIL [ 2]"), "{}", stdout(&o));
}
