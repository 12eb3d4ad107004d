use std::path::PathBuf;
use std::process::Command;

fn quiver(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../quivers").join(name)
}

fn ihall(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_ihall")).args(args).env_remove("IHALL_CACHE").output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

#[test]
fn roots_lists_sink_sequence() {
    let q = quiver("a3_outer.json");
    let (code, out, _) = ihall(&["roots", q.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains("positive roots (6)"), "{out}");
    assert!(out.contains("sink sequence: 2 1 2 1"), "{out}");
}

#[test]
fn adjacent_involution_is_an_error() {
    let q = quiver("bad_involution.json");
    let (code, _, err) = ihall(&["roots", q.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.starts_with("error:"), "{err}");
}

#[test]
fn plain_rank_one_dcb() {
    let q = quiver("a1.json");
    let (code, out, _) = ihall(&["dcb", q.to_str().unwrap(), "--grade", "3", "--plain"]);
    assert_eq!(code, 0);
    assert!(out.contains("v^(-9/2)"), "{out}");
}

#[test]
fn product_of_element_files() {
    let dir = tempfile::tempdir().unwrap();
    let q = quiver("a1.json");
    let (_, table, _) = ihall(&["dcb", q.to_str().unwrap(), "--grade", "1", "--json"]);
    let t: serde_json::Value = serde_json::from_str(&table).unwrap();
    let elt = serde_json::json!({"quiver": t["quiver"], "terms": t["elements"][0]});
    let x = dir.path().join("x.json");
    std::fs::write(&x, elt.to_string()).unwrap();
    let out_path = dir.path().join("xx.json");
    let (code, _, err) = ihall(&["iprod", q.to_str().unwrap(), x.to_str().unwrap(), x.to_str().unwrap(), "-o", out_path.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    let prod: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(prod["terms"].as_array().unwrap().len(), 2);

    // a file for another quiver is refused
    let other = quiver("a2.json");
    let (code, _, err) = ihall(&["iprod", other.to_str().unwrap(), x.to_str().unwrap(), x.to_str().unwrap()]);
    assert_eq!(code, 2, "{err}");
}

#[test]
fn verify_exit_status() {
    let q = quiver("a2.json");
    let (code, out, _) = ihall(&["verify", q.to_str().unwrap(), "relations", "--json"]);
    assert_eq!(code, 0);
    assert!(serde_json::from_str::<serde_json::Value>(&out).is_ok());
    let (code, _, _) = ihall(&["verify", q.to_str().unwrap(), "nonsense"]);
    assert_eq!(code, 2);
}

#[test]
fn hallpoly_uses_cache_file() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache.json");
    let q = quiver("a2.json");
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_ihall"))
            .args(["hallpoly", q.to_str().unwrap(), "--x", "1,0,0", "--z", "0,1,0", "--y", "0,0,1"])
            .env("IHALL_CACHE", &cache)
            .output()
            .unwrap()
    };
    let first = run();
    assert!(first.status.success());
    assert!(cache.exists());
    let second = run();
    assert_eq!(first.stdout, second.stdout);
    assert!(String::from_utf8(first.stdout).unwrap().contains("= 1"));
}
