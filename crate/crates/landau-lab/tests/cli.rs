use std::fs;
use std::path::Path;
use std::process::Command;

fn landau(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_landau")).args(args).env_remove("LANDAU_OUT").output().unwrap()
}

fn code(args: &[&str]) -> i32 {
    landau(args).status.code().unwrap()
}

fn read_dir_sorted(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut v: Vec<_> = fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (e.file_name().to_string_lossy().into_owned(), fs::read(e.path()).unwrap())
        })
        .collect();
    v.sort();
    v
}

#[test]
fn missing_and_unknown_fields_exit_2() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("o");
    let o = out.to_str().unwrap();
    let r = landau(&["wegner", "--L", "1", "--delta", "0.01", "--out", o]);
    assert_eq!(r.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&r.stderr).contains("missing required field `h`"));
    let cfg = tmp.path().join("c.json");
    fs::write(&cfg, r#"{"symbol": "gaussian", "h": 0.1, "basis": 8, "colour": 1}"#).unwrap();
    assert_eq!(code(&["quantize", "--config", cfg.to_str().unwrap(), "--out", o]), 2);
    assert_eq!(code(&["quantize", "--symbol", "sombrero", "--h", "0.1", "--out", o]), 2);
    assert_eq!(code(&["quantize", "--bogus"]), 2);
}

#[test]
fn caps_exit_4_and_numerics_exit_3() {
    let tmp = tempfile::tempdir().unwrap();
    let o = tmp.path().to_str().unwrap();
    assert_eq!(code(&["grushin", "--potential", "gaussian", "--h", "0.1,0.05,0.0125", "--nx", "100", "--ny", "100", "--out", o]), 4);
    // Eight nodes cannot resolve a 20-level basis.
    assert_eq!(code(&["quantize", "--symbol", "gaussian", "--h", "0.1", "--basis", "20", "--quad-order", "8", "--out", o]), 3);
}

#[test]
fn reruns_are_byte_identical_and_manifests_replay() {
    let tmp = tempfile::tempdir().unwrap();
    let (a, c) = (tmp.path().join("a"), tmp.path().join("c"));
    let (ao, co) = (a.to_str().unwrap(), c.to_str().unwrap());
    let args = ["mehler", "--h", "0.1,0.2", "--kmax", "6", "--seed", "5", "--out", ao];
    assert_eq!(code(&args), 0);
    let first = read_dir_sorted(&a);
    assert_eq!(code(&args), 0);
    assert!(first == read_dir_sorted(&a), "rerun changed the artifacts");
    let manifest = a.join("manifest.json");
    assert_eq!(code(&["mehler", "--config", manifest.to_str().unwrap(), "--out", co]), 0);
    let strip = |d: &Path| -> Vec<(String, Vec<u8>)> { read_dir_sorted(d).into_iter().filter(|f| f.0 != "manifest.json").collect() };
    assert!(strip(&a) == strip(&c), "replayed manifest gave different artifacts");
    let m: serde_json::Value = serde_json::from_slice(&fs::read(c.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(m["seed"], 5);
    assert_eq!(m["command"], "mehler");
    assert_eq!(m["config"]["kmax"], 6);
    assert_eq!(m["config"]["out"], co);
}

#[test]
fn monte_carlo_artifacts_do_not_depend_on_workers() {
    let tmp = tempfile::tempdir().unwrap();
    let mut dirs = Vec::new();
    for w in ["1", "3"] {
        let out = tmp.path().join(w);
        let r = landau(&[
            "bandedge", "--L", "1,2,3", "--delta", "0.05,0.1", "--trials", "200", "--workers", w, "--out", out.to_str().unwrap(),
        ]);
        assert!(r.status.success(), "{}", String::from_utf8_lossy(&r.stderr));
        dirs.push(out);
    }
    let strip = |d: &Path| -> Vec<(String, Vec<u8>)> { read_dir_sorted(d).into_iter().filter(|f| f.0 != "manifest.json").collect() };
    assert!(strip(&dirs[0]) == strip(&dirs[1]), "worker count changed the artifacts");
    let names: Vec<String> = read_dir_sorted(&dirs[0]).into_iter().map(|f| f.0).collect();
    assert_eq!(names, ["cells.csv", "manifest.json", "scaling.svg", "summary.json"]);
}
