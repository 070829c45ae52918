use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn prymlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_prymlab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn predict_b3_types() {
    let o = prymlab(&["predict", "--n", "3", "--ds", "4", "--dl", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("type P(C,C')    (1,2) [proved]"), "{s}");
    assert!(s.contains("type P(X,delta) (2,4) [proved]"), "{s}");
}

#[test]
fn predict_json_for_positive_base_genus() {
    let o = prymlab(&[
        "--format", "json", "predict", "--n", "2", "--ds", "2", "--dl", "2", "--gy", "1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["base_genus"], 1);
    assert!(v["genus_x"].as_i64().unwrap() > 0);
}

#[test]
fn fiber_identity_exits_zero() {
    let o = prymlab(&["verify", "--identity", "sigma_commutes_D", "--n", "4"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("pass"));
}

#[test]
fn homology_identity_on_datum_file() {
    let f = data("theorem2_b3.json");
    let o = prymlab(&["verify", "--identity", "a", "--file", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("[homology]"));
}

#[test]
fn malformed_datum_exits_two_with_position() {
    let f = fixture("malformed.json");
    let o = prymlab(&["validate", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2 column"), "{}", stderr(&o));
}

#[test]
fn constraint_errors_name_the_constraint() {
    let f = data("theorem2_b3.json");
    let o = prymlab(&[
        "verify",
        "--scenario",
        "recillas_a3",
        "--file",
        f.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("constraint violated"), "{}", stderr(&o));
    let o = prymlab(&["probe", "--n", "3", "--ds", "2", "--dl", "6"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).is_empty());
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(prymlab(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        prymlab(&["verify", "--scenario", "nope"]).status.code(),
        Some(2)
    );
    let f = data("theorem2_b3.json");
    assert_eq!(
        prymlab(&["ptype", f.to_str().unwrap(), "--orbit", "parity"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        prymlab(&["verify", "--scenario", "etale_dn", "--gen", "3,0"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn scenario_list_names_all_scenarios() {
    let o = prymlab(&["verify", "--scenario", "list"]);
    let s = stdout(&o);
    for name in [
        "pantazis_b2",
        "theorem2_b3",
        "hyperelliptic_4xi",
        "recillas_a3",
        "d3_antidiagonal",
        "etale_dn",
        "b3_complement",
        "b4_structure",
    ] {
        assert!(s.contains(name), "{name} missing");
    }
}

#[test]
fn bundled_data_pass_their_scenarios() {
    for (file, scenario) in [
        ("pantazis_b2.json", "pantazis_b2"),
        ("theorem2_b3.json", "theorem2_b3"),
        ("hyperelliptic_b3.json", "hyperelliptic_4xi"),
        ("etale_d3.json", "etale_dn"),
    ] {
        let f = data(file);
        let o = prymlab(&[
            "--format",
            "json",
            "verify",
            "--scenario",
            scenario,
            "--file",
            f.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0), "{file}: {}", stderr(&o));
        let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        assert_eq!(v["verdict"], "pass");
    }
}

#[test]
fn ptype_reads_both_lattices() {
    let f = data("theorem2_b3.json");
    let c = stdout(&prymlab(&[
        "ptype",
        f.to_str().unwrap(),
        "--orbit",
        "vector",
    ]));
    let x = stdout(&prymlab(&[
        "ptype",
        f.to_str().unwrap(),
        "--orbit",
        "spinor",
    ]));
    assert_eq!(c.trim(), "P(C,C') rank 4 type (1,2)");
    assert_eq!(x.trim(), "P(X,delta) rank 4 type (2,4)");
}

#[test]
fn generated_datum_round_trips() {
    let o = prymlab(&[
        "generate", "--n", "3", "--ds", "2", "--dl", "6", "--seed", "4",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let path = std::env::temp_dir().join(format!("prymlab-gen-{}.json", std::process::id()));
    std::fs::write(&path, &o.stdout).unwrap();
    let v = prymlab(&["--format", "json", "classify", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    let c: serde_json::Value = serde_json::from_slice(&v.stdout).unwrap();
    assert_eq!(c["short"], 2);
    assert_eq!(c["long"], 6);
    assert_eq!(c["simple"], true);
}

#[test]
fn probe_stream_is_independent_of_thread_count() {
    let run = |threads: &str| {
        let o = Command::new(env!("CARGO_BIN_EXE_prymlab"))
            .args([
                "--format", "json", "probe", "--n", "4", "--ds", "2", "--dl", "6", "--trials", "5",
                "--seed", "3",
            ])
            .env("PRYMLAB_THREADS", threads)
            .output()
            .unwrap();
        assert_eq!(o.status.code(), Some(0));
        stdout(&o)
    };
    let one = run("1");
    assert_eq!(one, run("3"));
    let lines: Vec<serde_json::Value> = one
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 6);
    for (i, row) in lines[..5].iter().enumerate() {
        assert_eq!(row["trial"], i);
    }
    assert_eq!(lines[5]["summary"]["trials"], 5);
}
