use std::path::Path;
use std::process::Command;

fn locmod(args: &[&str], out: &Path) -> (i32, String) {
    let o = Command::new(env!("CARGO_BIN_EXE_locmod"))
        .args(args)
        .arg("--out")
        .arg(out)
        .env_remove("LOCMOD_BUDGET")
        .env_remove("LOCMOD_WORKERS")
        .output()
        .expect("binary runs");
    (
        o.status.code().unwrap(),
        String::from_utf8_lossy(&o.stdout).into_owned(),
    )
}

fn read(p: &Path) -> String {
    std::fs::read_to_string(p).unwrap()
}

#[test]
fn verify_components_writes_report_and_counts() {
    let dir = tempfile::tempdir().unwrap();
    let (code, stdout) = locmod(&["verify-components", "--n", "3", "--q", "3"], dir.path());
    assert_eq!(code, 0, "{stdout}");
    let report: serde_json::Value = serde_json::from_str(&read(&dir.path().join("report.json"))).unwrap();
    assert_eq!(report["passed"], true);
    assert_eq!(report["details"][0]["counts"]["mres"], 25);
    let counts = read(&dir.path().join("counts.csv"));
    assert!(counts.starts_with("n,r,s,q,mode,ms,mloc,mres,z1,z2,z1_cap_z2,z"));
    assert!(counts.contains("3,2,1,3,naive,13,13,25,13,16,4,4"));
}

#[test]
fn reports_are_byte_identical_across_worker_counts() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let args = [
        "chart-fuzz",
        "--n",
        "4",
        "--p",
        "5",
        "--N",
        "8",
        "--trials",
        "300",
        "--seed",
        "7",
    ];
    let (ca, _) = locmod(&[&args[..], &["--workers", "1"]].concat(), a.path());
    let (cb, _) = locmod(&[&args[..], &["--workers", "3"]].concat(), b.path());
    assert_eq!((ca, cb), (0, 0));
    assert_eq!(read(&a.path().join("report.json")), read(&b.path().join("report.json")));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(locmod(&["verify-components", "--n", "4", "--q", "7"], dir.path()).0, 2);
    assert_eq!(locmod(&["verify-components", "--n", "3", "--q", "6"], dir.path()).0, 3);
    assert_eq!(locmod(&["dim-estimate", "--n", "3", "--q", "3", "5"], dir.path()).0, 3);
    assert_eq!(
        locmod(&["generic-roundtrip", "--n", "3", "--rs", "1", "1"], dir.path()).0,
        3
    );
}

#[test]
fn budget_env_override() {
    let dir = tempfile::tempdir().unwrap();
    let status = Command::new(env!("CARGO_BIN_EXE_locmod"))
        .args(["verify-components", "--n", "3", "--q", "3", "--out"])
        .arg(dir.path())
        .env("LOCMOD_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&status.stderr).contains("budget"));
}

#[test]
fn trace_table_and_roundtrip_pass() {
    let dir = tempfile::tempdir().unwrap();
    let (code, _) = locmod(&["trace-table", "--n", "4", "6", "--q", "3", "7"], dir.path());
    assert_eq!(code, 0);
    let csv = read(&dir.path().join("trace_table.csv"));
    assert!(csv.contains("4,3,1,16,16,-8,-8,-8,1,"));
    assert!(csv.contains("6,7,-1,2752,2752,344,344,344,1,"));
    let (code, _) = locmod(
        &["generic-roundtrip", "--n", "3", "--p", "5", "--trials", "100"],
        dir.path(),
    );
    assert_eq!(code, 0);
    let report: serde_json::Value = serde_json::from_str(&read(&dir.path().join("report.json"))).unwrap();
    assert_eq!(report["details"]["charpoly"], "(T+t)^2(T-t)");
}
