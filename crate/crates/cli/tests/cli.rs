use std::process::{Command, Output};

fn bicubic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bicubic"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn field_info() {
    let out = bicubic(&["field-info", "--field", "f=3"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["modulus"], "0xb");
    assert_eq!(v["generators"], 6);
    assert_eq!(v["connected_alphas"], 6);
}

#[test]
fn usage_errors_exit_with_2() {
    assert_eq!(
        bicubic(&["field-info", "--field", "f=3,poly=0x9"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(bicubic(&["verify", "--suite", "f9"]).status.code(), Some(2));
    assert_eq!(
        bicubic(&["construct", "--field", "f=2", "--alpha", "0x9"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        bicubic(&["iso-classes", "--field", "f=2"]).status.code(),
        Some(2)
    );
    assert_eq!(bicubic(&["zp-family", "--p", "11"]).status.code(), Some(2));
    assert_eq!(
        bicubic(&[
            "analyze",
            "--field",
            "f=2",
            "--alpha",
            "0x2",
            "--arcs",
            "s=2,group=B"
        ])
        .status
        .code(),
        Some(2)
    );
}

#[test]
fn resource_cap_exits_with_3() {
    let out = bicubic(&[
        "construct",
        "--field",
        "f=3",
        "--alpha",
        "0x2",
        "--cap",
        "1000",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn construct_and_export_agree() {
    let dir = tempfile::tempdir().unwrap();
    let built = dir.path().join("built.txt");
    let out = bicubic(&[
        "construct",
        "--field",
        "f=2",
        "--alpha",
        "0x2",
        "--out",
        built.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(
        (v["vertices"].as_u64(), v["components"].as_str()),
        (Some(20), Some("60"))
    );
    let exported = bicubic(&["export", "--field", "f=2", "--alpha", "0x2"]);
    assert!(exported.status.success());
    assert_eq!(std::fs::read(&built).unwrap(), exported.stdout);
}

#[test]
fn analyze_writes_json_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = bicubic(&[
        "--json",
        path.to_str().unwrap(),
        "analyze",
        "--field",
        "f=2",
        "--alpha",
        "0x2",
        "--girth",
        "--diameter",
        "--antipodal",
        "--arcs",
        "s=2,group=A",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(
        (v["girth"].as_u64(), v["diameter"].as_u64()),
        (Some(6), Some(5))
    );
    assert_eq!(v["antipodal"], true);
    assert_eq!(v["arcs"][0]["group"], "A");
}

#[test]
fn verify_reports_are_thread_independent() {
    let dir = tempfile::tempdir().unwrap();
    let mut reports = Vec::new();
    for threads in ["1", "4"] {
        let path = dir.path().join(format!("verify{threads}.json"));
        let out = bicubic(&[
            "--threads",
            threads,
            "--json",
            path.to_str().unwrap(),
            "verify",
            "--suite",
            "f1",
            "--suite",
            "f2",
        ]);
        assert!(out.status.success());
        let mut v: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        for suite in v.as_array_mut().unwrap() {
            suite.as_object_mut().unwrap().remove("setup_ms");
            for claim in suite["claims"].as_array_mut().unwrap() {
                claim.as_object_mut().unwrap().remove("elapsed_ms");
            }
        }
        reports.push(v);
    }
    assert_eq!(reports[0], reports[1]);
}

#[test]
fn zp_family_and_classes() {
    let out = bicubic(&["zp-family", "--p", "13"]);
    assert!(out.status.success());
    assert_eq!(stdout_json(&out)["vertices"], 338);
    let out = bicubic(&["iso-classes", "--field", "f=5"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["classes"].as_array().unwrap().len(), 3);
}
