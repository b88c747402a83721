//! Binary-level checks: determinism, exit codes, JSON schemas and the
//! sample files.

use std::process::{Command, Output};

fn twistk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twistk"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .expect("binary runs")
}

fn repo_path(rel: &str) -> String {
    format!("{}/../../{rel}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn reruns_are_byte_identical() {
    for args in [
        vec!["q8-pipeline"],
        vec!["chartable", "catalog:q8", "--json"],
        vec!["mackey", "catalog:d8", "--normal", "z4", "--json"],
        vec![
            "ahss",
            "--space",
            "catalog:rp2xrp2",
            "--twist",
            "z3",
            "--integral",
        ],
    ] {
        let a = twistk(&args);
        let b = twistk(&args);
        assert!(
            a.status.success(),
            "{args:?}: {}",
            String::from_utf8_lossy(&a.stderr)
        );
        assert_eq!(a.stdout, b.stdout, "nondeterministic output for {args:?}");
    }
}

#[test]
fn exit_codes_follow_the_convention() {
    // bad input: 2
    assert_eq!(twistk(&["chartable", "catalog:zz"]).status.code(), Some(2));
    assert_eq!(
        twistk(&["mackey", "catalog:d8", "--normal", "gen:1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        twistk(&["ahss", "--space", "catalog:rp2xrp2", "--twist", "z3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        twistk(&[
            "kunneth",
            "--left",
            "catalog:rp2",
            "--right",
            "catalog:torus"
        ])
        .status
        .code(),
        Some(2)
    );
    // success: 0
    assert_eq!(twistk(&["chartable", "catalog:z6"]).status.code(), Some(0));
}

#[test]
fn trivial_group_table_is_one_by_one() {
    let out = twistk(&["chartable", "catalog:trivial", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["group"]["order"], 1);
    assert_eq!(v["irreducibles"].as_array().unwrap().len(), 1);
    assert_eq!(v["classes"].as_array().unwrap().len(), 1);
}

#[test]
fn degenerate_mackey_report_over_the_trivial_subgroup() {
    let out = twistk(&["mackey", "catalog:d8", "--normal", "trivial", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let orbits = v["orbits"].as_array().unwrap();
    assert_eq!(orbits.len(), 1);
    assert_eq!(orbits[0]["twisted_rank"], 5);
    assert_eq!(orbits[0]["quotient_order"], 8);
}

#[test]
fn mackey_verifies_a_bundle_file_inline() {
    let bundle = repo_path("samples/bundles/q8_point_bundle.json");
    let out = twistk(&[
        "mackey",
        "catalog:q8",
        "--normal",
        "center",
        "--bundle",
        &bundle,
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = String::from_utf8_lossy(&out.stdout).to_string();
    assert!(text.contains("bundle decomposition verified"));
}

#[test]
fn chartable_json_schema_roundtrips() {
    let out = twistk(&["chartable", "catalog:q8", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).expect("valid JSON");
    assert_eq!(v["group"]["order"], 8);
    let irr = v["irreducibles"].as_array().unwrap();
    assert_eq!(irr.len(), 5);
    let degrees: Vec<i64> = irr.iter().map(|c| c["degree"].as_i64().unwrap()).collect();
    assert_eq!(degrees, vec![1, 1, 1, 1, 2]);
    // values carry cyclotomic coefficient vectors
    let first = &irr[0]["values"][0];
    assert!(first["order"].is_u64());
    assert!(first["coeffs"].is_array());
    assert_eq!(v["manifest"]["seed"], 0);
}

#[test]
fn mackey_json_reports_the_twist() {
    let out = twistk(&["mackey", "catalog:q8", "--normal", "center", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["irr_g_count"], 5);
    assert_eq!(v["total_twisted_rank"], 5);
    let orbits = v["orbits"].as_array().unwrap();
    let twisted: Vec<_> = orbits
        .iter()
        .filter(|o| !o["extends"].as_bool().unwrap())
        .collect();
    assert_eq!(twisted.len(), 1);
    assert_eq!(twisted[0]["twisted_rank"], 1);
    assert_eq!(twisted[0]["cocycle"]["trivial"], false);
}

#[test]
fn sample_files_work_end_to_end() {
    let d8 = repo_path("samples/groups/d8_permutation.json");
    let out = twistk(&["chartable", &d8]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("deg 2"));

    let s3 = repo_path("samples/groups/s3_semidirect.json");
    let out = twistk(&["chartable", &s3]);
    assert!(out.status.success());

    let bundle = repo_path("samples/bundles/q8_two_orbit_bundle.json");
    let out = twistk(&[
        "bundle-verify",
        "catalog:q8",
        "--normal",
        "center",
        "--bundle",
        &bundle,
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );

    let space = repo_path("samples/spaces/rp2xrp2.json");
    let out = twistk(&["ahss", "--space", &space, "--twist", "z3", "--integral"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("Z + Z/2 + Z/4"));

    let ktheory = repo_path("samples/ktheory/rp2.json");
    let out = twistk(&["kunneth", "--left", &ktheory, "--right", &ktheory]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("(Z/2)^3"));
}

#[test]
fn dump_reps_writes_unitary_matrices() {
    let dir = std::env::temp_dir().join("twistk-dump-reps-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("q8_reps.json");
    let out = twistk(&[
        "chartable",
        "catalog:q8",
        "--dump-reps",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let reps = v["representations"].as_array().unwrap();
    assert_eq!(reps.len(), 5);
    assert_eq!(reps[4]["dimension"], 2);
    // entries are [re, im] pairs
    let entry = &reps[4]["matrices"][0][0][0];
    assert!(entry.as_array().map(|a| a.len()) == Some(2));
    std::fs::remove_file(&path).ok();
}

#[test]
fn induce_command_decomposes_the_result() {
    let out = twistk(&[
        "induce",
        "catalog:d8",
        "--subgroup",
        "z4",
        "--char",
        "2",
        "--json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["induced"]["degree"], 2);
    let mults: Vec<i64> = v["multiplicities"]
        .as_array()
        .unwrap()
        .iter()
        .map(|m| m.as_i64().unwrap())
        .collect();
    assert_eq!(mults.iter().sum::<i64>(), 1);
}

#[test]
fn json_values_round_trip_into_bundle_files() {
    // character values exported by chartable feed back in as raw bundle
    // fiber values
    let out = twistk(&["chartable", "catalog:q8", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let two_dim = &v["irreducibles"][4];
    assert_eq!(two_dim["degree"], 2);
    let bundle = serde_json::json!({
        "orbits": [
            {
                "stabilizer": {"elements": [0, 1, 2, 3, 4, 5, 6, 7]},
                "fiber": {"values": two_dim["values"]}
            }
        ]
    });
    let dir = std::env::temp_dir().join("twistk-roundtrip-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bundle.json");
    std::fs::write(&path, serde_json::to_string(&bundle).unwrap()).unwrap();
    let out = twistk(&[
        "bundle-verify",
        "catalog:q8",
        "--normal",
        "center",
        "--bundle",
        path.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(String::from_utf8_lossy(&out.stdout).contains("total degrees [2]"));
    std::fs::remove_file(&path).ok();
}

#[test]
fn untwisted_integral_flow_matches_the_kunneth_answer() {
    let out = twistk(&[
        "ahss",
        "--space",
        "catalog:rp2xrp2",
        "--twist",
        "0",
        "--integral",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout).to_string();
    assert!(text.contains("K^0 = Z + (Z/2)^3   K^1 = Z/2"));
    assert!(text.contains("1 candidate pair"));

    let out = twistk(&[
        "ahss",
        "--space",
        "catalog:s2",
        "--twist",
        "0",
        "--integral",
    ]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("K^0 = Z^2   K^1 = 0"));
}

#[test]
fn matrix_cocycle_path_through_the_cli() {
    // D8 inside D16 given by explicit elements: the obstruction runs
    // through intertwiner matrices and snapping
    let out = twistk(&[
        "mackey",
        "catalog:d16",
        "--normal",
        "elements:0,1,4,5,8,9,12,13",
        "--json",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["normal"]["order"], 8);
    let orbits = v["orbits"].as_array().unwrap();
    assert!(orbits.iter().all(|o| o["extends"].as_bool().unwrap()));
    let residuals: Vec<f64> = orbits
        .iter()
        .map(|o| o["cocycle"]["max_snap_residual"].as_f64().unwrap())
        .collect();
    assert!(residuals.iter().all(|&r| r < 1e-6));
    assert!(residuals.iter().any(|&r| r > 0.0), "matrix path exercised");
}
