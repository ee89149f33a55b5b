use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_alcoved"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut all = args.to_vec();
    all.push("--json");
    let o = run(&all);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).expect("valid json")
}

#[test]
fn qweyl_c2_holds() {
    let v = json(&["qweyl", "--type", "C", "--rank", "2"]);
    assert_eq!(v["report"]["identity_holds"], true);
    assert_eq!(v["report"]["scalar_lhs"], v["report"]["scalar_rhs"]);
}

#[test]
fn type_a3_hypersimplex_volumes_are_eulerian() {
    let v = json(&["hypersimplex", "--type", "A", "--rank", "3"]);
    assert_eq!(v["report"]["volumes"], serde_json::json!([1, 4, 1]));
    let one = json(&["hypersimplex", "--type", "A3", "--k", "2"]);
    assert_eq!(one["volume"], 4);
}

#[test]
fn missing_spec_is_a_user_error() {
    let o = run(&["volume", "--spec", "missing.json"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
}

#[test]
fn bad_flags_are_user_errors() {
    assert_eq!(run(&["info", "--type", "Q", "--rank", "2"]).status.code(), Some(1));
    assert_eq!(run(&["info", "--type", "A"]).status.code(), Some(1));
    assert_eq!(run(&["info", "--type", "A2", "--rank", "2"]).status.code(), Some(1));
    assert_eq!(run(&["thick-check", "--type", "A2", "--b", "0,1"]).status.code(), Some(1));
}

#[test]
fn budget_exhaustion_exits_with_three() {
    let o = run(&["volume", "--type", "A3", "--lo=-5,-5,-5", "--hi", "5,5,5", "--budget", "1000"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn unsupported_groebner_type_is_a_user_error() {
    assert_eq!(run(&["groebner", "--type", "G2"]).status.code(), Some(1));
}

#[test]
fn volume_reads_a_spec_file() {
    let dir = std::env::temp_dir().join(format!("alcoved-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("box.json");
    std::fs::write(
        &path,
        r#"{"type":"A","rank":2,"constraints":[{"root":[1,0],"min":0,"max":2},{"root":[0,1],"min":0,"max":2}]}"#,
    )
    .unwrap();
    let v = json(&["volume", "--spec", path.to_str().unwrap()]);
    // 2Π in A2: 4 · 2 alcoves, 3 × 3 lattice points
    assert_eq!(v["volume"], 8);
    assert_eq!(v["lattice_points"], 9);
    assert_eq!(v["alcove_count_bfs"], 8);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn selfcheck_passes_for_c2_and_skips_groebner_for_g2() {
    let o = run(&["selfcheck", "--type", "C", "--rank", "2"]);
    assert!(o.status.success());
    assert!(!stdout(&o).contains("FAIL"));
    let g = json(&["selfcheck", "--type", "G", "--rank", "2"]);
    let checks = g["checks"].as_array().unwrap();
    let grob = checks.iter().find(|c| c["check"] == "groebner triangulation").unwrap();
    assert_eq!(grob["status"], "skipped");
    assert_eq!(grob["detail"], "unsupported type");
    assert!(checks.iter().filter(|c| c["check"] != "groebner triangulation").all(|c| c["status"] == "pass"));
}

#[test]
fn selfcheck_reports_the_d4_lattice_defect() {
    let o = run(&["selfcheck", "--type", "D", "--rank", "4"]);
    assert_eq!(o.status.code(), Some(2));
    let out = stdout(&o);
    assert!(out.contains("groebner triangulation         FAIL"));
    assert_eq!(out.matches("pass").count(), 6);
}

#[test]
fn json_is_deterministic_for_a_seed() {
    let args = ["vol-identity", "--type", "C2", "--random", "4", "--seed", "42"];
    let a = json(&args);
    let b = json(&args);
    assert_eq!(a, b);
    assert_eq!(a["seed"], 42);
    assert_eq!(a["identity_holds"], true);
}

#[test]
fn triangulation_of_pi_in_a2() {
    let v = json(&["triangulate", "--type", "A2"]);
    assert_eq!(v["count"], 2);
    let g = json(&["groebner", "--type", "A2"]);
    assert_eq!(g["binomials"].as_array().unwrap().len(), 1);
}

#[test]
fn thick_check_all_windows() {
    let v = json(&["thick-check", "--type", "C2", "--b", "2,1"]);
    assert_eq!(v["identity_holds"], true);
    assert!(v["checks"].as_array().unwrap().len() > 3);
}

#[test]
fn info_and_enumerate() {
    let v = json(&["info", "--type", "D4"]);
    assert_eq!(v["marks"], serde_json::json!([1, 2, 1, 1]));
    assert_eq!(v["weyl_order"], "192");
    let e = json(&["enumerate", "--type", "B3", "--limit", "5"]);
    assert_eq!(e["order"], 48);
    assert_eq!(e["elements"].as_array().unwrap().len(), 5);
    let a = json(&["alcove-of", "--type", "A2", "--point", "1,1"]);
    assert_eq!(a["m"], serde_json::json!([0, 0, 0]));
}
