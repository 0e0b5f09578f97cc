use std::process::{Command, Output};

fn tqf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tqf"))
        .args(args)
        .env_remove("TQF_CACHE_DIR")
        .output()
        .expect("tqf runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

#[test]
fn form_info_json() {
    let o = tqf(&["form", "info", "1,1,3,0,0,-1"]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o).trim_end(),
        r#"{"d":9,"m":3,"level":12,"primitive":true,"aut":24,"genus":"G_{12,9,3}"}"#
    );
}

#[test]
fn form_info_csv_has_header() {
    let o = tqf(&["form", "info", "1,1,1,0,0,0", "--format", "csv"]);
    assert_eq!(stdout(&o), "d,m,level,primitive,aut,genus\n4,4,4,true,48,\"G_{4,4,2}\"\n");
}

#[test]
fn hurwitz_value() {
    let o = tqf(&["hurwitz", "5", "7", "0"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "8/3\n");
    assert_eq!(stdout(&tqf(&["hurwitz", "5", "7", "0", "--format", "json"])), "\"8/3\"\n");
}

#[test]
fn class_and_type_numbers() {
    assert_eq!(stdout(&tqf(&["classnum", "35"])), "76\n");
    assert_eq!(stdout(&tqf(&["classnum", "249"])), "268\n");
    assert_eq!(stdout(&tqf(&["typenum", "3", "5"])), "1\n");
}

#[test]
fn count_series() {
    let o = tqf(&["form", "count", "1,1,1,0,0,0", "--upto", "4", "--format", "csv"]);
    assert_eq!(stdout(&o), "n,count\n0,1\n1,6\n2,12\n3,8\n4,6\n");
    assert_eq!(stdout(&tqf(&["form", "count", "1,1,1,0,0,0", "5"])), "24\n");
}

#[test]
fn equivalence_and_reduction() {
    let o = tqf(&["form", "equiv", "1,1,3,0,0,-1", "3,1,1,-1,0,0", "--format", "text"]);
    assert!(stdout(&o).starts_with("equivalent "));
    let o = tqf(&["form", "equiv", "1,1,1,0,0,0", "1,1,3,0,0,-1"]);
    assert_eq!(stdout(&o), "{\"equivalent\":false,\"witness\":null}\n");
    assert_eq!(stdout(&tqf(&["form", "reduce", "3,1,1,-1,0,0"])), "1,1,3,0,0,-1\n");
}

#[test]
fn automorphism_group_order() {
    let o = tqf(&["form", "aut", "1,1,1,0,0,0", "--format", "text"]);
    assert!(stdout(&o).starts_with("order 48\n"));
}

#[test]
fn classify_level_12() {
    let o = tqf(&["classify", "12", "--format", "csv"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("level,form,d,aut,genus"));
    assert_eq!(lines.count(), 8);
}

#[test]
fn classify_is_deterministic_across_job_counts() {
    let one = tqf(&["classify", "60", "--jobs", "1"]);
    let four = tqf(&["classify", "60", "--jobs", "4"]);
    assert!(one.status.success());
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(stdout(&one).lines().count(), 48);
}

#[test]
fn cache_directory_is_created_and_reused() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("nested").join("cache");
    let cache = cache.to_str().unwrap();
    let first = tqf(&["classify", "20", "--cache-dir", cache]);
    let path = dir.path().join("nested/cache/level-20.jsonl");
    let cached = std::fs::read(&path).expect("cache written");
    assert_eq!(cached, first.stdout);
    let second = tqf(&["classify", "20", "--cache-dir", cache]);
    assert_eq!(first.stdout, second.stdout);
    let bypass = tqf(&["classify", "20", "--cache-dir", cache, "--no-cache"]);
    assert_eq!(first.stdout, bypass.stdout);
}

#[test]
fn theta_of_genus_and_modified_series() {
    let o = tqf(&["theta", "G_{4,4,2}", "--upto", "3"]);
    assert_eq!(stdout(&o), "{\"series\":\"G_{4,4,2}\",\"dilate\":1,\"coefficients\":[\"1/12\",\"1/2\",\"1/1\",\"2/3\"]}\n");
    let o = tqf(&["theta", "3,2", "--upto", "4", "--dilate", "3", "--format", "csv"]);
    assert_eq!(stdout(&o), "n,coefficient\n0,1/2\n1,0/1\n2,0/1\n3,1/1\n4,0/1\n");
}

#[test]
fn transforms() {
    let o = tqf(&["transform", "watson", "1,1,3,0,0,-1", "--modulus", "4", "--format", "json"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("\"experimental\":false"));
    let o = tqf(&["transform", "phi", "1,1,3,0,0,-1", "--prime", "3"]);
    assert_eq!(stdout(&o), "1,1,1,-1,0,0\n");
}

#[test]
fn clifford_commands() {
    let o = tqf(&["clifford", "roundtrip", "1,2,2,-1,0,-1"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("\"discrd\":13"));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("order.json");
    std::fs::write(&path, tqf(&["clifford", "build", "1,1,1,0,0,-1"]).stdout).unwrap();
    let by_order = tqf(&["clifford", "rho", "--order", path.to_str().unwrap(), "1", "-1"]);
    let by_form = tqf(&["clifford", "rho", "--form", "1,1,1,0,0,-1", "1", "-1"]);
    assert_eq!(stdout(&by_order), "2\n");
    assert_eq!(by_order.stdout, by_form.stdout);
}

#[test]
fn verify_appendix_b_passes() {
    let o = tqf(&["verify", "appendixB", "--max", "996"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn verify_reports_are_deterministic() {
    let a = tqf(&["verify", "table2", "--upto", "30", "--format", "json", "--jobs", "1"]);
    let b = tqf(&["verify", "table2", "--upto", "30", "--format", "json", "--jobs", "3"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn failing_suite_exits_one() {
    let o = tqf(&["verify", "eisenstein", "--upto", "10"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn precondition_errors_exit_two() {
    let o = tqf(&["form", "info", "1,1,x,0,0,0"]);
    assert_eq!(o.status.code(), Some(2));
    let o = tqf(&["classify", "8"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not of the form 4N"));
    let o = tqf(&["form", "info", "1,1,1,2,2,2"]);
    assert_eq!(o.status.code(), Some(2));
    let o = tqf(&["verify", "nonsense"]);
    assert_eq!(o.status.code(), Some(2));
    let o = tqf(&["classify", "12", "--jobs", "0"]);
    assert_eq!(o.status.code(), Some(2));
}
