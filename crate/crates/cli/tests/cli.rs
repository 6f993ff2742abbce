use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

const L6: &str = "6\n0 0\n4 0\n4 2\n2 2\n2 4\n0 4\nq 3 1/2\n";

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_viswork"))
}

fn scratch(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("viswork-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn viswork")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn digest_of(o: &Output) -> String {
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    v["report"]["digest"].as_str().unwrap().to_string()
}

#[test]
fn l6_text_output() {
    let f = scratch("l6.txt", L6);
    let o = run(&["compute", "--input", f.to_str().unwrap()]);
    assert!(o.status.success());
    let lines: Vec<String> = stdout(&o).lines().map(str::to_string).collect();
    assert_eq!(lines, ["P0 4 1/2", "V 2", "V 3", "S 3 4 2/3 4", "V 5", "V 0", "V 1"]);
}

#[test]
fn square_rand_digest_matches_const() {
    let sq = run(&["gen", "convex", "4"]);
    assert!(sq.status.success());
    assert_eq!(stdout(&sq), "4\n0 0\n4 0\n4 4\n0 4\nq 2 2\n");
    let f = scratch("sq4.txt", &stdout(&sq));
    let p = f.to_str().unwrap();
    let c = run(&["compute", "--input", p, "--format", "json"]);
    let r = run(&["compute", "--input", p, "--format", "json", "--algo", "dnc-rand", "--s", "4", "--seed", "9"]);
    assert!(c.status.success() && r.status.success());
    assert_eq!(digest_of(&c), digest_of(&r));
}

#[test]
fn json_events_round_trip_exactly() {
    let f = scratch("l6j.txt", L6);
    let o = run(&["compute", "--input", f.to_str().unwrap(), "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let ev = &v["events"];
    assert_eq!(ev[0]["kind"], "p0");
    assert_eq!(ev[0]["point"]["y"], "1/2");
    assert_eq!(ev[3]["kind"], "shadow");
    assert_eq!(ev[3]["point"]["x"], "2/3");
    assert_eq!(v["report"]["r_out"], 1);
}

#[test]
fn degenerate_file_exits_3() {
    let g = run(&["gen", "degenerate", "collinear-pair"]);
    assert!(g.status.success());
    let f = scratch("deg.txt", &stdout(&g));
    let o = run(&["compute", "--input", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("collinear"));
}

#[test]
fn parse_error_exits_2() {
    let f = scratch("bad.txt", "3\n0 0\n1 x\n");
    let o = run(&["compute", "--input", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_clean_and_faulty() {
    let ok = run(&["verify", "--family", "comb", "--sizes", "4,8", "--algo", "const,dnc-det,dnc-rand", "--s", "1,3"]);
    assert_eq!(ok.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!(v["mismatches"], 0);
    assert_eq!(v["instances"], 2);

    let f = scratch("l6v.txt", L6);
    let bad = run(&["verify", "--input", f.to_str().unwrap(), "--inject-fault"]);
    assert_eq!(bad.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&bad.stdout).unwrap();
    assert_eq!(v["mismatches"], 1);
    assert_eq!(v["first_mismatch"]["polygon"], L6);
}

#[test]
fn verify_nothing_exits_2() {
    assert_eq!(run(&["verify"]).status.code(), Some(2));
}

#[test]
fn gen_comb_loads_strictly() {
    let g = run(&["gen", "comb", "8", "--seed", "3"]);
    let text = stdout(&g);
    let n: usize = text.lines().next().unwrap().parse().unwrap();
    assert!((32..=40).contains(&n));
    let f = scratch("comb.txt", &text);
    assert!(run(&["compute", "--input", f.to_str().unwrap(), "--strict"]).status.success());
}

#[test]
fn svg_has_two_paths() {
    let f = scratch("l6s.txt", L6);
    let o = run(&["compute", "--input", f.to_str().unwrap(), "--format", "svg"]);
    let s = stdout(&o);
    assert!(s.starts_with("<svg") && s.trim_end().ends_with("</svg>"));
    assert_eq!(s.matches("<path").count(), 2);
    assert_eq!(s.matches("class=\"shadow\"").count(), 1);
    assert!(s.contains("L0.666666667 -4"));
}

#[test]
fn bench_csv_schema() {
    let o = run(&["bench", "--family", "comb", "--sizes", "4", "--algo", "const,dnc-det", "--s", "1,2", "--reps", "2"]);
    assert!(o.status.success());
    let s = stdout(&o);
    let mut lines = s.lines();
    assert_eq!(lines.next(), Some("# viswork-bench v1"));
    let header = lines.next().unwrap();
    let cols = header.split(',').count();
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 6);
    assert!(rows.iter().all(|r| r.split(',').count() == cols));
    let digests: Vec<&str> = rows.iter().map(|r| r.rsplit(',').next().unwrap()).collect();
    assert!(digests.windows(2).all(|w| w[0] == w[1]));
}
