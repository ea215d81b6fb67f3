use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_visclust"));
    c.env_remove("VISCLUST_SEED");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn value<'a>(report: &'a str, key: &str) -> &'a str {
    report
        .lines()
        .find_map(|l| l.strip_prefix(&format!("{key}=")))
        .unwrap_or_else(|| panic!("no {key} in\n{report}"))
}

fn synth(dir: &Path, name: &str, args: &[&str]) -> PathBuf {
    let path = dir.join(name);
    let mut full = vec!["synth"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--output", path.to_str().unwrap()]);
    let o = run(&full);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn cluster_blobs_succeeds() {
    let dir = TempDir::new().unwrap();
    let data = synth(dir.path(), "blobs.csv", &["blobs", "--points", "1000", "--dims", "5", "--clusters", "4", "--seed", "7"]);
    let labels = dir.path().join("out.labels");
    let o = run(&["cluster", s(&data), "--clusters", "4", "--seed", "7", "--truth-column", "label", "--output", s(&labels)]);
    assert_eq!(o.status.code(), Some(0));
    let r = stdout(&o);
    assert_eq!(value(&r, "status"), "satisfied");
    assert!(value(&r, "ari").parse::<f64>().unwrap() >= 0.95);
    for key in ["iterations_used", "k_used", "final_s", "wall_time_seconds", "seed", "threshold", "scale", "subsample", "division_requested"] {
        value(&r, key);
    }
    assert_eq!(fs::read_to_string(labels).unwrap().lines().count(), 1000);
}

#[test]
fn division_length_mismatch_is_a_usage_error() {
    let dir = TempDir::new().unwrap();
    let data = synth(dir.path(), "b.csv", &["blobs", "--points", "100"]);
    let o = run(&["cluster", s(&data), "--division", "0.5,0.5", "--clusters", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("division length mismatch"));
}

#[test]
fn bad_flags_exit_two() {
    assert_eq!(run(&["cluster"]).status.code(), Some(2));
    assert_eq!(run(&["cluster", "x.csv", "--threshold", "abc"]).status.code(), Some(2));
    assert_eq!(run(&["cluster", "/nonexistent/file.csv", "--clusters", "2"]).status.code(), Some(2));
}

#[test]
fn single_gaussian_three_clusters_exits_one() {
    let dir = TempDir::new().unwrap();
    let data = synth(dir.path(), "g.csv", &["gaussian", "--points", "800", "--seed", "3"]);
    let o = run(&["cluster", s(&data), "--clusters", "3", "--projections-2d", "750", "--projections-3d", "0", "--truth-column", "label", "--seed", "3"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(value(&stdout(&o), "status"), "division-not-satisfied");
}

#[test]
fn infeasible_count_exits_one() {
    let dir = TempDir::new().unwrap();
    let data = synth(dir.path(), "b.csv", &["blobs", "--points", "10", "--clusters", "2"]);
    assert_eq!(run(&["cluster", s(&data), "--clusters", "11"]).status.code(), Some(1));
}

#[test]
fn auto_count_and_kmeans() {
    let dir = TempDir::new().unwrap();
    let data = synth(dir.path(), "b.csv", &["blobs", "--points", "600", "--dims", "3", "--clusters", "3", "--seed", "2"]);
    let o = run(&["cluster", s(&data), "--truth-column", "label", "--seed", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(value(&stdout(&o), "status"), "auto-count");
    assert_eq!(value(&stdout(&o), "n_clusters"), "auto:3");

    let o = run(&["cluster", s(&data), "--algo", "kmeans", "--clusters", "3", "--truth-column", "label"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(value(&stdout(&o), "algo"), "kmeans");
    assert!(run(&["cluster", s(&data), "--algo", "kmeans"]).status.code() == Some(2));
}

#[test]
fn embedding_input() {
    let dir = TempDir::new().unwrap();
    let data = synth(dir.path(), "b.csv", &["blobs", "--points", "400", "--dims", "2", "--clusters", "3", "--seed", "5"]);
    // The data's own two features serve as the embedding.
    let text = fs::read_to_string(&data).unwrap();
    let emb: String = text
        .lines()
        .map(|l| l.rsplit_once(',').unwrap().0.to_string() + "\n")
        .collect();
    let emb_path = dir.path().join("emb.csv");
    fs::write(&emb_path, emb).unwrap();
    let svg = dir.path().join("e.svg");
    let o = run(&["cluster", s(&data), "--clusters", "3", "--embedding", s(&emb_path), "--truth-column", "label", "--plot", s(&svg)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(value(&stdout(&o), "projections"), "embedding");
    assert!(fs::read_to_string(svg).unwrap().starts_with("<svg"));
}

#[test]
fn eval_reports() {
    let dir = TempDir::new().unwrap();
    let write = |name: &str, labels: &[i64]| {
        let p = dir.path().join(name);
        fs::write(&p, labels.iter().map(|l| format!("{l}\n")).collect::<String>()).unwrap();
        p
    };
    let truth = write("t", &[1, 1, 2, 2, 3, 3, 3]);
    let renamed = write("r", &[7, 7, 5, 5, 9, 9, 9]);
    let o = run(&["eval", s(&truth), s(&truth)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(value(&stdout(&o), "ari"), "1");
    assert_eq!(value(&stdout(&o), "acc"), "1");
    assert_eq!(value(&stdout(&o), "acc"), value(&stdout(&run(&["eval", s(&renamed), s(&truth)])), "acc"));

    let pred = write("p", &[1, 1, 2, 2]);
    let crossed = write("c", &[1, 2, 1, 2]);
    let r = stdout(&run(&["eval", s(&pred), s(&crossed)]));
    assert_eq!(value(&r, "ari").parse::<f64>().unwrap(), -0.4);

    assert_eq!(run(&["eval", s(&pred), s(&truth)]).status.code(), Some(2));
}

#[test]
fn synth_shapes_and_determinism() {
    let dir = TempDir::new().unwrap();
    let a = synth(dir.path(), "a.csv", &["blobs", "--points", "1000", "--dims", "5", "--clusters", "4", "--seed", "1"]);
    let text = fs::read_to_string(&a).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "x1,x2,x3,x4,x5,label");
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 1000);
    assert!(rows.iter().all(|r| r.split(',').count() == 6));

    let b = synth(dir.path(), "b.csv", &["blobs", "--points", "1000", "--dims", "5", "--clusters", "4", "--seed", "1"]);
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());

    let c = synth(dir.path(), "c.csv", &["circles", "--points", "1500"]);
    let text = fs::read_to_string(c).unwrap();
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 1500);
    let classes: BTreeSet<&str> = rows.iter().map(|r| r.rsplit(',').next().unwrap()).collect();
    assert_eq!(classes.len(), 2);
    assert!(rows.iter().all(|r| r.split(',').count() == 3));
}

#[test]
fn seed_from_environment() {
    let from_env = bin().env("VISCLUST_SEED", "11").args(["synth", "moons", "--points", "50"]).output().unwrap();
    let from_flag = run(&["synth", "moons", "--points", "50", "--seed", "11"]);
    let default = run(&["synth", "moons", "--points", "50"]);
    assert_eq!(from_env.stdout, from_flag.stdout);
    assert_ne!(from_env.stdout, default.stdout);
    let overridden = bin().env("VISCLUST_SEED", "11").args(["synth", "moons", "--points", "50", "--seed", "0"]).output().unwrap();
    assert_eq!(overridden.stdout, default.stdout);
}

#[test]
fn bench_defaults() {
    let o = run(&["bench", "--repeats", "5", "--algos", "visclust", "--summary"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let records: Vec<&str> = out.lines().filter(|l| l.starts_with("m=")).collect();
    assert_eq!(records.len(), 5);
    for r in &records {
        let ari: f64 = r.split(' ').find_map(|f| f.strip_prefix("ari=")).unwrap().parse().unwrap();
        assert!(ari >= 0.95, "{r}");
    }
    assert_eq!(out.lines().filter(|l| l.starts_with("summary ")).count(), 1);
    assert_eq!(run(&["bench", "--repeats", "0"]).status.code(), Some(2));
}

#[test]
fn plot_contract() {
    let dir = TempDir::new().unwrap();
    let data = synth(dir.path(), "b.csv", &["blobs", "--points", "300", "--dims", "3", "--clusters", "3", "--seed", "4"]);
    let labels = dir.path().join("l");
    let text = fs::read_to_string(&data).unwrap();
    fs::write(&labels, text.lines().skip(1).map(|r| format!("{}\n", r.rsplit(',').next().unwrap())).collect::<String>()).unwrap();
    let data_only = dir.path().join("d.csv");
    fs::write(&data_only, text.lines().map(|l| l.rsplit_once(',').unwrap().0.to_string() + "\n").collect::<String>()).unwrap();

    let out1 = dir.path().join("1.svg");
    let out2 = dir.path().join("2.svg");
    for out in [&out1, &out2] {
        let o = run(&["plot", s(&data_only), s(&labels), "--projection", "seeded-random", "--seed", "3", "--output", s(out)]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    }
    let svg = fs::read_to_string(&out1).unwrap();
    let fills: BTreeSet<&str> = svg.split("fill=\"").skip(1).map(|s| &s[..s.find('"').unwrap()]).collect();
    assert_eq!(fills.len(), 3);
    assert_eq!(fs::read(&out1).unwrap(), fs::read(&out2).unwrap());

    let empty = dir.path().join("empty");
    fs::write(&empty, "").unwrap();
    assert_eq!(run(&["plot", s(&data_only), s(&empty), "--output", s(&out1)]).status.code(), Some(2));
}
