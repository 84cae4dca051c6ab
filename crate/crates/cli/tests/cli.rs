use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn coarse(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coarse")).args(args).env("RUST_BACKTRACE", "0").output().unwrap()
}

fn run_ok(args: &[&str]) {
    let out = coarse(args);
    assert!(out.status.success(), "coarse {args:?}: {}", String::from_utf8_lossy(&out.stderr));
}

fn read_json(path: PathBuf) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn interval_csv(dir: &Path, lo: i64, hi: i64) -> String {
    let ids: Vec<String> = (lo..=hi).map(|i| i.to_string()).collect();
    let mut text = ids.join(",") + "\n";
    for i in lo..=hi {
        text += &((lo..=hi).map(|j| (i - j).abs().to_string()).collect::<Vec<_>>().join(","));
        text.push('\n');
    }
    let path = dir.join(format!("interval_{lo}_{hi}.csv"));
    std::fs::write(&path, text).unwrap();
    path.display().to_string()
}

fn circle_csv(dir: &Path) -> String {
    let mut text = String::from("id,x,y\n");
    for i in 0..12 {
        let a = std::f64::consts::TAU * i as f64 / 12.0;
        text += &format!("p{i},{},{}\n", a.cos(), a.sin());
    }
    let path = dir.join("circle.csv");
    std::fs::write(&path, text).unwrap();
    path.display().to_string()
}

#[test]
fn rips_writes_one_complex_per_scale() {
    let dir = tempfile::tempdir().unwrap();
    let input = interval_csv(dir.path(), 0, 9);
    let out = dir.path().join("out");
    run_ok(&["rips", "--input", &input, "--scales", "1,2", "--out", out.to_str().unwrap()]);
    let report = read_json(out.join("rips.json"));
    let levels = report["levels"].as_array().unwrap();
    assert_eq!(levels.len(), 2);
    for l in levels {
        assert_eq!(l["complex"]["vertices"].as_array().unwrap().len(), 10);
    }
    assert_eq!(levels[1]["f_vector"][2], 8);
    assert!(out.join("rips_0.dot").exists() && out.join("run.log").exists());
}

#[test]
fn empty_input_and_bad_ladders_are_errors() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.csv");
    std::fs::write(&empty, "").unwrap();
    let out = dir.path().join("out");
    let o = coarse(&["rips", "--input", empty.to_str().unwrap(), "--scales", "1", "--out", out.to_str().unwrap()]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("no points"));

    let input = interval_csv(dir.path(), 0, 4);
    let o = coarse(&["rips", "--input", &input, "--scales", "2,1", "--out", out.to_str().unwrap()]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("strictly ascending"));

    let bad = dir.path().join("bad.csv");
    std::fs::write(&bad, "a,b\n0,1\n1,zz\n").unwrap();
    let o = coarse(&["rips", "--input", bad.to_str().unwrap(), "--scales", "1", "--out", out.to_str().unwrap()]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
}

#[test]
fn circle_heatmap_has_a_loop_band() {
    let dir = tempfile::tempdir().unwrap();
    let input = circle_csv(dir.path());
    let out = dir.path().join("out");
    run_ok(&["profile", "--input", &input, "--format", "csv-points", "--scales", "0.6,1.2,2.1", "--out", out.to_str().unwrap()]);
    let report = read_json(out.join("profile.json"));
    let ranks = &report["profile"]["ranks"];
    assert_eq!(ranks[0][0][1], 1);
    assert_eq!(ranks[0][1][1], 1);
    assert_eq!(ranks[0][2][1], 0);
    let svg = std::fs::read_to_string(out.join("profile.svg")).unwrap();
    assert!(svg.contains("H1: 0.6 to 1.2, rank 1"));
    assert!(svg.contains("H1: 0.6 to 2.1, rank 0"));
}

#[test]
fn path_heatmap_is_trivial_and_single_scale_is_one_cell() {
    let dir = tempfile::tempdir().unwrap();
    let input = interval_csv(dir.path(), 0, 12);
    let out = dir.path().join("out");
    run_ok(&["profile", "--input", &input, "--scales", "1,2,4", "--out", out.to_str().unwrap()]);
    let svg = std::fs::read_to_string(out.join("profile.svg")).unwrap();
    assert!(!svg.contains("#c62828"));
    run_ok(&["profile", "--input", &input, "--scales", "1", "--out", out.to_str().unwrap()]);
    let svg = std::fs::read_to_string(out.join("profile.svg")).unwrap();
    assert_eq!(svg.matches("<title>").count(), 2, "one cell with one stripe per degree");
}

#[test]
fn binary_tree_probe_passes() {
    let dir = tempfile::tempdir().unwrap();
    let mut edges = format!("#vertices: {}\n", (1..128).map(|v| v.to_string()).collect::<Vec<_>>().join(" "));
    for v in 2..128 {
        edges += &format!("{} {v}\n", v / 2);
    }
    let input = dir.path().join("tree.edges");
    std::fs::write(&input, edges).unwrap();
    let out = dir.path().join("out");
    run_ok(&["tree-probe", "--input", input.to_str().unwrap(), "--scales", "1,2,4", "--out", out.to_str().unwrap()]);
    let report = read_json(out.join("tree_probe.json"));
    assert_eq!(report["verdict"], "PASS");
    assert_eq!(report["asdim_headline"], 1);
}

#[test]
fn propa_verify_reports_the_worst_pair() {
    let dir = tempfile::tempdir().unwrap();
    let input = interval_csv(dir.path(), -50, 50);
    let out = dir.path().join("out");
    let o = out.to_str().unwrap();
    run_ok(&["propa", "build-uniform", "--input", &input, "--s", "20", "--out", o]);
    let xi = out.join("xi.json");
    let xi = xi.to_str().unwrap();
    run_ok(&["propa", "verify", "--input", &input, "--xi", xi, "--r", "2", "--eps", "0.1", "--s", "20", "--out", o]);
    let report = read_json(out.join("propa_verify.json"));
    // Balls at the ends are cut off by the interval, which pushes the worst
    // pair above the 4/41 of untruncated balls.
    assert_eq!(report["report"]["worst_value"]["exact"], "4/23");
    assert_eq!(report["report"]["pass"], false);
    assert_eq!(report["report"]["supports_ok"], true);
    run_ok(&["propa", "bridge", "--input", &input, "--xi", xi, "--r", "2", "--eps", "0.1", "--s", "20", "--out", o]);
    assert!(read_json(out.join("propa_bridge.json"))["bridge"].is_null());
    run_ok(&["propa", "bridge", "--input", &input, "--xi", xi, "--r", "2", "--eps", "4/23", "--s", "20", "--out", o]);
    let bridge = read_json(out.join("propa_bridge.json"));
    assert_eq!(bridge["bridge"]["complex_report"]["pass"], true);
    assert_eq!(bridge["bridge"]["pulled_back"]["identical"], true);
}

#[test]
fn grid_asdim_headline_is_two() {
    let dir = tempfile::tempdir().unwrap();
    let mut text = String::from("id,x,y\n");
    for y in 0..20 {
        for x in 0..20 {
            text += &format!("{x}:{y},{x},{y}\n");
        }
    }
    let input = dir.path().join("grid.csv");
    std::fs::write(&input, text).unwrap();
    let out = dir.path().join("out");
    run_ok(&[
        "asdim", "--input", input.to_str().unwrap(), "--format", "csv-points", "--metric", "manhattan", "--scales",
        "1,2,4", "--out", out.to_str().unwrap(),
    ]);
    let report = read_json(out.join("asdim.json"));
    assert_eq!(report["asdim"]["headline"], 2);
    let witness = &report["asdim"]["table"][2][0]["witness"];
    assert_eq!(witness["report"]["contiguous"]["status"], "holds");
    assert!(witness["mid"]["maximal_simplices"].is_array());
}

#[test]
fn cech_and_cayley_towers_verify() {
    let dir = tempfile::tempdir().unwrap();
    let input = interval_csv(dir.path(), 0, 8);
    let covers = dir.path().join("covers.json");
    let unit: Vec<String> = (0..8).map(|j| format!(r#"{{"name":"u{j}","members":["{j}","{}"]}}"#, j + 1)).collect();
    let all: Vec<String> = (0..=8).map(|x| format!("\"{x}\"")).collect();
    std::fs::write(&covers, format!(r#"[[{}],[{{"name":"all","members":[{}]}}]]"#, unit.join(","), all.join(","))).unwrap();
    let out = dir.path().join("out");
    run_ok(&["cech", "--input", &input, "--covers", covers.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(read_json(out.join("cech.json"))["passes"], true);
    run_ok(&["cayley", "--group", "free", "--rank", "2", "--radius", "2", "--levels", "1,2", "--out", out.to_str().unwrap()]);
    let cayley = read_json(out.join("cayley.json"));
    assert_eq!(cayley["tower"]["levels"][0]["vertices"].as_array().unwrap().len(), 17);
    assert_eq!(cayley["passes"], true);
}
