use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

use relayfn_core::fixture;
use relayfn_core::model::binary_entropy;

fn relayfn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_relayfn")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.push("--json");
    let o = relayfn(&all);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.display().to_string()
}

fn entry<'a>(report: &'a Value, graph: &str, quantity: &str) -> &'a Value {
    report["entries"]
        .as_array()
        .unwrap()
        .iter()
        .find(|e| e["graph"] == graph && e["quantity"] == quantity)
        .unwrap()
}

fn region<'a>(report: &'a Value, name: &str) -> &'a Value {
    report["regions"].as_array().unwrap().iter().find(|r| r["name"] == name).unwrap()
}

const CONSTANT: &str = r#"{
  "x_alphabet": ["a", "b", "c"],
  "y_alphabet": ["0", "1"],
  "z_alphabet": ["z"],
  "pmf": [["1/6", "1/6"], ["1/6", "1/6"], ["1/6", "1/6"]],
  "f": [["z", "z"], ["z", "z"], ["z", "z"]]
}"#;

const COUNTEREXAMPLE: &str = "# indicator of the smallest symbol, relay sends agreement
n = 1
[A]
1 = 1
2 = 0
3 = 0
[B]
1 = 1
2 = 0
3 = 0
[C]
0 0 = 1
0 1 = 0
1 0 = 0
1 1 = 1
";

#[test]
fn pentagon_confusability_summary() {
    let o = relayfn(&["graph", "--instance", "PENTAGON"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("confusability_x: |V|=5 |E|=5 χ=3 ω=2 perfect=false"), "{text}");
    assert!(text.contains("confusability_y: |V|=5 |E|=5 χ=3 ω=2 perfect=false"), "{text}");
}

#[test]
fn threshold_f_rook_export_matches_definition_scan() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().display().to_string();
    let o = relayfn(&["graph", "--instance", "THRESHOLD", "--out", &out]);
    assert_eq!(o.status.code(), Some(0));
    let csv = fs::read_to_string(dir.path().join("f_rook.csv")).unwrap();
    let mut got: Vec<(usize, usize)> = csv
        .lines()
        .skip(1)
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (f[0].parse().unwrap(), f[1].parse().unwrap())
        })
        .collect();
    got.sort();

    let inst = fixture("THRESHOLD").unwrap();
    let ny = inst.ny();
    let cells = inst.nx() * ny;
    let mut want = Vec::new();
    for u in 0..cells {
        for v in u + 1..cells {
            let (x, y, x2, y2) = (u / ny, u % ny, v / ny, v % ny);
            let rook = x == x2 || y == y2;
            let both = inst.in_support(x, y) && inst.in_support(x2, y2);
            if rook && both && inst.f(x, y) != inst.f(x2, y2) {
                want.push((u, v));
            }
        }
    }
    assert_eq!(got, want);
    for name in ["graph.json", "graph.txt", "rook.adj", "confusability_x.csv", "n1_instance_unrestricted.adj"] {
        assert!(dir.path().join(name).exists(), "{name}");
    }
}

#[test]
fn constant_function_graphs_are_empty() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(dir.path(), "constant.json", CONSTANT);
    let r = json(&["graph", "--instance", &spec, "--n", "2"]);
    for f in r["families"].as_array().unwrap() {
        if f["family"] != "rook" {
            assert_eq!(f["edges"], 0, "{}", f["family"]);
        }
    }
}

#[test]
fn threshold_graph_entropy_report() {
    let r = json(&["entropy", "--instance", "THRESHOLD"]);
    let e = entry(&r, "confusability_x", "graph");
    assert!((e["value"].as_f64().unwrap() - 2.0 / 3.0).abs() < 1e-4);
    assert_eq!(e["converged"], true);
}

#[test]
fn pentagon_second_complementary_term() {
    let r = json(&["entropy", "--instance", "PENTAGON"]);
    let seq = r["complementary"].as_array().unwrap().iter().find(|s| s["graph"] == "confusability_x").unwrap();
    let a2 = seq["terms"].as_array().unwrap().iter().find(|t| t[0] == 2).unwrap()[1].as_f64().unwrap();
    assert!((a2 - 0.5 * 5f64.log2()).abs() < 1e-6);
    assert!((a2 - 1.1610).abs() < 1e-4);
}

#[test]
fn complete_graph_chromatic_entropy_is_source_entropy() {
    let spec = r#"{
      "x_alphabet": ["a", "b", "c"],
      "y_alphabet": ["0", "1"],
      "z_alphabet": ["a", "b", "c"],
      "pmf": [["1/4", "1/4"], ["1/8", "1/8"], ["1/8", "1/8"]],
      "f": [["a", "a"], ["b", "b"], ["c", "c"]]
    }"#;
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "complete.json", spec);
    let r = json(&["entropy", "--instance", &path]);
    let h = entry(&r, "confusability_x", "chromatic")["value"].as_f64().unwrap();
    assert!((h - 1.5).abs() < 1e-12);
}

#[test]
fn xor_zero_region_corner() {
    let r = json(&["region", "--instance", "DSBS_XOR(0.11)"]);
    let g = &region(&r, "relay_xor_zero")["generators"][0];
    let got: Vec<f64> = g.as_array().unwrap().iter().map(|v| v.as_f64().unwrap()).collect();
    assert_eq!(&got[..2], &[1.0, 1.0]);
    assert!((got[2] - 0.5).abs() < 1e-3);
    assert!((got[2] - binary_entropy(0.11)).abs() < 1e-12);
}

#[test]
fn and_membership_queries() {
    let dir = tempfile::tempdir().unwrap();
    let q = write(dir.path(), "q.txt", "h(1/4) h(1/4) h(1/4)\n(1, h(1/4), 0.5*h(1/4))\n");
    let r = json(&["region", "--instance", "DSBS_AND(1/4)", "--query", &q]);
    let verdict = |i: usize, name: &str| -> bool {
        r["queries"][i]["member"].as_array().unwrap().iter().find(|m| m[0] == name).unwrap()[1]
            .as_bool()
            .unwrap()
    };
    assert!(verdict(0, "eps_inner_ri2"));
    assert!(!verdict(0, "eps_ri1_search") && !verdict(0, "eps_ri1_level_sets"));
    assert!(verdict(1, "eps_ri1_level_sets") && !verdict(1, "eps_inner_ri2"));
}

#[test]
fn generator_points_are_members() {
    let first = json(&["region", "--instance", "THRESHOLD"]);
    let g = region(&first, "cutset_outer")["generators"][0].clone();
    let line: Vec<String> = g.as_array().unwrap().iter().map(|v| format!("{:.17}", v.as_f64().unwrap())).collect();
    let dir = tempfile::tempdir().unwrap();
    let q = write(dir.path(), "q.txt", &format!("{}\n", line.join(", ")));
    let r = json(&["region", "--instance", "THRESHOLD", "--query", &q]);
    let m = r["queries"][0]["member"].as_array().unwrap().iter().find(|m| m[0] == "cutset_outer").unwrap();
    assert_eq!(m[1], true);
}

#[test]
fn region_writes_corner_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().display().to_string();
    assert_eq!(relayfn(&["region", "--instance", "HANKOB", "--out", &out]).status.code(), Some(0));
    let csv = fs::read_to_string(dir.path().join("corners.csv")).unwrap();
    assert!(csv.starts_with("region,r_a,r_b,r_c\n"));
    assert!(csv.lines().any(|l| l.starts_with("exchange_eps,1,")));
    let axes = fs::read_to_string(dir.path().join("corners_axes.txt")).unwrap();
    assert!(axes.contains("r_c: relay broadcast rate"));
}

#[test]
fn counterexample_scheme_is_decodable_but_not_relay_computable() {
    let dir = tempfile::tempdir().unwrap();
    let s = write(dir.path(), "ce.txt", COUNTEREXAMPLE);
    let r = json(&["verify", &s, "--instance", "THRESHOLD"]);
    assert_eq!(r["decodable_at_a"], true);
    assert_eq!(r["decodable_at_b"], true);
    assert_eq!(r["error_prob"], "0");
    assert_eq!(r["relay_computable"], false);
    assert_eq!(r["coloring_agrees"], true);
    let w = r["relay_witness"].as_array().unwrap();
    let mut pair = vec![w[0].as_str().unwrap(), w[1].as_str().unwrap()];
    pair.sort();
    assert_eq!(pair, ["(2 | 3)", "(3 | 2)"]);
}

#[test]
fn xor_broadcast_bit_is_zero_error_at_rate_one() {
    let dir = tempfile::tempdir().unwrap();
    let s = write(dir.path(), "bfn.txt", "n = 1\n[BFN]\n0 0 = 0\n0 1 = 1\n1 0 = 1\n1 1 = 0\n");
    let r = json(&["verify", &s, "--instance", "DSBS_XOR(1/4)"]);
    assert_eq!(r["kind"], "broadcast");
    assert_eq!(r["decodable_at_a"], true);
    assert_eq!(r["decodable_at_b"], true);
    assert_eq!(r["rates"][0], "1");
}

#[test]
fn malformed_scheme_reports_location() {
    let dir = tempfile::tempdir().unwrap();
    let s = write(dir.path(), "bad.txt", "n = 1\n[A]\n1 = 1\n2 = 0\n3 = x\n");
    let o = relayfn(&["verify", &s, "--instance", "THRESHOLD"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("bad.txt:5: `x` is not a bit string"), "{err}");
}

#[test]
fn config_errors_exit_with_two() {
    let o = relayfn(&["graph", "--instance", "NO_SUCH_FIXTURE"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8(o.stderr).unwrap().contains("config error"));
    assert_eq!(relayfn(&["entropy"]).status.code(), Some(2));
    assert_eq!(relayfn(&["graph", "--instance", "PENTAGON", "--n", "0"]).status.code(), Some(2));
    assert_eq!(relayfn(&["region", "--instance", "PENTAGON", "--mode", "sideways"]).status.code(), Some(2));
    assert_eq!(relayfn(&["entropy", "--instance", "PENTAGON", "--tol", "-1"]).status.code(), Some(2));
}

#[test]
fn oversized_verification_exits_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let mut text = String::from("n = 3\n[A]\n");
    let symbols = ["0", "1", "2", "3", "4"];
    for side in ["A", "B"] {
        if side == "B" {
            text.push_str("[B]\n");
        }
        for a in symbols {
            for b in symbols {
                for c in symbols {
                    text.push_str(&format!("{a},{b},{c} = 0\n"));
                }
            }
        }
    }
    text.push_str("[C]\n0 0 = 0\n");
    let s = write(dir.path(), "big.txt", &text);
    let o = relayfn(&["verify", &s, "--instance", "PENTAGON"]);
    assert_eq!(o.status.code(), Some(1), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(String::from_utf8(o.stderr).unwrap().contains("size cap exceeded"));
}

#[test]
fn reports_are_deterministic() {
    for args in [
        ["region", "--instance", "THRESHOLD", "--seed", "3"],
        ["entropy", "--instance", "HANKOB", "--seed", "3"],
        ["graph", "--instance", "DSBS_F2(1/5)", "--n", "2"],
    ] {
        let a = relayfn(&[&args[..], &["--json"]].concat());
        let b = relayfn(&[&args[..], &["--json"]].concat());
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn fixtures_and_spec_files_are_interchangeable() {
    let dir = tempfile::tempdir().unwrap();
    let spec = relayfn::instance_io::instance_to_json(&fixture("HANKOB").unwrap());
    let path = write(dir.path(), "hankob.json", &spec);
    let from_fixture = json(&["region", "--instance", "HANKOB"]);
    let from_file = json(&["region", "--instance", &path]);
    assert_eq!(from_fixture["regions"], from_file["regions"]);
}

#[test]
fn accept_passes() {
    let o = relayfn(&["accept"]);
    let text = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{text}");
    assert_eq!(text.lines().filter(|l| l.starts_with("criterion ")).count(), 9);
    assert!(text.ends_with("9/9 criteria passed\n"));
}
