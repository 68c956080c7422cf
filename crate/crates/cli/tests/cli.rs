use std::io::Write;
use std::process::{Command, Output};

use lvknot::fmap::FCandidate;
use lvknot::group::{build_group, Convention};
use lvknot_cli::ftable::format_table;
use serde_json::Value;

fn lvknot(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lvknot"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let o = lvknot(&full);
    (serde_json::from_slice(&o.stdout).expect("json output"), o.status.code().unwrap())
}

const CONVENTION: &str = "word-order, even-rows-right, even-cols-up";

#[test]
fn eval_prints_labels() {
    let o = lvknot(&["group", "eval", "(ab)^-3 a (ab)^3"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with(&format!("# lvknot group eval | convention: {CONVENTION}\n")));
    assert_eq!(out.lines().nth(1), Some("a^7 b^6"));

    let (v, code) = json(&["group", "eval", "e"]);
    assert_eq!(code, 0);
    assert_eq!(v["label"], "e");
    assert_eq!(v["convention"], CONVENTION);
}

#[test]
fn parse_errors_exit_2_with_position() {
    let o = lvknot(&["group", "eval", "a^"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("offset 2"), "{}", stderr(&o));
    let o = lvknot(&["color", "builtin:right-trefoil", "--start", "(ab"]);
    assert_eq!(o.status.code(), Some(2));
    let o = lvknot(&["audit", "--f", "bogus"]);
    assert_eq!(o.status.code(), Some(2));
    let o = lvknot(&["audit", "--n", "0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn center_and_table() {
    let (v, _) = json(&["group", "center"]);
    assert_eq!(v["members"], serde_json::json!(["e", "b^4", "a^4", "a^4 b^4"]));
    let (v, _) = json(&["group", "table"]);
    let products = v["products"].as_array().unwrap();
    assert_eq!(products.len(), 64);
    assert!(products.iter().all(|r| r.as_array().unwrap().len() == 64));
    // e * x = x
    assert_eq!(products[0], serde_json::json!((0..64).collect::<Vec<_>>()));
    let text = stdout(&lvknot(&["group", "table"]));
    assert_eq!(text.lines().count(), 2 + 1 + 64);
}

#[test]
fn parity_and_calibration() {
    let (v, _) = json(&["group", "parity-table"]);
    assert_eq!(v["errata"], 0);
    assert_eq!(v["all_central"], true);
    assert_eq!(v["rows"].as_array().unwrap().len(), 16);
    let (v, _) = json(&["group", "calibrate"]);
    assert_eq!(v["selected"], CONVENTION);
    let matching: Vec<_> = v["conventions"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["reproduces_required"] == true)
        .collect();
    assert_eq!(matching.len(), 1);
}

#[test]
fn audit_exit_codes() {
    let o = lvknot(&["audit", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("f-bijective domain=0 SKIPPED"));

    let o = lvknot(&["audit", "--n", "1"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    let line = out.lines().find(|l| l.starts_with("strange-product[circ]")).unwrap();
    assert!(line.contains("FAIL x = "), "{line}");

    let (v, code) = json(&["audit", "--n", "2", "--f", "substitution"]);
    assert_eq!(code, 1);
    assert_eq!(v["f"]["multiplicative"]["holds"], false);
    assert_eq!(v["f"]["multiplicative_pairs_checked"], 4096);
    let failing: Vec<&str> = v["axioms"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|a| a["outcome"] == "fail")
        .map(|a| a["axiom"].as_str().unwrap())
        .collect();
    assert!(failing.iter().all(|a| a.starts_with("f-")), "{failing:?}");
}

#[test]
fn audit_with_identity_table() {
    let g = build_group(Convention::ALL[0]).unwrap();
    let mut file = tempfile::NamedTempFile::new().unwrap();
    file.write_all(format_table(&FCandidate::identity(&g)).as_bytes()).unwrap();
    let arg = format!("table:{}", file.path().display());
    let (v, code) = json(&["audit", "--f", &arg]);
    assert_eq!(code, 0);
    let outcome = |name: &str| {
        v["axioms"]
            .as_array()
            .unwrap()
            .iter()
            .find(|a| a["axiom"] == name)
            .unwrap()["outcome"]
            .clone()
    };
    assert_eq!(outcome("f-bijective"), "pass");
    assert_eq!(outcome("f-equivariance[circ]"), "pass");
    assert_eq!(outcome("f-equivariance[star]"), "pass");

    let o = lvknot(&["audit", "--f", "table:/nonexistent/f.txt"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn right_trefoil_chain() {
    let (v, code) = json(&["color", "builtin:right-trefoil", "--start", "a"]);
    assert_eq!(code, 0);
    assert_eq!(v["count"], 1);
    assert_eq!(
        v["colorings"][0],
        serde_json::json!(["a", "a b", "a^3 b^7", "a^7", "a b^6"])
    );
    assert_eq!(v["end_colors"], serde_json::json!(["a b^6"]));
    assert_eq!(v["f"]["kind"], "seeded-substitution");
    // the chain words evaluate to the same labels
    for (word, label) in [("a b^-1", "a b"), ("a^2 b^-1 a^-1", "a^3 b^7"), ("(ab)^2 a^-1", "a^7"), ("a b^2", "a b^6")] {
        let (e, _) = json(&["group", "eval", word]);
        assert_eq!(e["label"], label);
    }
}

#[test]
fn left_trefoil_pinned_is_empty_in_both_engines() {
    for engine in ["propagation", "exhaustive"] {
        let (v, code) = json(&[
            "color",
            "builtin:left-trefoil",
            "--start",
            "a",
            "--end",
            "a b^2",
            "--engine",
            engine,
        ]);
        assert_eq!(code, 0);
        assert_eq!(v["count"], 0);
        assert_eq!(v["end_pin"], "a b^6");
    }
}

#[test]
fn distinguish_verdicts() {
    let o = lvknot(&["distinguish", "builtin:right-trefoil", "builtin:left-trefoil", "--start", "a"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().last(), Some("DISTINGUISHED"));
    let (v, _) = json(&["distinguish", "builtin:right-trefoil", "builtin:right-trefoil", "--start", "a"]);
    assert_eq!(v["verdict"], "INCONCLUSIVE");
    let (v, _) = json(&["distinguish", "builtin:right-trefoil", "builtin:unknot", "--start", "a"]);
    assert_eq!(v["second"]["end_colors"], serde_json::json!(["a"]));
    assert_eq!(v["verdict"], "DISTINGUISHED");
}

#[test]
fn text_and_json_agree() {
    let args = ["color", "builtin:right-trefoil", "--start", "b", "--f", "shear", "--engine", "exhaustive"];
    let text = stdout(&lvknot(&args));
    let (v, _) = json(&args);
    let count = v["count"].as_u64().unwrap() as usize;
    assert!(text.contains(&format!("colorings: {count}\n")));
    for (i, c) in v["colorings"].as_array().unwrap().iter().enumerate() {
        let arcs: Vec<String> = c
            .as_array()
            .unwrap()
            .iter()
            .enumerate()
            .map(|(j, x)| format!("a{} = {}", j + 1, x.as_str().unwrap()))
            .collect();
        assert!(text.contains(&format!("{:>3}. {}\n", i + 1, arcs.join(" | "))));
    }
}

#[test]
fn diagram_files() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    file.write_all(b"longknot kink # a single curl\nO1+ U1+\n").unwrap();
    let path = file.path().to_str().unwrap().to_string();
    let (v, code) = json(&["color", &path, "--start", "a b"]);
    assert_eq!(code, 0);
    assert_eq!(v["diagram"]["name"], "kink");
    assert_eq!(v["count"], 1);
    let (v, code) = json(&["color", &path, "--start", "a", "--classical"]);
    assert_eq!(code, 0);
    assert_eq!(v["mode"], "classical");

    let mut bad = tempfile::NamedTempFile::new().unwrap();
    bad.write_all(b"O1+ U1-\n").unwrap();
    let o = lvknot(&["color", bad.path().to_str().unwrap(), "--start", "a"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("different signs"));

    let o = lvknot(&["color", "/nonexistent/d.txt", "--start", "a"]);
    assert_eq!(o.status.code(), Some(2));
    let o = lvknot(&["color", "builtin:figure-eight", "--start", "a"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn missing_f_has_a_hint() {
    let o = lvknot(&["color", "builtin:right-trefoil", "--start", "a", "--f", "none"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--f seeded"), "{}", stderr(&o));
    let o = lvknot(&["color", "builtin:right-trefoil", "--start", "a", "--classical"]);
    assert_eq!(o.status.code(), Some(2));
}
