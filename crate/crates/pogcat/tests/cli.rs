use std::collections::BTreeMap;
use std::io::Write;
use std::process::Command;
use std::time::{Duration, Instant};

use serde_json::Value;

fn pogcat(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_pogcat")).args(args).output().expect("binary runs");
    (
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
        out.status.code().expect("exit code"),
    )
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut all = args.to_vec();
    all.push("--json");
    let (out, err, code) = pogcat(&all);
    (serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: {out}{err}")), code)
}

fn temp_workspace(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::Builder::new().suffix(".cat").tempfile().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn bundled(name: &str) -> &'static str {
    pogcat::fixtures::get(name).unwrap()
}

fn check_named<'a>(report: &'a Value, name: &str) -> &'a Value {
    report["checks"].as_array().unwrap().iter().find(|c| c["name"] == name).unwrap_or_else(|| panic!("no check {name}"))
}

/// `hom -> rank` for the rows of one check.
fn ranks(check: &Value) -> BTreeMap<String, u64> {
    check["ranks"].as_array().unwrap().iter().map(|r| (r["hom"].as_str().unwrap().to_string(), r["rank"].as_u64().unwrap())).collect()
}

#[test]
fn bundled_unit_passes() {
    let (out, _, code) = pogcat(&["check", "unit.cat"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.starts_with("check: pass"));
}

#[test]
fn bundled_cch_passes() {
    let (out, _, code) = pogcat(&["check", "cch.cat"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("[pass] category C"));
}

#[test]
fn a_flipped_coefficient_in_cch_fails() {
    let text = bundled("cch.cat");
    let line = r#"{ inputs = ["v0>v1"], value = "- T^1/2 v0>v2" }"#;
    assert!(text.contains(line));
    let bad = temp_workspace(&text.replacen(line, r#"{ inputs = ["v0>v1"], value = "T^1/2 v0>v2" }"#, 1));
    let (out, _, code) = pogcat(&["check", bad.path().to_str().unwrap(), "--dmax", "2"]);
    assert_eq!(code, 1, "{out}");
    assert!(out.contains("[fail] category C"));
}

#[test]
fn the_other_bundled_files_check() {
    assert_eq!(pogcat(&["check", "algebras.cat"]).2, 0);
    let (report, code) = json(&["check", "orbits.cat"]);
    assert_eq!(code, 1);
    for c in report["checks"].as_array().unwrap() {
        let expect = if c["name"] == "action bad" { "fail" } else { "pass" };
        assert_eq!(c["status"], expect, "{}", c["name"]);
    }
}

#[test]
fn parse_errors_carry_line_and_column() {
    let text = bundled("unit.cat").replacen("name = \"U\"", "name = U", 1);
    let line = text.lines().position(|l| l == "name = U").unwrap() + 1;
    let bad = temp_workspace(&text);
    let (out, err, code) = pogcat(&["check", bad.path().to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains(&format!(".cat:{}:8:", line)), "{err}");
}

#[test]
fn unknown_keys_are_rejected() {
    let bad = temp_workspace(&bundled("unit.cat").replacen("[cutoffs]", "[cutoffs]\ncolour = 1", 1));
    let (_, err, code) = pogcat(&["check", bad.path().to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("colour"), "{err}");
}

#[test]
fn cutoffs_are_mandatory() {
    let text = bundled("unit.cat");
    let line = text.lines().find(|l| l.starts_with("dmax")).unwrap();
    let bad = temp_workspace(&text.replacen(&format!("{line}\n"), "", 1));
    let (_, err, code) = pogcat(&["check", bad.path().to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("dmax"), "{err}");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(pogcat(&["check"]).2, 2);
    assert_eq!(pogcat(&["frobnicate"]).2, 2);
    assert_eq!(pogcat(&["check", "no-such-file.cat"]).2, 2);
    assert_eq!(pogcat(&["homology", "unit.cat", "--category", "nope"]).2, 2);
    assert_eq!(pogcat(&["--help"]).2, 0);
}

#[test]
fn novikov_quotients_have_n_k_classes() {
    for n in [1u64, 2, 4] {
        let start = Instant::now();
        let (report, code) = json(&["demo-novikov", "--n", &n.to_string(), "--at", "3"]);
        assert!(start.elapsed() < Duration::from_secs(1));
        assert_eq!(code, 0);
        let r = ranks(check_named(&report, "quotients"));
        for k in 1..=3u64 {
            // grades of (1/n)Z in [0, k)
            let grades = (0..).map(|i| i as f64 / n as f64).take_while(|g| *g < k as f64).count() as u64;
            assert_eq!(r[&format!("M/I^{k}")], grades, "n = {n}, k = {k}");
        }
    }
}

#[test]
fn novikov_cutoff_must_be_positive() {
    let (_, err, code) = pogcat(&["demo-novikov", "--n", "2", "--at", "0"]);
    assert_eq!(code, 2);
    assert!(err.contains("cutoff"));
    assert_eq!(pogcat(&["demo-novikov", "--n", "0", "--at", "1"]).2, 2);
}

#[test]
fn finer_novikov_grades_refine_coarser_ones() {
    let (coarse, _) = json(&["demo-novikov", "--n", "2", "--at", "3"]);
    let (fine, _) = json(&["demo-novikov", "--n", "4", "--at", "3"]);
    let (c, f) = (ranks(check_named(&coarse, "quotients")), ranks(check_named(&fine, "quotients")));
    for (k, r) in &c {
        assert!(f[k] >= *r && f[k] % r == 0, "{k}");
    }
    assert_eq!(check_named(&coarse, "refinement")["status"], "pass");
}

/// `(source, target, grade)` of the generators in `circle.cat`.
const CIRCLE: [(&str, &str, &str); 6] =
    [("L0", "L0", "0"), ("L0", "L0", "1/2"), ("L1", "L1", "0"), ("L1", "L1", "1/2"), ("L0", "L1", "0"), ("L0", "L1", "1/2")];

#[test]
fn circle_pipeline_stages_match_a_hand_count() {
    let (report, code) = json(&["pipeline", "circle.cat"]);
    assert_eq!(code, 0, "{report}");
    // stage 1 sees grade 0 only, stage 2 both grades
    for (stage, grades) in [("stage 1 (Z%Z)", vec!["0"]), ("stage 2 (Z/2%Z)", vec!["0", "1/2"])] {
        let mut expect = BTreeMap::new();
        for (s, t, q) in CIRCLE {
            if grades.contains(&q) {
                *expect.entry(format!("{s}@0 -> {t}@{q}")).or_insert(0) += 1;
            }
        }
        assert_eq!(ranks(check_named(&report, stage)), expect, "{stage}");
    }
    // one T-orbit per hom, times the rank of the ring below the cutoff
    let base = ranks(check_named(&report, "base change"));
    assert_eq!(base.len(), 3);
    assert!(base.values().all(|r| *r == 4));
}

#[test]
fn trivial_pipeline_stages_are_identities() {
    let (report, code) = json(&["pipeline", "trivial.cat"]);
    assert_eq!(code, 0);
    for c in report["checks"].as_array().unwrap() {
        assert_eq!(c["status"], "pass");
        let name = c["name"].as_str().unwrap();
        if name.starts_with("stage") {
            assert_eq!(ranks(c), BTreeMap::from([("pt@0 -> pt@0".to_string(), 1)]), "{name}");
        }
    }
}

#[test]
fn a_shallow_exhaustion_is_inconclusive() {
    let (out, _, code) = pogcat(&["pipeline", "circle.cat", "--depth", "1"]);
    assert_eq!(code, 3);
    assert!(out.starts_with("pipeline: inconclusive"));
    assert!(out.contains("[inconclusive] reconstruction"));
}

#[test]
fn reports_are_byte_identical_across_runs() {
    for args in [&["check", "orbits.cat"][..], &["pipeline", "circle.cat"], &["demo-novikov", "--n", "3", "--at", "5/2"]] {
        assert_eq!(pogcat(args), pogcat(args), "{args:?}");
    }
}

#[test]
fn json_and_text_renderings_agree() {
    let args = ["pipeline", "circle.cat", "--depth", "1"];
    let (text, _, code) = pogcat(&args);
    let (report, jcode) = json(&args);
    assert_eq!(code, jcode);
    assert_eq!(report["schema"], 1);
    assert!(text.starts_with(&format!("pipeline: {}", report["status"].as_str().unwrap())));
    for c in report["checks"].as_array().unwrap() {
        let head = format!("[{}] {}: {}", c["status"].as_str().unwrap(), c["name"].as_str().unwrap(), c["summary"].as_str().unwrap());
        assert!(text.contains(&head), "{head}");
        for w in c["witnesses"].as_array().unwrap() {
            assert!(text.contains(w.as_str().unwrap()));
        }
        for r in c["ranks"].as_array().unwrap() {
            assert!(text.contains(r["group"].as_str().unwrap()));
        }
    }
}

#[test]
fn orbit_commands_round_trip() {
    let (out, _, code) = pogcat(&["orbit", "orbits.cat", "--action", "flip"]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(pogcat(&["unorbit", "orbits.cat", "--category", "Pair"]).2, 2);
    assert_eq!(pogcat(&["unorbit", "orbits.cat", "--category", "Pair", "--window", "1"]).2, 0);
    assert_eq!(pogcat(&["reconstruct", "orbits.cat", "--category", "Half", "--depth", "1"]).2, 3);
    assert_eq!(pogcat(&["reconstruct", "orbits.cat", "--category", "Half", "--depth", "2"]).2, 0);
}

#[test]
fn localizing_at_an_automorphism_keeps_its_telescope() {
    let (report, code) = json(&["localize", "algebras.cat", "--category", "identity", "--at", "1_XX"]);
    assert_eq!(code, 0);
    assert_eq!(check_named(&report, "telescope")["status"], "pass");
    let (_, err, code) = pogcat(&["localize", "algebras.cat", "--category", "identity", "--at", "zz"]);
    assert_eq!(code, 2);
    assert!(err.contains("zz"));
}

#[test]
fn a_cone_is_a_flat_twisted_complex() {
    let text = format!(
        "{}\n[[twisted]]\nname = \"cone\"\ncategory = \"two-object\"\nentries = [[\"X\", 1], [\"Y\", 0]]\ndelta = [{{ from = 0, to = 1, value = \"1_XY\" }}]\n",
        bundled("algebras.cat")
    );
    let f = temp_workspace(&text);
    let (report, code) = json(&["tw", f.path().to_str().unwrap(), "--category", "two-object", "--dmax", "3"]);
    assert_eq!(code, 0, "{report}");
    assert_eq!(check_named(&report, "curvature")["witnesses"].as_array().unwrap().len(), 0);
}

#[test]
fn homology_of_the_unit_is_one_class() {
    let (report, code) = json(&["homology", "unit.cat", "--category", "U"]);
    assert_eq!(code, 0);
    let rows: Vec<&Value> = report["checks"].as_array().unwrap().iter().flat_map(|c| c["ranks"].as_array().unwrap()).collect();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0]["group"], "Z");
}
