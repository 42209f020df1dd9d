use std::process::Command;

use fpcoh_cli::commands::{cmd_cohom, CohomArgs};
use fpcoh_cli::survey::{run_survey, survey_csv, PrimeRange};
use fpcoh_cli::{Cache, Corpus, Options};
use fpcoh_core::SubgroupSpec;

fn fpcoh(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_fpcoh")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(s: &str) -> serde_json::Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn z2_level_one_has_h1_two() {
    let (code, out, _) = fpcoh(&["cohom", "Z2", "--p", "3"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["result"]["h1"], 2);
    assert_eq!(v["provenance"]["h1"], "computed");
}

#[test]
fn free_group_with_trivial_coefficients() {
    let (code, out, _) = fpcoh(&["cohom", "F2", "--p", "5", "--subgroup", "full"]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["result"]["h1"], 2);
}

#[test]
fn malformed_entry_exits_one_and_names_relator() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    let mut corpus = Corpus::builtin();
    corpus.entries.retain(|e| e.label == "Z2");
    corpus.entries[0].images[1] = ["1".into(), "0".into(), "1".into(), "1".into()];
    std::fs::write(&path, serde_json::to_string(&corpus).unwrap()).unwrap();
    let (code, _, err) = fpcoh(&["--corpus", path.to_str().unwrap(), "cohom", "Z2", "--p", "5"]);
    assert_eq!(code, 1);
    assert!(err.contains("abAB"), "{err}");
}

#[test]
fn unparsable_arguments_exit_one() {
    assert_eq!(fpcoh(&["cohom", "Z2"]).0, 1);
    assert_eq!(fpcoh(&["cohom", "Z2", "--p", "3", "--subgroup", "nonsense"]).0, 1);
    assert_eq!(fpcoh(&["cohom", "nowhere", "--p", "3"]).0, 1);
}

#[test]
fn resource_cap_exits_two() {
    let (code, _, err) = fpcoh(&["--max-dim", "100", "cohom", "SL2(O-2)", "--p", "11"]);
    assert_eq!(code, 2, "{err}");
    let (code, out, _) = fpcoh(&["--max-dim", "5", "tower", "Z2", "--p", "3", "--k-max", "3"]);
    assert_eq!(code, 2);
    let v = json(&out);
    assert_eq!(v["status"], "truncated");
    assert_eq!(v["result"]["levels"].as_array().unwrap().len(), 1);
    assert_eq!(v["result"]["truncated"]["at_level"], 2);
}

#[test]
fn z2_tower_is_flat_and_not_an_sl2_closure() {
    let (code, out, _) = fpcoh(&["tower", "Z2", "--p", "3", "--k-max", "3"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["result"]["fitted_exponent"], 0.0);
    assert_eq!(v["result"]["full_image_level1"], false);
    assert!(v["result"]["verdicts"].as_array().unwrap().iter().all(|x| x["criterion"] != "analytic"));
}

#[test]
fn criteria_filter() {
    let (code, out, _) = fpcoh(&["tower", "Z2", "--p", "3", "--k-max", "2", "--criteria", "analytic"]);
    assert_eq!(code, 0);
    assert!(json(&out)["result"]["verdicts"].as_array().unwrap().is_empty());
    assert_eq!(fpcoh(&["tower", "Z2", "--p", "3", "--criteria", "bogus"]).0, 1);
}

#[test]
fn cache_hit_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = Corpus::builtin();
    let entry = corpus.entry("SL2(O-2)").unwrap();
    let args = CohomArgs { p: 3, a1: Some(1), k: 1, subgroup: SubgroupSpec::Borel0 { j: 1 }, d: Some(2) };
    let cold = cmd_cohom(entry, &args, &Options::default()).unwrap();
    let cached = Options { cache: Cache::new(Some(dir.path().to_path_buf())), ..Options::default() };
    let first = cmd_cohom(entry, &args, &cached).unwrap();
    let second = cmd_cohom(entry, &args, &cached).unwrap();
    assert_eq!(cold, first);
    assert_eq!(first, second);
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);

    let d = dir.path().to_str().unwrap();
    let (_, a, _) = fpcoh(&["--cache-dir", d, "weights", "--p", "5", "--d", "2"]);
    let (_, b, _) = fpcoh(&["--cache-dir", d, "weights", "--p", "5", "--d", "2"]);
    let (_, c, _) = fpcoh(&["weights", "--p", "5", "--d", "2"]);
    assert_eq!(a, b);
    assert_eq!(a, c);
}

#[test]
fn survey_is_independent_of_parallelism() {
    let mut corpus = Corpus::builtin();
    corpus.entries.retain(|e| e.label == "5_2" || e.label == "Z2");
    corpus.entries.iter_mut().for_each(|e| e.survey = true);
    let range = PrimeRange { min: 5, max: 7 };
    let one = run_survey(&corpus, range, &Options { jobs: 1, ..Options::default() }).unwrap();
    let three = run_survey(&corpus, range, &Options { jobs: 3, ..Options::default() }).unwrap();
    assert_eq!(one, three);
    let csv = survey_csv(&one).unwrap();
    assert_eq!(csv, survey_csv(&three).unwrap());
    assert!(csv.starts_with("parameters,arithmetic,primes_tested,analytic_holds,profile_matches,primes\r\n"));
    for row in &one {
        assert!(row.analytic_holds <= row.primes_tested);
    }
    let knot = &one[0];
    assert_eq!(knot.label, "5_2");
    assert_eq!(knot.details.iter().map(|d| d.p).collect::<Vec<_>>(), vec![5, 7]);
}

#[test]
fn empty_corpus_gives_empty_table() {
    let rows = run_survey(&Corpus { entries: vec![] }, PrimeRange::default(), &Options::default()).unwrap();
    assert!(rows.is_empty());
    assert_eq!(survey_csv(&rows).unwrap().lines().count(), 1);
}

#[test]
fn verify41_without_conjugate_prime_is_partial() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.json");
    let mut corpus = Corpus::builtin();
    corpus.entries.retain(|e| e.label == "SL2(O-2)");
    corpus.entries[0].conjugate_primes.clear();
    std::fs::write(&path, serde_json::to_string(&corpus).unwrap()).unwrap();
    let (code, out, err) = fpcoh(&["--corpus", path.to_str().unwrap(), "verify41", "SL2(O-2)", "--n", "1"]);
    assert_eq!(code, 0, "{err}");
    let v = json(&out);
    assert_eq!(v["result"]["report"]["partial"], true);
    assert_eq!(v["result"]["report"]["pass"], false);
    assert_eq!(v["result"]["report"]["skipped"], serde_json::json!([1, 2]));
}

#[test]
fn verify41_shallow_truncation_is_not_reported_as_pass() {
    let (code, out, _) = fpcoh(&["verify41", "--n", "1"]);
    assert_eq!(code, 0);
    let v = json(&out);
    let statuses: Vec<String> = v["result"]["report"]["results"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["report"]["status"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(statuses.len(), 6);
    assert_eq!(v["provenance"]["presentation_note"], "assumption-flagged");
    println!("n = 1 coverage statuses: {statuses:?}");
}

#[test]
fn weights_command_reports_decomposition_and_admissibility() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.json");
    std::fs::write(&path, r#"{"labels":["s0","s1"],"conjugation":[1,0],"group_elements":[]}"#).unwrap();
    let (code, out, _) = fpcoh(&["weights", "--p", "7", "--galois", path.to_str().unwrap(), "--weight", "2,2"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["result"]["psl2_order"], 168);
    assert_eq!(v["result"]["admissibility"]["admissible"], true);
    assert_eq!(v["result"]["delta_constant"]["exceeds_one_eighth"], true);
    assert_eq!(v["provenance"]["bn"], "paper-cited");
    let (code, _, _) = fpcoh(&["weights", "--p", "9"]);
    assert_eq!(code, 1);
}
