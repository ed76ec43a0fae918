use std::fs;
use std::path::{Path, PathBuf};

use sesame::harness::{
    self, classify, export_queue, load_scenarios, report, run_harness, run_tools, tools_differ, Classification,
    HarnessError, Verdict,
};
use sesame_core::EngineMode::{self, Semistructured as SS, Sesame as SE, Unstructured as U};

fn dataset() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/scenarios")
}

const PAIRS: [(EngineMode, EngineMode); 2] = [(U, SE), (SS, SE)];

#[test]
fn empty_root_has_no_scenarios() {
    let dir = tempfile::tempdir().unwrap();
    assert!(load_scenarios(dir.path()).unwrap().is_empty());
}

#[test]
fn missing_version_directory_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    for v in ["base", "left", "right"] {
        fs::create_dir_all(dir.path().join("s1").join(v)).unwrap();
    }
    match load_scenarios(dir.path()) {
        Err(HarnessError::Malformed { dir: d, missing }) => {
            assert!(d.ends_with("s1"));
            assert_eq!(missing, "merge");
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn file_lists_are_unions_of_versions() {
    let scenarios = load_scenarios(&dataset()).unwrap();
    assert_eq!(scenarios.len(), 10);
    let s01 = &scenarios[0];
    assert_eq!(s01.files.len(), 1);
    let f = &s01.files[0];
    assert_eq!(f.path, "src/Util.java");
    assert!(f.base.is_some() && f.left.is_some() && f.right.is_some() && f.merge.is_some());

    let s07 = scenarios.iter().find(|s| s.id == "s07").unwrap();
    let helper = s07.files.iter().find(|f| f.path == "app/Helper.java").unwrap();
    assert!(helper.base.is_none() && helper.right.is_none());
    assert!(helper.left.is_some() && helper.merge.is_some());
    let out = run_tools(s07, &[U, SE]);
    assert_eq!(out.len(), 4);
    assert!(out.iter().all(|r| r.conflicts == 0 && !r.fallback));
    assert_eq!(out[0].output, helper.left.clone().unwrap());
}

#[test]
fn hidden_files_are_ignored() {
    let dir = tempfile::tempdir().unwrap();
    for v in harness::VERSIONS {
        let d = dir.path().join("s").join(v);
        fs::create_dir_all(&d).unwrap();
        fs::write(d.join(".gitkeep"), "").unwrap();
    }
    fs::create_dir_all(dir.path().join(".git")).unwrap();
    let s = load_scenarios(dir.path()).unwrap();
    assert_eq!(s.len(), 1);
    assert!(s[0].files.is_empty());
}

fn verdicts() -> Vec<(String, EngineMode, EngineMode, Verdict, Classification)> {
    let scenarios = load_scenarios(&dataset()).unwrap();
    let run = run_harness(&scenarios, &[U, SS, SE], &PAIRS);
    run.records
        .into_iter()
        .map(|r| (format!("{}/{}", r.scenario, r.path), r.tool_m, r.tool_n, r.verdict, r.classification))
        .collect()
}

#[test]
fn every_record_is_classified_as_expected() {
    use Classification::*;
    let unclassified = || Unclassified("both tools report conflicts".into());
    let expected: Vec<(&str, Classification, Classification)> = vec![
        ("s01/src/Util.java", AddedFalsePositive(U), None),
        ("s02/src/Util.java", AddedFalsePositive(U), AddedFalsePositive(SS)),
        ("s03/src/Util.java", AddedFalsePositive(U), AddedFalsePositive(SS)),
        ("s04/Chain.java", AddedFalseNegative(SE), AddedFalseNegative(SE)),
        ("s05/Cond.java", unclassified(), unclassified()),
        ("s06/Two.java", None, None),
        ("s07/app/Helper.java", None, None),
        ("s07/app/Main.java", None, None),
        ("s08/X.java", None, None),
        ("s09/Del.java", None, None),
        ("s10/A.java", None, None),
        ("s10/B.java", AddedFalsePositive(U), AddedFalsePositive(SS)),
    ];
    let got = verdicts();
    assert_eq!(got.len(), expected.len() * 2);
    for (chunk, (path, c1, c2)) in got.chunks(2).zip(expected) {
        assert_eq!(chunk[0].0, path);
        assert_eq!((chunk[0].1, chunk[0].2), PAIRS[0]);
        assert_eq!(chunk[0].4, c1, "{path} U:SE");
        assert_eq!(chunk[1].4, c2, "{path} SS:SE");
        for rec in chunk {
            assert_eq!(rec.3 == Verdict::Differ, rec.4 != None, "{path}");
        }
    }
}

#[test]
fn classification_is_sound_and_exclusive() {
    let scenarios = load_scenarios(&dataset()).unwrap();
    let run = run_harness(&scenarios, &[U, SS, SE], &PAIRS);
    for (file, recs) in run.files.iter().zip(run.records.chunks(PAIRS.len())) {
        for rec in recs {
            let m = file.result(rec.tool_m).unwrap();
            let n = file.result(rec.tool_n).unwrap();
            assert_eq!(tools_differ(m, n), tools_differ(n, m));
            if let Classification::AddedFalsePositive(t) = &rec.classification {
                let (fp, other) = if *t == m.tool { (m, n) } else { (n, m) };
                assert!(fp.conflicts >= 1 && other.conflicts == 0);
                assert_eq!(
                    harness::strip_whitespace(&other.output),
                    harness::strip_whitespace(file.versions.merge.as_ref().unwrap())
                );
            }
            // reclassifying with sides swapped names the same tool
            let swapped = classify(n, m, file.versions.merge.as_deref());
            assert_eq!(swapped, rec.classification);
        }
    }
}

#[test]
fn report_sums_per_file_counts() {
    let scenarios = load_scenarios(&dataset()).unwrap();
    let run = run_harness(&scenarios, &[U, SS, SE], &PAIRS);
    let r = report(&run);
    for tool in [U, SS, SE] {
        let sum: usize = run.files.iter().map(|f| f.result(tool).unwrap().conflicts).sum();
        assert_eq!(r.tool(tool).unwrap().merge_conflicts, sum);
    }
}

#[test]
fn one_differing_file_in_ten_is_ten_percent() {
    let dir = tempfile::tempdir().unwrap();
    for i in 0..10 {
        for v in harness::VERSIONS {
            let d = dir.path().join(format!("s{i}")).join(v);
            fs::create_dir_all(&d).unwrap();
            let text = match (i, v) {
                (0, "left") => "class F {\n    int a = 1;\n    int b;\n}\n",
                (0, "right") => "class F {\n    int a;\n    int b = 2;\n}\n",
                (0, "merge") => "class F {\n    int a = 1;\n    int b = 2;\n}\n",
                _ => "class F {\n    int a;\n    int b;\n}\n",
            };
            fs::write(d.join("F.java"), text).unwrap();
        }
    }
    let scenarios = load_scenarios(dir.path()).unwrap();
    let r = report(&run_harness(&scenarios, &[U, SE], &[(U, SE)]));
    assert_eq!(r.files_all, 10);
    assert_eq!(r.pairs[0].differ, 1);
    assert_eq!(r.differ_percent(&r.pairs[0]), 10.0);
    assert_eq!(r.pairs[0].afp_m, 1);
}

#[test]
fn queue_holds_cases_for_manual_analysis() {
    let scenarios = load_scenarios(&dataset()).unwrap();
    let run = run_harness(&scenarios, &[U, SS, SE], &PAIRS);
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(export_queue(&run, dir.path()).unwrap(), 4);
    let case = dir.path().join("s04/Chain.java/unstructured-vs-sesame");
    let record = fs::read_to_string(case.join("record.txt")).unwrap();
    assert!(record.contains("reason = added false negative for sesame"));
    assert!(fs::read_to_string(case.join("sesame")).unwrap().contains("a().g(h(e)).d();"));
    assert!(fs::read_to_string(case.join("merge")).unwrap().contains("a().g(h(c)).d();"));
    assert!(!dir.path().join("s05/Cond.java/semistructured-vs-sesame/unstructured").exists());
    assert!(dir.path().join("s05/Cond.java/semistructured-vs-sesame/semistructured").exists());
}
