use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use twodesign::bounds::BoundRecord;
use twodesign::io::density_to_json;
use twodesign::scan::ParameterScan;
use twodesign::states::{werner_state, DetectionVerdict};
use twodesign::tables::{hesse_spectrum, TableOptions, TableReport};

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twodesign"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok_stdout(args: &[&str]) -> String {
    let out = cli(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn ok_json(args: &[&str]) -> Value {
    serde_json::from_str(&ok_stdout(args)).unwrap()
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("twodesign-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn designs_verify_passes_for_every_standard_design() {
    for kind in ["mub", "sic"] {
        for d in ["2", "3", "4"] {
            let report = ok_json(&["designs", "verify", "--kind", kind, "--d", d]);
            assert_eq!(report["pass"], true);
            assert!(report["max_deviation"].as_f64().unwrap() < 1e-10);
            assert_eq!(report["tolerance"], 1e-10);
        }
    }
}

#[test]
fn designs_show_lists_every_component() {
    let text = ok_stdout(&["designs", "show", "--kind", "mub", "--d", "3", "--format", "csv"]);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("index,component,re,im"));
    assert_eq!(lines.count(), 12 * 3);
    let family = ok_json(&["designs", "show", "--kind", "mub", "--d", "4", "--x", "1.5", "--y", "0", "--z", "0"]);
    assert_eq!(family["vectors"].as_array().unwrap().len(), 12);
    assert_eq!(family["descriptor"]["provenance"]["type"], "family");
}

#[test]
fn angles_require_the_d4_mub_family() {
    let out = cli(&["designs", "show", "--kind", "sic", "--d", "4", "--x", "1", "--y", "0", "--z", "0"]);
    assert!(!out.status.success());
}

#[test]
fn correlate_and_detect_a_werner_file() {
    let path = temp_file("werner.json", &density_to_json(&werner_state(3, 0.2).unwrap()));
    let file = path.to_str().unwrap();
    let value = ok_json(&["correlate", "--state", file, "--design", "mub", "--d", "3", "--m", "4"]);
    assert!((value["value"].as_f64().unwrap() - 0.4).abs() < 1e-12);
    assert_eq!(value["conjugate_second"], false);

    let text = ok_stdout(&["detect", "--state-file", file, "--design", "mub", "--restarts", "16"]);
    let verdict: DetectionVerdict = serde_json::from_str(&text).unwrap();
    assert_eq!(verdict.verdict.to_string(), "EntangledByLower");
    let echoed: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(echoed["input"]["state"], "file");
    assert_eq!(echoed["input"]["bound_source"], "recompute");
}

#[test]
fn maximally_mixed_state_is_inconclusive() {
    let rho = twodesign::bipartite::BipartiteDensityMatrix::maximally_mixed(2);
    let path = temp_file("mixed.json", &density_to_json(&rho));
    let v = ok_json(&[
        "detect",
        "--state-file",
        path.to_str().unwrap(),
        "--design",
        "sic",
        "--bounds",
        "closed-form",
    ]);
    assert_eq!(v["verdict"], "Inconclusive");
}

#[test]
fn malformed_state_file_reports_position() {
    let path = temp_file("bad.json", "{\"local_dim\": 2,\n \"matrix\": [[[1, 0]],, ]}");
    let out = cli(&["correlate", "--state", path.to_str().unwrap(), "--design", "mub", "--d", "2"]);
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 2"), "{err}");
}

#[test]
fn isotropic_preset_conjugates_second_party() {
    let v = ok_json(&[
        "detect",
        "--state",
        "isotropic",
        "--d",
        "3",
        "--param",
        "0.5",
        "--design",
        "sic",
        "--bounds",
        "closed-form",
    ]);
    assert_eq!(v["conjugate_second"], true);
    assert_eq!(v["verdict"], "EntangledByUpper");
    assert!((v["value"].as_f64().unwrap() - 2.0).abs() < 1e-12);
}

#[test]
fn verdicts_never_change_the_exit_code() {
    for param in ["0.0", "0.3", "0.9"] {
        let out = cli(&[
            "detect",
            "--state",
            "werner",
            "--d",
            "2",
            "--param",
            param,
            "--bounds",
            "closed-form",
        ]);
        assert!(out.status.success());
    }
}

#[test]
fn closed_form_source_rejects_incomplete_designs() {
    let out = cli(&[
        "detect",
        "--state",
        "werner",
        "--d",
        "3",
        "--m",
        "2",
        "--param",
        "0.3",
        "--bounds",
        "closed-form",
    ]);
    assert!(!out.status.success());
}

#[test]
fn bounds_round_trip_and_are_deterministic() {
    let args = [
        "bounds",
        "--design",
        "sic",
        "--d",
        "3",
        "--subset",
        "1,2,3,4,5,7",
        "--restarts",
        "16",
        "--seed",
        "5",
    ];
    let first = ok_stdout(&args);
    assert_eq!(first, ok_stdout(&args));
    let record: BoundRecord = serde_json::from_str(&first).unwrap();
    assert_eq!(record.descriptor.members, vec![1, 2, 3, 4, 5, 7]);
    assert_eq!(serde_json::to_string_pretty(&record).unwrap() + "\n", first);

    let cache = temp_file("cache.json", &format!("[{first}]"));
    let v = ok_json(&[
        "detect",
        "--state",
        "werner",
        "--d",
        "3",
        "--param",
        "0.05",
        "--design",
        "sic",
        "--subset",
        "1,2,3,4,5,7",
        "--bounds",
        "cached",
        "--cache",
        cache.to_str().unwrap(),
    ]);
    assert_eq!(v["lower_used"].as_f64().unwrap(), record.lower);
    assert_eq!(v["input"]["bound_source"], "cached");
}

#[test]
fn all_subsets_emit_one_csv_row_each() {
    let text = ok_stdout(&[
        "bounds",
        "--design",
        "sic",
        "--d",
        "3",
        "--m",
        "2",
        "--all-subsets",
        "--restarts",
        "4",
        "--format",
        "csv",
    ]);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("design,d,m,members,lower,upper,upper_cross_check,restarts,converged")
    );
    assert_eq!(lines.count(), 36);
}

#[test]
fn werner_scan_flips_at_one_half() {
    let text = ok_stdout(&["scan", "--family", "werner", "--d", "3", "--design", "mub", "--restarts", "16"]);
    let scan: ParameterScan = serde_json::from_str(&text).unwrap();
    assert!((scan.first_flip.unwrap() - 0.5).abs() <= 2e-3);
    assert_eq!(scan.rows.len(), 1001);
}

#[test]
fn isotropic_scan_with_full_hesse_sic() {
    let csv = ok_stdout(&[
        "scan",
        "--family",
        "isotropic",
        "--d",
        "3",
        "--design",
        "sic",
        "--restarts",
        "16",
        "--format",
        "csv",
    ]);
    assert!(csv.starts_with("param,value,verdict\n"));
    let flip = csv
        .lines()
        .skip(1)
        .map(|l| l.split(',').collect::<Vec<_>>())
        .find(|f| f[2] != "Inconclusive")
        .map(|f| f[0].parse::<f64>().unwrap())
        .unwrap();
    assert!((flip - 0.25).abs() <= 1e-2);
}

#[test]
fn werner_scan_with_best_six_subset() {
    let opts = TableOptions {
        restarts: Some(16),
        ..TableOptions::default()
    };
    let best = hesse_spectrum(6, &opts).unwrap().best_lower().descriptor.members.clone();
    let subset = best.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
    let scan: ParameterScan = serde_json::from_str(&ok_stdout(&[
        "scan",
        "--family",
        "werner",
        "--d",
        "3",
        "--design",
        "sic",
        "--subset",
        &subset,
        "--restarts",
        "64",
    ]))
    .unwrap();
    assert!((scan.first_flip.unwrap() - 0.11).abs() <= 1e-2);
}

#[test]
fn tables_round_trip_and_pass() {
    let text = ok_stdout(&["tables", "iii"]);
    let report: TableReport = serde_json::from_str(&text).unwrap();
    assert!(report.passed());
    assert_eq!(ok_stdout(&["tables", "III"]), text);
    let csv = ok_stdout(&["tables", "EQ12", "--format", "csv"]);
    assert!(csv.starts_with("table_id,label,computed,reference,reference_value,abs_error,tolerance,pass\n"));
    assert!(csv.lines().skip(1).all(|l| l.ends_with(",true")));
    assert!(!cli(&["tables", "VI"]).status.success());
}

#[test]
fn thread_count_comes_from_the_environment() {
    let args = ["bounds", "--design", "mub", "--d", "3", "--m", "2", "--restarts", "8"];
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_twodesign"))
            .env("TWODESIGN_THREADS", threads)
            .args(args)
            .output()
            .unwrap()
    };
    let one = run("1");
    assert!(one.status.success());
    assert_eq!(one.stdout, run("3").stdout);
    assert!(!run("none").status.success());
}
