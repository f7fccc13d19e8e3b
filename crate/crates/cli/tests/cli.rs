use std::process::{Command, Output};

use pwhit_cli::record::{SweepTable, VerifyReport};
use pwhit_cli::ResultRecord;

fn pwhit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pwhit")).args(args).output().unwrap()
}

fn record(out: &Output) -> ResultRecord {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn eval_bessel_example() {
    let out = pwhit(&["eval", "--m", "1", "--N", "2", "--lambda", "0,0", "--hbar", "1", "--x", "0", "--method", "mb"]);
    assert_eq!(out.status.code(), Some(0));
    let r = record(&out);
    assert_eq!(r.schema, 1);
    assert!((r.value.unwrap().re.unwrap() - 0.2277877).abs() < 1e-7);
    assert!(r.error_estimate.unwrap().rel_error.unwrap() < 1e-8);
}

#[test]
fn residue_with_positive_x_is_a_domain_error() {
    let out = pwhit(&["eval", "--m", "1", "--N", "2", "--lambda", "0.3,0", "--x", "1", "--method", "residue"]);
    assert_eq!(out.status.code(), Some(3));
    let r = record(&out);
    assert_eq!(r.error.unwrap().kind, "domain");
    assert!(r.value.is_none());
}

#[test]
fn both_methods_agree() {
    let out = pwhit(&["eval", "--m", "2", "--N", "4", "--lambda", "0.9,0.4,-0.35,-1.15", "--x", "-4", "--method", "both"]);
    assert_eq!(out.status.code(), Some(0));
    let c = record(&out).comparison.unwrap();
    assert!(c.rel_discrepancy.unwrap() <= 1e-6);
    assert_eq!(c.residue_error_estimate.converged, Some(true));
}

#[test]
fn xval_exit_status() {
    let args = ["xval", "--m", "2", "--N", "3", "--lambda", "0.45,-0.2,0.9", "--x", "-3"];
    assert_eq!(pwhit(&args).status.code(), Some(0));
    // a threshold below the evaluators' rounding floor
    let mut strict = args.to_vec();
    strict.extend(["--xval-tol", "1e-17"]);
    let out = pwhit(&strict);
    assert_eq!(out.status.code(), Some(4));
    assert!(record(&out).comparison.unwrap().rel_discrepancy.unwrap() > 1e-17);
}

#[test]
fn config_errors_exit_2() {
    assert_eq!(pwhit(&["eval", "--m", "1", "--N", "2"]).status.code(), Some(2));
    assert_eq!(pwhit(&["eval", "--unknown-flag"]).status.code(), Some(2));
    assert_eq!(pwhit(&["eval", "--m", "3", "--N", "2", "--lambda", "0,1"]).status.code(), Some(2));
    assert_eq!(pwhit(&["eval", "--format", "csv", "--m", "1", "--N", "2", "--lambda", "0,0"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cfg.json");
    std::fs::write(&path, r#"{"command": "eval", "mm": 1}"#).unwrap();
    assert_eq!(pwhit(&["--config", path.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    let out = dir.path().join("out.json");
    std::fs::write(
        &cfg,
        format!(
            r#"{{"command": "eval", "m": 1, "N": 2, "lambda": [0, 0], "x": -2, "output_path": {:?}, "contour": {{"tol": 1e-9}}}}"#,
            out.to_str().unwrap()
        ),
    )
    .unwrap();
    let o = pwhit(&["--config", cfg.to_str().unwrap(), "--x", "-4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let r: ResultRecord = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(r.inputs.x, -4.0);
    let want = pwhit_core::oracle::psi_1_2_zero_spectrum(-4.0);
    assert!((r.value.unwrap().re.unwrap() - want).abs() < 1e-8 * want);
}

#[test]
fn sweep_ratio_approaches_one() {
    let out = pwhit(&["sweep", "--m", "1", "--N", "2", "--lambda", "0.5,0", "--x-grid=-2,-4,-6,-8,-10,-12"]);
    assert_eq!(out.status.code(), Some(0));
    let t: SweepTable = serde_json::from_slice(&out.stdout).unwrap();
    let dev: Vec<f64> = t.rows.iter().map(|r| (r.ratio.unwrap().re.unwrap() - 1.0).abs()).collect();
    assert_eq!(dev.len(), 6);
    assert!(dev.windows(2).all(|w| w[1] < w[0]), "{dev:?}");
    assert!(dev[5] < 1e-3);
}

#[test]
fn sweep_row_errors_and_empty_grid() {
    let out = pwhit(&["sweep", "--m", "1", "--N", "2", "--lambda", "0.5,0", "--method", "residue", "--x-grid=-2,1,-4"]);
    assert_eq!(out.status.code(), Some(0));
    let t: SweepTable = serde_json::from_slice(&out.stdout).unwrap();
    assert!(t.rows[0].record.value.is_some() && t.rows[2].record.value.is_some());
    assert_eq!(t.rows[1].record.error.as_ref().unwrap().kind, "domain");

    let empty = pwhit(&["sweep", "--m", "1", "--N", "2", "--lambda", "0.5,0"]);
    assert_eq!(empty.status.code(), Some(0));
    let t: SweepTable = serde_json::from_slice(&empty.stdout).unwrap();
    assert!(t.rows.is_empty());

    let csv = pwhit(&["sweep", "--m", "1", "--N", "2", "--lambda", "0.5,0", "--method", "residue", "--format", "csv", "--x-grid=-2,1"]);
    let text = String::from_utf8(csv.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[0].starts_with("x,log_mag,phase,re,im"));
    assert!(lines[2].contains(",domain,"));
}

#[test]
fn verify_default_passes_and_perturbation_fails() {
    let out = pwhit(&["verify"]);
    assert_eq!(out.status.code(), Some(0));
    let r: VerifyReport = serde_json::from_slice(&out.stdout).unwrap();
    assert!(r.pass);
    assert_eq!((r.m, r.n), (2, 4));
    let names: Vec<&str> = r.suites.iter().map(|s| s.suite.as_str()).collect();
    assert_eq!(names.len(), 4, "{names:?}");

    let bad = pwhit(&["verify", "--perturb", "1e-6"]);
    assert_eq!(bad.status.code(), Some(4));
    let r: VerifyReport = serde_json::from_slice(&bad.stdout).unwrap();
    let failing: Vec<&str> = r.suites.iter().filter(|s| !s.pass).map(|s| s.suite.as_str()).collect();
    assert_eq!(failing.len(), 1);
    assert!(failing[0].starts_with("left_whittaker"));
}

#[test]
fn verify_m1_skips_whittaker_suites() {
    let out = pwhit(&["verify", "--m", "1", "--N", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let r: VerifyReport = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r.suites.len(), 2);
    assert_eq!(r.skipped.len(), 2);
}

#[test]
fn asympt_large_magnitudes_stay_in_log_form() {
    let out = pwhit(&["asympt", "--m", "1", "--N", "2", "--lambda", "60.5,0", "--x", "-20"]);
    assert_eq!(out.status.code(), Some(0));
    let v = record(&out).value.unwrap();
    assert!(v.log_mag.unwrap() > 700.0);
    assert!(v.re.is_none());
}
