//! Command implementations. Each returns the rendered output and exit code;
//! nothing is written until the whole run is finished.

use std::time::Instant;

use pwhit_core::gz::verify::AlgebraOptions;
use pwhit_core::gz::whittaker::WhittakerOptions;
use pwhit_core::gz::{
    verify_combin, verify_left_whittaker, verify_operator_algebra, verify_right_support_relations,
    SuiteReport,
};
use pwhit_core::{
    auto_contour, eval_mb, eval_residue_series, evaluate, leading_asymptotic, MbEstimate,
    SeriesConfig, SeriesEstimate, SpectralData,
};
use serde::Serialize;

use crate::config::{Command, Method, OutputFormat, RunConfig};
use crate::record::{
    Comparison, Inputs, ResultRecord, SkippedSuite, SweepRow, SweepTable,
    ValueRecord, VerifyReport, SCHEMA_VERSION,
};
use crate::{core_exit_code, CliError, EXIT_OK, EXIT_VERIFICATION};

/// `verify` suite sizes.
pub const COMBIN_MAX_N: usize = 8;
pub const COMBIN_POINTS: usize = 100;
pub const COMBIN_TOL: f64 = 1e-11;
pub const DEFAULT_VERIFY_SHAPE: (usize, usize) = (2, 4);

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub output: String,
    pub exit_code: i32,
}

fn json<T: Serialize>(v: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(v).map_err(|e| CliError::Output(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

pub fn run(cfg: &RunConfig) -> Result<Outcome, CliError> {
    match cfg.command {
        Command::Eval => cmd_eval(cfg),
        Command::Asympt => cmd_asympt(cfg),
        Command::Verify => cmd_verify(cfg),
        Command::Sweep => cmd_sweep(cfg),
        Command::Xval => cmd_xval(cfg),
    }
}

fn inputs_of(cfg: &RunConfig, x: f64) -> Result<Inputs, CliError> {
    let need = |what: &str| CliError::Config(format!("{} requires --{what}", command_name(cfg.command)));
    Ok(Inputs {
        m: cfg.m.ok_or_else(|| need("m"))?,
        n: cfg.n.ok_or_else(|| need("N"))?,
        lambda: cfg.lambda.clone().ok_or_else(|| need("lambda"))?,
        hbar: cfg.hbar,
        x,
    })
}

fn command_name(c: Command) -> &'static str {
    match c {
        Command::Eval => "eval",
        Command::Asympt => "asympt",
        Command::Verify => "verify",
        Command::Sweep => "sweep",
        Command::Xval => "xval",
    }
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::Mb => "mb",
        Method::Residue => "residue",
        Method::Both => "both",
    }
}

fn series_config(cfg: &RunConfig) -> SeriesConfig {
    let d = SeriesConfig::default();
    SeriesConfig {
        max_order: cfg.series.max_order.unwrap_or(d.max_order),
        tol: cfg.series.tol.unwrap_or(d.tol),
    }
}

fn run_mb(s: &SpectralData, cfg: &RunConfig) -> pwhit_core::Result<MbEstimate> {
    let c = &cfg.contour;
    if !c.any() {
        return evaluate(s, c.tol);
    }
    let mut contour = auto_contour(s, c.tol)?;
    if let Some(e) = c.epsilon {
        contour.epsilon = e;
    }
    if let Some(t) = c.half_extent {
        contour.half_extent = t;
    }
    if let Some(n) = c.nodes_per_dim {
        contour.nodes_per_dim = n;
    }
    eval_mb(s, &contour)
}

fn run_residue(s: &SpectralData, cfg: &RunConfig) -> pwhit_core::Result<SeriesEstimate> {
    eval_residue_series(s, &series_config(cfg))
}

/// Evaluate one point with `method`; errors land in the record.
fn evaluate_record(command: &str, inputs: Inputs, method: Method, cfg: &RunConfig) -> (ResultRecord, Option<pwhit_core::Error>) {
    let start = Instant::now();
    let mut rec = ResultRecord::new(command, inputs.clone(), method_name(method));
    let res = (|| -> pwhit_core::Result<()> {
        let s = SpectralData::new(inputs.m, inputs.n, inputs.lambda.clone(), inputs.hbar, inputs.x)?;
        match method {
            Method::Mb => {
                let e = run_mb(&s, cfg)?;
                rec.value = Some(e.value.into());
                rec.error_estimate = Some((&e).into());
            }
            Method::Residue => {
                let e = run_residue(&s, cfg)?;
                rec.value = Some(e.value.into());
                rec.error_estimate = Some((&e).into());
            }
            Method::Both => {
                let a = run_mb(&s, cfg)?;
                let b = run_residue(&s, cfg)?;
                rec.value = Some(a.value.into());
                rec.error_estimate = Some((&a).into());
                let d = a.value.rel_diff(b.value);
                rec.comparison = Some(Comparison {
                    residue_value: b.value.into(),
                    residue_error_estimate: (&b).into(),
                    rel_discrepancy: d.is_finite().then_some(d),
                });
            }
        }
        Ok(())
    })();
    rec.wall_time = start.elapsed().as_secs_f64();
    match res {
        Ok(()) => (rec, None),
        Err(e) => (rec.failed(&e), Some(e)),
    }
}

fn single(rec: ResultRecord, err: Option<pwhit_core::Error>) -> Result<Outcome, CliError> {
    Ok(Outcome {
        output: json(&rec)?,
        exit_code: err.as_ref().map_or(EXIT_OK, core_exit_code),
    })
}

fn cmd_eval(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let (rec, err) = evaluate_record("eval", inputs_of(cfg, cfg.x)?, cfg.method, cfg);
    single(rec, err)
}

fn cmd_xval(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let (rec, err) = evaluate_record("xval", inputs_of(cfg, cfg.x)?, Method::Both, cfg);
    let mut out = single(rec.clone(), err)?;
    if out.exit_code == EXIT_OK {
        let d = rec.comparison.as_ref().and_then(|c| c.rel_discrepancy);
        if !d.is_some_and(|d| d <= cfg.xval_tol) {
            out.exit_code = EXIT_VERIFICATION;
        }
    }
    Ok(out)
}

fn cmd_asympt(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let inputs = inputs_of(cfg, cfg.x)?;
    let start = Instant::now();
    let mut rec = ResultRecord::new("asympt", inputs.clone(), "leading_asymptotic");
    let res = SpectralData::new(inputs.m, inputs.n, inputs.lambda, inputs.hbar, inputs.x)
        .and_then(|s| leading_asymptotic(&s));
    rec.wall_time = start.elapsed().as_secs_f64();
    match res {
        Ok(v) => {
            rec.value = Some(v.into());
            single(rec, None)
        }
        Err(e) => single(rec.failed(&e), Some(e)),
    }
}

fn cmd_sweep(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let mut rows = Vec::with_capacity(cfg.x_grid.len());
    for &x in &cfg.x_grid {
        let inputs = inputs_of(cfg, x)?;
        let (record, err) = evaluate_record("sweep", inputs.clone(), cfg.method, cfg);
        let ratio = match (err, &record.value) {
            (None, Some(v)) => SpectralData::new(inputs.m, inputs.n, inputs.lambda, inputs.hbar, x)
                .and_then(|s| leading_asymptotic(&s))
                .ok()
                .map(|lead| ValueRecord::from(v.to_log_complex() / lead)),
            _ => None,
        };
        rows.push(SweepRow { x, record, ratio });
    }
    let table = SweepTable {
        schema: SCHEMA_VERSION,
        rows,
    };
    let output = match cfg.output_format {
        OutputFormat::Json => json(&table)?,
        OutputFormat::Csv => sweep_csv(&table)?,
    };
    // row-level errors are reported in the table; the run itself succeeded
    Ok(Outcome {
        output,
        exit_code: EXIT_OK,
    })
}

const CSV_HEADER: [&str; 11] = [
    "x", "log_mag", "phase", "re", "im", "rel_error", "ratio_re", "ratio_im", "wall_time", "error_kind", "error_message",
];

fn sweep_csv(table: &SweepTable) -> Result<String, CliError> {
    let io = |e: csv::Error| CliError::Output(e.to_string());
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER).map_err(io)?;
    let f = |v: Option<f64>| v.map(|v| format!("{v:?}")).unwrap_or_default();
    for row in &table.rows {
        let r = &row.record;
        let v = r.value.as_ref();
        let ratio_lin = row.ratio.as_ref().map(|q| (q.re, q.im));
        w.write_record([
            format!("{:?}", row.x),
            f(v.and_then(|v| v.log_mag)),
            f(v.map(|v| v.phase)),
            f(v.and_then(|v| v.re)),
            f(v.and_then(|v| v.im)),
            f(r.error_estimate.as_ref().and_then(|e| e.rel_error)),
            f(ratio_lin.and_then(|q| q.0)),
            f(ratio_lin.and_then(|q| q.1)),
            format!("{:?}", r.wall_time),
            r.error.as_ref().map(|e| e.kind.clone()).unwrap_or_default(),
            r.error.as_ref().map(|e| e.message.clone()).unwrap_or_default(),
        ])
        .map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Output(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Output(e.to_string()))
}

/// Runs combin (n ≤ 8), the operator algebra (N ≤ 5), and the left/right
/// Whittaker suites for `(m, N)` (default `(2, 4)`).
fn cmd_verify(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let (m, n) = match (cfg.m, cfg.n) {
        (None, None) => DEFAULT_VERIFY_SHAPE,
        (Some(m), Some(n)) => (m, n),
        _ => return Err(CliError::Config("verify needs both --m and --N, or neither".into())),
    };
    if !(1 <= m && m < n) {
        return Err(CliError::Config(format!("verify needs 1 <= m < N, got ({m}, {n})")));
    }
    let seed = cfg.seed;
    let w = WhittakerOptions {
        hbar: cfg.hbar,
        perturbation: cfg.perturbation,
        ..Default::default()
    };
    let mut suites: Vec<SuiteReport> = vec![
        verify_combin(COMBIN_MAX_N, COMBIN_POINTS, seed, COMBIN_TOL)?,
        verify_operator_algebra(
            seed,
            AlgebraOptions {
                hbar: cfg.hbar,
                ..Default::default()
            },
        )?,
    ];
    let mut skipped = Vec::new();
    if m >= 2 {
        suites.push(verify_left_whittaker(m, n, cfg.samples, seed, w)?);
        suites.push(verify_right_support_relations(m, n, cfg.samples, seed, w)?);
    } else {
        for suite in ["left_whittaker", "right_support"] {
            skipped.push(SkippedSuite {
                suite: suite.into(),
                reason: "the Whittaker vector formulas need m >= 2".into(),
            });
        }
    }
    let pass = suites.iter().all(|s| s.pass);
    let report = VerifyReport {
        schema: SCHEMA_VERSION,
        seed,
        m,
        n,
        hbar: cfg.hbar,
        pass,
        suites,
        skipped,
        library_version: pwhit_core::VERSION.to_string(),
    };
    Ok(Outcome {
        output: json(&report)?,
        exit_code: if pass { EXIT_OK } else { EXIT_VERIFICATION },
    })
}
