//! Drivers behind the `rodfiter` binary: simulate coning gyro data, run
//! reconstructions against the analytic truth, and benchmark the exact,
//! truncated, and two-sample algorithms.
//!
//! Everything here is a plain function over a [`RunSpec`] so the pipelines
//! are testable without spawning the binary. Numbers are printed with 17
//! significant digits, which round-trips every f64 exactly.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::time::Instant;

use nalgebra::Vector3;
use thiserror::Error;

use crate::attitude::{attitude_error, chain_intervals, AttitudeTrack, Quaternion, TrackSource};
use crate::baseline::{two_sample_update, TwoSampleState};
use crate::chebyshev::ChebSeries3;
use crate::coning::{quat_true, ConingParams, ErrorModel};
use crate::fitting::{AngularVelocityFitter, FitConfig, FitError, GyroBatch, GyroKind};
use crate::rodfiter::{
    reconstruct, truncation_bound, weighted_term_count, IterConfig, IterError, IterMode,
    ReconstructionResult,
};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("input format error: {0}")]
    InputFormat(String),
    #[error("interval {interval}: {source}")]
    Convergence {
        interval: usize,
        #[source]
        source: IterError,
    },
    #[error("interval {interval}: {source}")]
    Fit {
        interval: usize,
        #[source]
        source: FitError,
    },
}

impl CliError {
    /// 2 for convergence-condition violations, 3 for malformed input,
    /// 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Convergence { .. } => 2,
            CliError::InputFormat(_) => 3,
            _ => 1,
        }
    }
}

/// Which reconstruction the `reconstruct` and `bench` commands run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RunMode {
    Exact,
    Truncated,
    Baseline,
}

impl std::str::FromStr for RunMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exact" => Ok(Self::Exact),
            "truncated" => Ok(Self::Truncated),
            "baseline" => Ok(Self::Baseline),
            other => Err(format!("unknown mode `{other}` (expected exact|truncated|baseline)")),
        }
    }
}

/// Full parameter block for one run. Defaults reproduce the reference
/// simulation: α = 10°, Ω = 0.74π rad/s, 100 Hz sampling, N = 8, n = 7,
/// n_T = 8, 7 iterations, 2 s of data, 10× output upsampling, zero bias.
#[derive(Debug, Clone)]
pub struct RunSpec {
    pub alpha_deg: f64,
    /// Coning frequency in multiples of π rad/s.
    pub omega_pi: f64,
    pub rate_hz: f64,
    pub duration_s: f64,
    pub n_samples: usize,
    pub fit_degree: usize,
    pub truncate_degree: usize,
    pub iterations: usize,
    pub upsample: usize,
    pub bias: Vector3<f64>,
}

impl Default for RunSpec {
    fn default() -> Self {
        Self {
            alpha_deg: 10.0,
            omega_pi: 0.74,
            rate_hz: 100.0,
            duration_s: 2.0,
            n_samples: 8,
            fit_degree: 7,
            truncate_degree: 8,
            iterations: 7,
            upsample: 10,
            bias: Vector3::zeros(),
        }
    }
}

impl RunSpec {
    pub fn coning_params(&self) -> ConingParams {
        ConingParams::new(self.alpha_deg.to_radians(), self.omega_pi * std::f64::consts::PI)
    }

    pub fn error_model(&self) -> ErrorModel {
        ErrorModel { bias: self.bias }
    }

    /// Sample period in seconds.
    pub fn sample_dt(&self) -> f64 {
        1.0 / self.rate_hz
    }

    /// Update interval duration t_N = N / rate.
    pub fn interval_duration(&self) -> f64 {
        self.n_samples as f64 * self.sample_dt()
    }

    pub fn total_samples(&self) -> usize {
        (self.duration_s * self.rate_hz).round() as usize
    }

    pub fn iter_config(&self, mode: RunMode) -> IterConfig {
        IterConfig {
            mode: match mode {
                RunMode::Exact => IterMode::Exact,
                RunMode::Truncated => IterMode::Truncated(self.truncate_degree),
                RunMode::Baseline => IterMode::Truncated(self.truncate_degree),
            },
            max_iters: self.iterations,
            stop_tol: None,
            t_n: self.interval_duration(),
        }
    }
}

fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// One gyro increment sample as stored in the CSV: interval end time and
/// the integrated angular increment over the preceding sample period.
#[derive(Debug, Clone, Copy)]
pub struct IncrementRow {
    pub t_end: f64,
    pub dtheta: Vector3<f64>,
}

/// Synthesize the increment stream for the whole run.
pub fn simulate_increments(spec: &RunSpec) -> Vec<IncrementRow> {
    let p = spec.coning_params();
    let e = spec.error_model();
    let dt = spec.sample_dt();
    (1..=spec.total_samples())
        .map(|k| {
            let t_end = k as f64 * dt;
            IncrementRow {
                t_end,
                dtheta: crate::coning::true_increment(&p, t_end - dt, t_end) + e.bias * dt,
            }
        })
        .collect()
}

pub fn increments_to_csv(rows: &[IncrementRow]) -> String {
    let mut out = String::from("t_end,dtheta_x,dtheta_y,dtheta_z\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            fmt_f64(r.t_end),
            fmt_f64(r.dtheta.x),
            fmt_f64(r.dtheta.y),
            fmt_f64(r.dtheta.z)
        );
    }
    out
}

pub fn parse_increments_csv(text: &str) -> Result<Vec<IncrementRow>, CliError> {
    let mut rows = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        if lineno == 0 && line.starts_with("t_end") {
            continue;
        }
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 4 {
            return Err(CliError::InputFormat(format!(
                "line {}: expected 4 comma-separated fields, got {}",
                lineno + 1,
                fields.len()
            )));
        }
        let parse = |s: &str| {
            s.trim().parse::<f64>().map_err(|_| {
                CliError::InputFormat(format!("line {}: bad number `{s}`", lineno + 1))
            })
        };
        rows.push(IncrementRow {
            t_end: parse(fields[0])?,
            dtheta: Vector3::new(parse(fields[1])?, parse(fields[2])?, parse(fields[3])?),
        });
    }
    Ok(rows)
}

/// `simulate`: write the gyro increment stream as CSV.
pub fn cmd_simulate(spec: &RunSpec, out: &Path) -> Result<(), CliError> {
    let rows = simulate_increments(spec);
    write_file(out, &increments_to_csv(&rows))
}

/// Per-interval reconstruction over the full increment stream.
#[derive(Debug)]
pub struct ReconstructionRun {
    pub series: Vec<ChebSeries3>,
    pub results: Vec<ReconstructionResult>,
    /// Accumulated tight error bound at the end of each interval.
    pub cumulative_bounds: Vec<f64>,
}

/// Fit and iterate every N-sample block of the increment stream.
pub fn run_intervals(
    spec: &RunSpec,
    rows: &[IncrementRow],
    mode: RunMode,
) -> Result<ReconstructionRun, CliError> {
    if !rows.len().is_multiple_of(spec.n_samples) {
        return Err(CliError::InputFormat(format!(
            "{} rows is not a multiple of N = {}",
            rows.len(),
            spec.n_samples
        )));
    }
    let t_n = spec.interval_duration();
    let fitter = AngularVelocityFitter::new(spec.n_samples, FitConfig { degree: spec.fit_degree });
    let iter_cfg = spec.iter_config(mode);
    let bias_sup = spec.bias.norm();

    let mut series = Vec::new();
    let mut results = Vec::new();
    let mut cumulative_bounds = Vec::new();
    let mut bound_acc = 0.0;
    for (interval, block) in rows.chunks(spec.n_samples).enumerate() {
        let batch = GyroBatch::new(
            GyroKind::Increment,
            block.iter().map(|r| r.dtheta).collect(),
            t_n,
        );
        let omega = fitter
            .fit(&batch)
            .map_err(|source| CliError::Fit { interval, source })?;
        let result = reconstruct(&omega, &iter_cfg)
            .map_err(|source| CliError::Convergence { interval, source })?;
        bound_acc += truncation_bound(&result, &iter_cfg, bias_sup).tight;
        cumulative_bounds.push(bound_acc);
        series.push(result.final_series.clone());
        results.push(result);
    }
    Ok(ReconstructionRun { series, results, cumulative_bounds })
}

/// Per-timestamp attitude error against the analytic truth.
pub struct ErrorRow {
    pub t: f64,
    pub eps_att: f64,
    /// Accumulated error bound for the interval this timestamp falls in
    /// (0 for the baseline, which has no such diagnostic).
    pub bound: f64,
}

pub struct ReconstructReport {
    pub rows: Vec<ErrorRow>,
    pub max_error: f64,
    pub mean_error: f64,
    pub track: AttitudeTrack,
    /// Empty for the baseline mode.
    pub runs: Option<ReconstructionRun>,
}

fn error_rows(
    spec: &RunSpec,
    track: &AttitudeTrack,
    bounds: impl Fn(f64) -> f64,
) -> Vec<ErrorRow> {
    let p = spec.coning_params();
    track
        .timestamps
        .iter()
        .zip(&track.quaternions)
        .map(|(&t, &q)| ErrorRow {
            t,
            eps_att: attitude_error(quat_true(&p, t), q),
            bound: bounds(t),
        })
        .collect()
}

/// Run the full reconstruction pipeline on an increment stream and compare
/// against the analytic truth.
pub fn run_reconstruct(
    spec: &RunSpec,
    rows: &[IncrementRow],
    mode: RunMode,
) -> Result<ReconstructReport, CliError> {
    let p = spec.coning_params();
    let q0 = quat_true(&p, 0.0);
    let (track, runs) = match mode {
        RunMode::Baseline => (run_baseline_track(spec, rows, q0)?, None),
        _ => {
            let run = run_intervals(spec, rows, mode)?;
            let track = chain_intervals(
                &run.series,
                spec.interval_duration(),
                q0,
                spec.n_samples * spec.upsample,
            );
            (track, Some(run))
        }
    };
    let t_n = spec.interval_duration();
    let rows_out = match &runs {
        Some(run) => error_rows(spec, &track, |t| {
            let idx = ((t / t_n).ceil() as usize).clamp(1, run.cumulative_bounds.len());
            run.cumulative_bounds[idx - 1]
        }),
        None => error_rows(spec, &track, |_| 0.0),
    };
    let max_error = rows_out.iter().map(|r| r.eps_att).fold(0.0, f64::max);
    let mean_error =
        rows_out.iter().map(|r| r.eps_att).sum::<f64>() / rows_out.len().max(1) as f64;
    Ok(ReconstructReport { rows: rows_out, max_error, mean_error, track, runs })
}

fn run_baseline_track(
    spec: &RunSpec,
    rows: &[IncrementRow],
    q0: Quaternion,
) -> Result<AttitudeTrack, CliError> {
    if !rows.len().is_multiple_of(2) {
        return Err(CliError::InputFormat(
            "two-sample baseline needs an even number of increment rows".into(),
        ));
    }
    let dt = spec.sample_dt();
    let mut state = TwoSampleState::new(q0, 2.0 * dt);
    let mut timestamps = vec![0.0];
    let mut quaternions = vec![q0];
    for (u, pair) in rows.chunks(2).enumerate() {
        state = two_sample_update(&state, pair[0].dtheta, pair[1].dtheta);
        timestamps.push((u + 1) as f64 * 2.0 * dt);
        quaternions.push(state.attitude);
    }
    Ok(AttitudeTrack { timestamps, quaternions, source: TrackSource::Baseline })
}

pub fn report_to_csv(report: &ReconstructReport) -> String {
    let mut out = String::from("t,eps_att,bound\n");
    for r in &report.rows {
        let _ = writeln!(out, "{},{},{}", fmt_f64(r.t), fmt_f64(r.eps_att), fmt_f64(r.bound));
    }
    out
}

/// Human-readable summary: overall error stats plus the first interval's
/// per-iteration diagnostics.
pub fn report_summary(report: &ReconstructReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "max attitude error {:.6e} rad, mean {:.6e} rad over {} samples",
        report.max_error,
        report.mean_error,
        report.rows.len()
    );
    if let Some(runs) = &report.runs {
        if let Some(first) = runs.results.first() {
            let _ = writeln!(
                out,
                "first interval: convergence margin {:.4e}, {} weighted terms",
                first.convergence_margin, first.term_count
            );
            for (l, rec) in first.per_iteration.iter().enumerate() {
                let _ = writeln!(
                    out,
                    "  iter {}: degree {}, |b_neglected| {:.3e}, max coeff delta {:.3e}",
                    l + 1,
                    rec.degree,
                    rec.neglected_coeff,
                    rec.max_coeff_delta
                );
            }
        }
    }
    out
}

/// `reconstruct`: read increments, run the pipeline, write the error CSV,
/// return the summary text.
pub fn cmd_reconstruct(
    spec: &RunSpec,
    input: &Path,
    mode: RunMode,
    out: &Path,
) -> Result<String, CliError> {
    let text = fs::read_to_string(input).map_err(|source| CliError::Io {
        path: input.display().to_string(),
        source,
    })?;
    let rows = parse_increments_csv(&text)?;
    let report = run_reconstruct(spec, &rows, mode)?;
    write_file(out, &report_to_csv(&report))?;
    Ok(report_summary(&report))
}

pub struct BenchEntry {
    pub mode: &'static str,
    pub mean_seconds: f64,
    pub runs: usize,
    /// Analytic weighted-term count (0 for the baseline).
    pub term_count: u64,
}

/// Time each algorithm over the same increment stream, averaged over `runs`
/// repetitions. Single-threaded by construction, so timings are comparable.
pub fn run_bench(spec: &RunSpec, runs: usize) -> Result<Vec<BenchEntry>, CliError> {
    assert!(runs >= 1);
    let rows = simulate_increments(spec);
    let time = |mode: RunMode, reps: usize| -> Result<f64, CliError> {
        let start = Instant::now();
        for _ in 0..reps {
            run_reconstruct(spec, &rows, mode)?;
        }
        Ok(start.elapsed().as_secs_f64() / reps as f64)
    };
    Ok(vec![
        BenchEntry {
            mode: "exact",
            mean_seconds: time(RunMode::Exact, runs)?,
            runs,
            term_count: weighted_term_count(
                spec.fit_degree,
                IterMode::Exact,
                spec.iterations as u32,
            ),
        },
        BenchEntry {
            mode: "truncated",
            mean_seconds: time(RunMode::Truncated, runs)?,
            runs,
            term_count: weighted_term_count(
                spec.fit_degree,
                IterMode::Truncated(spec.truncate_degree),
                spec.iterations as u32,
            ),
        },
        BenchEntry {
            mode: "baseline",
            mean_seconds: time(RunMode::Baseline, runs)?,
            runs,
            term_count: 0,
        },
    ])
}

pub fn bench_to_csv(entries: &[BenchEntry]) -> String {
    let mut out = String::from("mode,mean_seconds,runs,term_count\n");
    for e in entries {
        let _ = writeln!(out, "{},{},{},{}", e.mode, fmt_f64(e.mean_seconds), e.runs, e.term_count);
    }
    out
}

pub fn bench_table(entries: &[BenchEntry]) -> String {
    let mut out = String::from("mode       mean time (s)   weighted terms\n");
    for e in entries {
        let _ = writeln!(out, "{:<10} {:>13.6} {:>16}", e.mode, e.mean_seconds, e.term_count);
    }
    if let (Some(exact), Some(trunc)) = (
        entries.iter().find(|e| e.mode == "exact"),
        entries.iter().find(|e| e.mode == "truncated"),
    ) {
        let _ = writeln!(
            out,
            "exact/truncated wall-clock ratio: {:.1}",
            exact.mean_seconds / trunc.mean_seconds
        );
    }
    out
}

/// `bench`: run the timing comparison and write the machine-readable CSV.
pub fn cmd_bench(spec: &RunSpec, runs: usize, out: &Path) -> Result<String, CliError> {
    let entries = run_bench(spec, runs)?;
    write_file(out, &bench_to_csv(&entries))?;
    Ok(bench_table(&entries))
}
