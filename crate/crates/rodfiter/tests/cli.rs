//! Exercises the binary end to end: CSV outputs, determinism, and the
//! documented exit codes (0 success, 2 convergence violation, 3 bad input).

use std::fs;
use std::path::Path;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_rodfiter"))
}

#[test]
fn simulate_is_deterministic_and_well_formed() {
    let dir = tempfile::tempdir().unwrap();
    let out1 = dir.path().join("inc1.csv");
    let out2 = dir.path().join("inc2.csv");
    for out in [&out1, &out2] {
        let status = bin()
            .args(["simulate", "--duration-s", "2", "--out"])
            .arg(out)
            .status()
            .unwrap();
        assert!(status.success());
    }
    let text = fs::read_to_string(&out1).unwrap();
    assert_eq!(text, fs::read_to_string(&out2).unwrap(), "not byte-identical");
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "t_end,dtheta_x,dtheta_y,dtheta_z");
    assert_eq!(lines.len(), 201); // header + 2 s at 100 Hz
}

fn simulate_to(path: &Path) {
    let status = bin().args(["simulate", "--out"]).arg(path).status().unwrap();
    assert!(status.success());
}

#[test]
fn reconstruct_modes_from_csv() {
    let dir = tempfile::tempdir().unwrap();
    let inc = dir.path().join("inc.csv");
    simulate_to(&inc);
    for mode in ["exact", "truncated", "baseline"] {
        let err_csv = dir.path().join(format!("err_{mode}.csv"));
        let output = bin()
            .args(["reconstruct", "--mode", mode, "--in"])
            .arg(&inc)
            .arg("--out")
            .arg(&err_csv)
            .output()
            .unwrap();
        assert!(output.status.success(), "mode {mode}: {output:?}");
        let stdout = String::from_utf8(output.stdout).unwrap();
        assert!(stdout.contains("max attitude error"), "mode {mode}");
        let text = fs::read_to_string(&err_csv).unwrap();
        assert!(text.starts_with("t,eps_att,bound\n"));
        // upsampled output: 2000 samples + initial point + header
        if mode != "baseline" {
            assert_eq!(text.lines().count(), 2002);
        }
    }
}

#[test]
fn malformed_input_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let inc = dir.path().join("bad.csv");
    fs::write(&inc, "t_end,dtheta_x,dtheta_y,dtheta_z\n0.01,oops,0,0\n").unwrap();
    let status = bin()
        .args(["reconstruct", "--in"])
        .arg(&inc)
        .arg("--out")
        .arg(dir.path().join("err.csv"))
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(3));
}

#[test]
fn row_count_mismatch_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let inc = dir.path().join("short.csv");
    let mut text = String::from("t_end,dtheta_x,dtheta_y,dtheta_z\n");
    for k in 1..=13 {
        text.push_str(&format!("{},1e-3,0.0,0.0\n", k as f64 * 0.01));
    }
    fs::write(&inc, text).unwrap();
    let status = bin()
        .args(["reconstruct", "--in"])
        .arg(&inc)
        .arg("--out")
        .arg(dir.path().join("err.csv"))
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(3));
}

#[test]
fn convergence_violation_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let inc = dir.path().join("fast.csv");
    // 10 Hz sampling with a violent cone: t_N·sup|omega| far above 2
    let sim = bin()
        .args([
            "simulate",
            "--alpha-deg", "80",
            "--omega-pi", "10",
            "--rate-hz", "10",
            "--duration-s", "0.8",
            "--out",
        ])
        .arg(&inc)
        .status()
        .unwrap();
    assert!(sim.success());
    let status = bin()
        .args([
            "reconstruct",
            "--alpha-deg", "80",
            "--omega-pi", "10",
            "--rate-hz", "10",
            "--in",
        ])
        .arg(&inc)
        .arg("--out")
        .arg(dir.path().join("err.csv"))
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(2));
}

#[test]
fn bench_writes_timing_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("bench.csv");
    // short workload and few runs; timing magnitudes are not asserted here
    let output = bin()
        .args(["bench", "--runs", "2", "--duration-s", "0.24", "--out"])
        .arg(&out)
        .output()
        .unwrap();
    assert!(output.status.success());
    let text = fs::read_to_string(&out).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "mode,mean_seconds,runs,term_count");
    assert_eq!(lines.len(), 4);
    assert!(lines[1].starts_with("exact,"));
    assert!(lines[2].starts_with("truncated,"));
    assert!(lines[3].starts_with("baseline,"));
    let stdout = String::from_utf8(output.stdout).unwrap();
    assert!(stdout.contains("wall-clock ratio"));
}
