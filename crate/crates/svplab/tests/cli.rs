//! End-to-end checks of the `svplab` binary: file formats, determinism,
//! verdicts, and exit codes.

use std::path::Path;
use std::process::{Command, Output};

fn svplab(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_svplab"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

#[test]
fn gen_is_deterministic_per_seed() {
    let dir = tempfile::tempdir().unwrap();
    let a = svplab(
        &["gen", "--n", "6", "--max-weight", "40", "--seed", "9"],
        dir.path(),
    );
    let b = svplab(
        &["gen", "--n", "6", "--max-weight", "40", "--seed", "9"],
        dir.path(),
    );
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&b));
    assert!(stdout(&a).contains("weights "));
}

#[test]
fn gen_geometric_produces_the_power_family() {
    let dir = tempfile::tempdir().unwrap();
    let out = svplab(
        &["gen", "--mode", "geometric", "--n", "4", "--p", "2", "--alpha", "1/2"],
        dir.path(),
    );
    assert!(out.status.success());
    assert!(stdout(&out).contains("weights 2 4 8 16"));
}

#[test]
fn plan_prints_reference_values() {
    let dir = tempfile::tempdir().unwrap();
    let out = svplab(&["plan", "--eps", "1/1", "--n", "10000"], dir.path());
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("p_hat 15"));
    assert!(text.contains("m 2"));
    assert!(text.contains("c 5/6"));

    let out = svplab(&["plan", "--eps", "1/2", "--n", "7"], dir.path());
    let text = stdout(&out);
    assert!(text.contains("m 4"));
    assert!(text.contains("c 9/10"));
}

#[test]
fn gen_density_mode_targets_the_weight_scale() {
    let dir = tempfile::tempdir().unwrap();
    let out = svplab(
        &["gen", "--mode", "density", "--density", "9/10", "--n", "9", "--seed", "2"],
        dir.path(),
    );
    assert!(out.status.success());
    // Bit length 10: all weights in [512, 1024).
    let text = stdout(&out);
    let weights_line = text
        .lines()
        .find(|l| l.starts_with("weights "))
        .expect("weights line");
    for token in weights_line.split_whitespace().skip(1) {
        let w: u64 = token.parse().unwrap();
        assert!((512..1024).contains(&w), "weight {w} out of scale");
    }
}

#[test]
fn plan_rejects_float_epsilon() {
    let dir = tempfile::tempdir().unwrap();
    let out = svplab(&["plan", "--eps", "0.5", "--n", "10"], dir.path());
    assert!(!out.status.success());
}

#[test]
fn reduce_then_solve_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let instance = dir.path().join("inst.ssi");
    std::fs::write(&instance, "n 2\nweights 3 5\ntarget 5\n").unwrap();
    let basis = dir.path().join("inst.basis");
    let out = svplab(
        &[
            "reduce",
            instance.to_str().unwrap(),
            "--eps",
            "1/1",
            "--out",
            basis.to_str().unwrap(),
        ],
        dir.path(),
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let written = std::fs::read_to_string(&basis).unwrap();
    assert!(written.contains("# scale 2\n"));
    assert!(written.contains("# delta_pow 12/1\n"));
    assert!(written.starts_with('#'));

    let solved = svplab(
        &["solve", basis.to_str().unwrap(), "--cap", "16"],
        dir.path(),
    );
    assert!(solved.status.success());
    let text = stdout(&solved);
    assert!(text.contains("verdict YES"));
    assert!(text.contains("norm_pow 12"));
}

#[test]
fn solve_handles_bare_bases() {
    let dir = tempfile::tempdir().unwrap();
    let basis = dir.path().join("identity.basis");
    std::fs::write(&basis, "[[1 0 0]\n[0 1 0]\n[0 0 1]]\n").unwrap();
    let out = svplab(&["solve", basis.to_str().unwrap(), "--p", "2"], dir.path());
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("norm_pow 1"));
    assert!(text.contains("vector 0 0 1"));
}

#[test]
fn depcheck_prints_the_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let instance = dir.path().join("dep.ssi");
    let mut text = String::from("n 25\nweights 1 5 9");
    for _ in 0..22 {
        text.push_str(" 0");
    }
    text.push_str("\ntarget 0\n");
    std::fs::write(&instance, text).unwrap();
    let out = svplab(
        &["depcheck", instance.to_str().unwrap(), "--p", "2", "--alpha", "1/2"],
        dir.path(),
    );
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("DEPENDENT "));
}

#[test]
fn depcheck_reports_independence() {
    let dir = tempfile::tempdir().unwrap();
    let instance = dir.path().join("indep.ssi");
    std::fs::write(&instance, "n 4\nweights 2 4 8 16\ntarget 6\n").unwrap();
    let out = svplab(
        &["depcheck", instance.to_str().unwrap(), "--p", "2", "--alpha", "1/2"],
        dir.path(),
    );
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("INDEPENDENT"));
}

#[test]
fn verify_passes_and_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let out = svplab(
        &["verify", "--count", "40", "--seed", "3", "--max-n", "6"],
        dir.path(),
    );
    assert!(out.status.success());
    assert!(stdout(&out).contains("PASS 40/40"));
}

#[test]
fn sparse_reduction_refuses_the_lattice_step() {
    let dir = tempfile::tempdir().unwrap();
    let instance = dir.path().join("inst.ssi");
    std::fs::write(&instance, "n 2\nweights 3 5\ntarget 5\n").unwrap();
    let out = svplab(
        &[
            "reduce",
            instance.to_str().unwrap(),
            "--variant",
            "sparse",
        ],
        dir.path(),
    );
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("not above"), "stderr: {err}");
}

#[test]
fn cjloss_emits_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = svplab(
        &["cjloss", "--count", "4", "--n", "6", "--bits", "9", "--seed", "5"],
        dir.path(),
    );
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "density,below_threshold,solvable,embedded_norm_pow,embedded_in_lattice,recovered,degenerate"
    );
    assert_eq!(lines.count(), 4);
    // Planted targets: every line reports a solvable instance with its
    // embedding confirmed inside the lattice.
    for line in text.lines().skip(1) {
        assert!(line.contains(",true,"), "line: {line}");
    }
}
