//! End-to-end checks of the `eamdp` binary: exit codes, file output, and
//! output shape.

use std::io::Write;
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_eamdp");
const FIXTURES: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures");

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn stdout_lines(output: &Output) -> Vec<String> {
    String::from_utf8_lossy(&output.stdout)
        .lines()
        .map(str::to_owned)
        .collect()
}

#[test]
fn sweep_csv_has_header_comment_columns_and_rows() {
    let out = run(&["two-site", "--sweep", "gamma", "0", "0.9", "10"]);
    assert_eq!(out.status.code(), Some(0));
    let lines = stdout_lines(&out);
    assert!(lines[0].starts_with("# ea-mdp sweep kind=two_site"));
    assert!(lines[1].starts_with("# config {\"kind\":\"two_site\""));
    assert_eq!(lines[2], "gamma,v_s1,v_s2,fingerprint,iterations");
    let data: Vec<&String> = lines.iter().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(data.len(), 1 + 10);
    // Single action, single policy: the sweep footer reports no transitions.
    assert!(lines.last().unwrap().starts_with("# transitions none"));
}

#[test]
fn negative_sweep_bounds_parse() {
    let out = run(&["two-site", "--sweep", "reward2", "-3", "3", "7"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let lines = stdout_lines(&out);
    assert!(lines.iter().any(|l| l.starts_with("-3.00000000000e0,")));
}

#[test]
fn output_flag_writes_the_same_bytes_as_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.csv");
    let args = ["lattice", "--sweep", "phi2", "0", "3.14159", "5"];
    let to_stdout = run(&args);
    assert_eq!(to_stdout.status.code(), Some(0));

    let mut with_output: Vec<&str> = args.to_vec();
    let path_str = path.to_str().unwrap();
    with_output.extend(["--output", path_str]);
    let to_file = run(&with_output);
    assert_eq!(to_file.status.code(), Some(0));
    assert!(to_file.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), to_stdout.stdout);
}

#[test]
fn two_dimensional_sweeps_emit_the_full_grid() {
    let out = run(&[
        "lattice", "--sweep2d", "phi1", "0", "6.283185307179586", "5", "phi2", "0",
        "6.283185307179586", "4",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let lines = stdout_lines(&out);
    assert_eq!(lines[2], "phi1,phi2,v_start,fingerprint,iterations");
    let data: Vec<&String> = lines.iter().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(data.len(), 1 + 5 * 4);
}

#[test]
fn missing_config_is_a_config_error() {
    let out = run(&["qlearn", "--config", "/no/such/file.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("file.json"));
}

#[test]
fn schema_violations_exit_2_and_name_the_key() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, r#"{{ "kind": "lattice", "gama": 0.5 }}"#).unwrap();
    let out = run(&["validate", "--config", file.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("gama"));
}

#[test]
fn invariant_violations_exit_2_with_the_magnitude() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(
        file,
        r#"{{ "kind": "two_site", "c1": [[1, 0], [1, 0], [0, 0]] }}"#
    )
    .unwrap();
    let out = run(&["validate", "--config", file.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("c1") && stderr.contains("2"), "{stderr}");
}

#[test]
fn kind_mismatch_for_the_lattice_subcommand_exits_2() {
    let out = run(&[
        "lattice",
        "--config",
        &format!("{FIXTURES}/two_site_fig1.json"),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unreachable_tolerance_is_a_solver_failure() {
    // At gamma this close to 1, the sweep tolerance is unreachable within
    // the iteration cap.
    let out = run(&["two-site", "--gamma", "0.9999999"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("0.9999999"));
}

#[test]
fn validate_accepts_the_bundled_fixtures() {
    for fixture in ["two_site_fig1.json", "lattice_fig3.json"] {
        let out = run(&["validate", "--config", &format!("{FIXTURES}/{fixture}")]);
        assert_eq!(out.status.code(), Some(0), "{fixture}");
        let text = String::from_utf8_lossy(&out.stdout);
        assert!(text.contains("unit_norms=true"));
        assert!(text.contains("complete=true"));
        assert!(text.trim_end().ends_with("ok"));
    }
}

#[test]
fn qlearn_zero_episodes_emits_header_and_footers_only() {
    let out = run(&[
        "qlearn",
        "--config",
        &format!("{FIXTURES}/lattice_fig3.json"),
        "--episodes",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let lines = stdout_lines(&out);
    let data: Vec<&String> = lines.iter().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(data, vec!["episode,steps,undiscounted_return,discounted_return"]);
    assert!(lines
        .iter()
        .any(|l| l.starts_with("# oracle_agreement_ratio")));
}

#[test]
fn qlearn_reports_full_oracle_agreement_on_the_bundled_lattice() {
    let out = run(&[
        "qlearn",
        "--config",
        &format!("{FIXTURES}/lattice_fig3.json"),
        "--episodes",
        "4000",
        "--seed",
        "11",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let lines = stdout_lines(&out);
    let ratio_line = lines
        .iter()
        .find(|l| l.starts_with("# oracle_agreement_ratio"))
        .expect("footer present");
    assert!(
        ratio_line.ends_with("1.00000000000e0"),
        "ratio line: {ratio_line}"
    );
}
