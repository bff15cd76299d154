//! End-to-end tests of the `qem` binary: subcommand output, exit codes,
//! and the external file formats.

use std::path::PathBuf;
use std::process::{Command, Output};

fn qem(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qem"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).unwrap()
}

fn tmp_path(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("qem-cli-test-{}-{name}", std::process::id()));
    p
}

#[test]
fn coin_sweep_emits_expected_rows() {
    let out = qem(&["coin", "--q-min", "0.25", "--q-max", "0.5", "--steps", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "q,c_mu,c_q");
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("2.50000000000e-1,1.00000000000e0,"));
    // q = 0.5 merges to a single state.
    assert_eq!(lines[2], "5.00000000000e-1,0.00000000000e0,0.00000000000e0");
}

#[test]
fn cloud_sweep_emits_expected_row() {
    let out = qem(&[
        "cloud",
        "--lambda-min", "0.5",
        "--lambda-max", "0.5",
        "--lambda-steps", "2",
        "--kappa", "pi/2",
        "--g", "0.5",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "lambda,kappa,g,q0,q1,p0,p1,c_mu,c_q");
    assert_eq!(lines.len(), 3);
    let fields: Vec<&str> = lines[1].split(',').collect();
    assert_eq!(fields[3], "2.50000000000e-1"); // q0 = λ/2
    assert_eq!(fields[4], "5.00000000000e-1"); // q1
    assert!(fields[5].starts_with("6.6666666666")); // p0 = 2/3
}

#[test]
fn cli_output_is_byte_identical_across_runs() {
    let args = ["cloud", "--lambda-steps", "11", "--kappa", "pi/4,pi/2", "--g", "0.3,0.7"];
    let first = qem(&args);
    let second = qem(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);

    // And --out produces the same bytes as stdout.
    let path = tmp_path("cloud.csv");
    let mut with_out: Vec<&str> = args.to_vec();
    let path_str = path.to_str().unwrap().to_string();
    with_out.extend(["--out", &path_str]);
    assert!(qem(&with_out).status.success());
    let file_bytes = std::fs::read(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(file_bytes, first.stdout);
}

#[test]
fn invalid_specs_exit_2() {
    let cases: Vec<Vec<&str>> = vec![
        vec!["coin", "--steps", "1"],
        vec!["coin", "--q-min", "-0.5"],
        vec!["coin", "--q-min", "0", "--q-max", "0.5", "--steps", "3"], // q = 0 degenerate
        vec!["cloud", "--kappa", "2.5"],
        vec!["cloud", "--g", "1.5"],
        vec!["cloud", "--kappa", "nonsense"],
        vec!["peak", "--g", "1.5"],
        vec!["infer"],
        vec!["no-such-subcommand"],
    ];
    for args in cases {
        let out = qem(&args);
        assert_eq!(out.status.code(), Some(2), "args {args:?}");
    }
}

#[test]
fn oracle_check_passes_and_perturbation_fails() {
    let out = qem(&["oracle-check"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("PASS"));

    let out = qem(&["oracle-check", "--perturb-q0", "1e-6"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL"));
}

#[test]
fn peak_reports_expected_band() {
    let out = qem(&["peak", "--g", "0.5", "--kappa", "pi/2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "g,kappa,lambda_star,c_q_star");
    let fields: Vec<&str> = lines[1].split(',').collect();
    let lambda: f64 = fields[2].parse().unwrap();
    assert!((0.1..=0.35).contains(&lambda));
}

#[test]
fn peak_flat_function_exits_1() {
    let out = qem(&["peak", "--g", "0", "--kappa", "0"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("flat function"));
}

#[test]
fn infer_round_trips_generated_coin() {
    let dump = tmp_path("machine.txt");
    let dump_str = dump.to_str().unwrap().to_string();
    let out = qem(&[
        "infer",
        "--coin", "0.2,0.6",
        "--length", "200000",
        "--seed", "5",
        "--dump-machine", &dump_str,
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "order,num_states,merge_tol,c_mu,c_q");
    let fields: Vec<&str> = lines[1].split(',').collect();
    assert_eq!(fields[0], "1");
    assert_eq!(fields[1], "2");
    let c_mu: f64 = fields[3].parse().unwrap();
    assert!((c_mu - 0.8112781244591328).abs() < 0.02);

    // The dumped tensor listing has `j r k probability` records with
    // probabilities near the generating rates.
    let listing = std::fs::read_to_string(&dump).unwrap();
    std::fs::remove_file(&dump).ok();
    let mut found_q0 = false;
    for line in listing.lines() {
        let parts: Vec<&str> = line.split_whitespace().collect();
        assert_eq!(parts.len(), 4);
        let (j, r, k) = (parts[0], parts[1], parts[2]);
        let p: f64 = parts[3].parse().unwrap();
        if (j, r, k) == ("0", "1", "1") {
            assert!((p - 0.2).abs() < 0.01);
            found_q0 = true;
        }
    }
    assert!(found_q0);
}

#[test]
fn infer_reads_sequence_files() {
    let path = tmp_path("seq.txt");
    std::fs::write(&path, "01010101010101010101\n").unwrap();
    let path_str = path.to_str().unwrap().to_string();
    let out = qem(&["infer", "--input", &path_str, "--min-count", "1"]);
    std::fs::remove_file(&path).ok();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    let fields: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    // Deterministic alternator: two states, one bit of memory.
    assert_eq!(fields[1], "2");
    assert_eq!(fields[3], "1.00000000000e0");
}

#[test]
fn infer_insufficient_data_exits_1() {
    let path = tmp_path("short-seq.txt");
    std::fs::write(&path, "0101\n").unwrap();
    let path_str = path.to_str().unwrap().to_string();
    let out = qem(&["infer", "--input", &path_str]);
    std::fs::remove_file(&path).ok();
    assert_eq!(out.status.code(), Some(1));
}
