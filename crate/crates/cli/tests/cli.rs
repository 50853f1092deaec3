use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn goppa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_goppa"))
        .args(args)
        .env("GOPPA_WORKERS", "2")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("goppa-cli-{}-{name}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn gen_encode_corrupt_decode_round_trip() {
    let dir = scratch("round-trip");
    let code = dir.join("code.txt");
    let word = dir.join("word.txt");
    let received = dir.join("received.txt");
    let code_s = code.to_str().unwrap();

    let out = goppa(&[
        "gen", "--p", "5", "--m", "2", "--t", "8", "--seed", "3", "-o", code_s,
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let out = goppa(&[
        "encode",
        "--code",
        code_s,
        "--seed",
        "4",
        "-o",
        word.to_str().unwrap(),
    ]);
    assert!(out.status.success());

    // error-free word: exactly one candidate, the word itself
    let out = goppa(&["decode", "--code", code_s, "--word", word.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("candidates 1\n"));
    let sent = fs::read_to_string(&word).unwrap();
    assert!(text.contains(&format!("codeword {}", sent.trim())));

    let out = goppa(&[
        "corrupt",
        "--code",
        code_s,
        "--word",
        word.to_str().unwrap(),
        "--w",
        "3",
        "--dist",
        "uniform",
        "--seed",
        "5",
        "-o",
        received.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    for chien in [false, true] {
        let mut args = vec![
            "decode",
            "--code",
            code_s,
            "--word",
            received.to_str().unwrap(),
        ];
        if chien {
            args.push("--chien");
        }
        let out = goppa(&args);
        assert!(out.status.success());
        assert!(stdout(&out).contains(&format!("codeword {}", sent.trim())));
    }
    fs::remove_dir_all(dir).ok();
}

#[test]
fn gen_rejects_too_large_degree() {
    let out = goppa(&["gen", "--p", "3", "--m", "2", "--t", "5"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("not positive"));
}

#[test]
fn usage_errors_exit_nonzero() {
    assert!(!goppa(&["table1", "--rows", "3,3"]).status.success());
    assert!(!goppa(&["frobnicate"]).status.success());
    assert!(
        !goppa(&["decode", "--code", "/nonexistent/code", "--word", "-"])
            .status
            .success()
    );
}

#[test]
fn table1_block_has_three_rows_and_is_deterministic() {
    let args = [
        "table1", "--rows", "3,3,8", "--trials", "30", "--seed", "42",
    ];
    let a = goppa(&args);
    assert!(a.status.success());
    let text = stdout(&a);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "p,m,t,w,trials,successes,observed,predicted,ci_low,ci_high"
    );
    let ws: Vec<&str> = lines[1..4]
        .iter()
        .map(|l| l.split(',').nth(3).unwrap())
        .collect();
    assert_eq!(ws, ["8", "7", "6"]);
    assert!(lines[4].starts_with("# seed=42 version="));
    assert_eq!(lines.len(), 5);
    assert_eq!(stdout(&goppa(&args)), text);
}

#[test]
fn binary_sweep_succeeds_everywhere() {
    let out = goppa(&[
        "sweep", "--p", "2", "--m", "4", "--t", "3", "--trials", "50", "--seed", "1",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let row = text.lines().nth(1).unwrap();
    assert!(row.starts_with("2,4,3,3,50,50,1.000000"));
}

#[test]
fn alternant_probe_line() {
    let out = goppa(&[
        "alternant-probe",
        "--p",
        "2",
        "--m",
        "2",
        "--r",
        "4",
        "--trials",
        "100",
        "--seed",
        "7",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let fields: Vec<&str> = text.split_whitespace().collect();
    assert_eq!(fields.len(), 9);
    assert_eq!(&fields[..4], ["2", "2", "4", "100"]);
    assert_eq!(fields[6], "0.062500");
}
