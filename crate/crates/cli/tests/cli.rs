use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use polar_rscl::channel::{rows_from_csv, ResultRow};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_polar-rscl"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_with_stdin(args: &[&str], stdin: &str) -> Output {
    let mut child = bin().args(args).stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped()).spawn().unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    assert!(o.status.success(), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn body_lines(text: &str) -> Vec<&str> {
    text.lines().filter(|l| !l.starts_with('#')).collect()
}

#[test]
fn latency_of_1024_with_four_bit_decisions() {
    let out = stdout(&run(&["latency", "--n", "1024", "--kbits", "2"]));
    assert!(out.starts_with("# manifest {"));
    assert!(out.contains("latency n=1024 K=2: 1022 cycles"), "{out}");
    let json: serde_json::Value = serde_json::from_str(&stdout(&run(&["latency", "--n", "1024", "--kbits", "2", "--format", "json"]))).unwrap();
    assert_eq!(json["latency"]["cycles"], 1022);
    assert_eq!(json["memory"]["banks"].as_array().unwrap().iter().find(|b| b["name"] == "metrics").unwrap()["words"], 512);
}

#[test]
fn latency_timetable_for_n4() {
    let out = stdout(&run(&["latency", "--n", "4", "--kbits", "1", "--list", "2", "--timetable"]));
    assert!(out.contains("cycle,stage-1,stage-2,decision\n1,f,,\n2,,mc&zf,\n3,,s,u1 u2\n"), "{out}");
}

#[test]
fn sorter_depth_for_32_inputs() {
    let out = stdout(&run(&["sorter", "--s", "5"]));
    assert!(out.lines().any(|l| l == "depth 11"), "{out}");
    let json: serde_json::Value = serde_json::from_str(&stdout(&run(&["sorter", "--s", "9", "--format", "json"]))).unwrap();
    assert_eq!(json["depth"], 37);
}

#[test]
fn construct_encode_decode_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let frozen = dir.path().join("code.frozen");
    stdout(&run(&["construct", "--n", "16", "--k", "8", "-o", frozen.to_str().unwrap()]));
    let frozen = frozen.to_str().unwrap();

    let info = "10110011";
    let encoded = stdout(&run_with_stdin(&["encode", "--frozen", frozen, "--info"], info));
    let x = body_lines(&encoded)[0].to_owned();
    assert_eq!(x.len(), 16);

    let mut channel = String::from("n=16\n");
    for b in x.chars() {
        channel.push_str(if b == '0' { "1\n" } else { "-1\n" });
    }
    let chan = dir.path().join("y.txt");
    std::fs::write(&chan, channel).unwrap();
    let trace = dir.path().join("trace.json");
    for (list, kbits, domain) in [("1", "0", "log_exact"), ("4", "2", "log_approx"), ("2", "1", "fixed6"), ("8", "3", "likelihood")] {
        let out = stdout(&run(&[
            "decode", "--frozen", frozen, "--input", chan.to_str().unwrap(), "--list", list, "--kbits", kbits,
            "--domain", domain, "--ebn0", "2", "--format", "json", "--trace", trace.to_str().unwrap(),
        ]));
        let json: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(json["info"], info, "L={list} K={kbits} {domain}");
        let t: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&trace).unwrap()).unwrap();
        assert_eq!(t["cycles"], json["cycles"]);
    }

    // the full message u re-encodes to the same codeword
    let text = stdout(&run(&["decode", "--frozen", frozen, "--input", chan.to_str().unwrap(), "--list", "2"]));
    let u = body_lines(&text)[0].to_owned();
    let again = stdout(&run_with_stdin(&["encode", "--frozen", frozen], &u));
    assert_eq!(body_lines(&again)[0], x);
}

fn simulate(dir: &Path, format: &str) -> String {
    let out = dir.join(format!("sim.{format}"));
    stdout(&run(&[
        "simulate", "--n", "64", "--k", "32", "--list", "1,2", "--kbits", "0,2", "--domain", "log_approx",
        "--ebn0", "0,2", "--frames", "200", "--seed", "9", "--format", format, "-o", out.to_str().unwrap(),
    ]));
    std::fs::read_to_string(out).unwrap()
}

#[test]
fn simulate_csv_and_json_agree() {
    let dir = tempfile::tempdir().unwrap();
    let csv = simulate(dir.path(), "csv");
    assert!(csv.starts_with("# manifest {"));
    let from_csv = rows_from_csv(&csv).unwrap();
    assert_eq!(from_csv.len(), 8);
    let json: serde_json::Value = serde_json::from_str(&simulate(dir.path(), "json")).unwrap();
    assert_eq!(json["manifest"]["seed"], 9);
    let from_json: Vec<ResultRow> = serde_json::from_value(json["results"].clone()).unwrap();
    assert_eq!(from_csv, from_json);
    // deterministic given the manifest
    assert_eq!(simulate(dir.path(), "csv"), csv);
}

#[test]
fn simulate_from_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("sim.json");
    std::fs::write(
        &cfg,
        r#"{"n": 64, "k": 32, "list": [2], "kbits": [1], "domain": "log_exact", "ebn0": [1.0], "frames": 50, "seed": 3}"#,
    )
    .unwrap();
    let out = stdout(&run(&["simulate", "--config", cfg.to_str().unwrap()]));
    let rows = rows_from_csv(&out).unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0].decoder, "L2K1-log_exact");
    assert_eq!(rows[0].frames, 50);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["simulate", "--n", "64", "--k", "32", "--ebn0", "1"]).status.code(), Some(1));
    assert_eq!(run(&["decode", "--list", "2"]).status.code(), Some(1));
    assert_eq!(run(&["latency", "--n", "1000", "--kbits", "1"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("y.txt");
    std::fs::write(&bad, "n=4\n1\n1\n").unwrap();
    assert_eq!(run(&["decode", "--n", "4", "--k", "2", "--input", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run_with_stdin(&["encode", "--n", "4", "--k", "2"], "0111").status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}
