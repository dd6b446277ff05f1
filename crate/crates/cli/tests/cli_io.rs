use std::f64::consts::FRAC_PI_2;
use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use ptq_core::pt_model::{self, PTParams};
use ptq_core::transpiler::{parse_circuit, Gate};
use ptqsim::config::parse_config;
use ptqsim::output::{Heatmap, CSV_HEADER};
use ptqsim::{execute, run, sidecar, transpile_text, CliError, Target};

fn ptqsim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ptqsim")).args(args).output().expect("binary runs")
}

fn config_in(dir: &Path, body: &str) -> String {
    format!(
        "{body}\noutput_csv = {}\noutput_pgm = {}\n",
        dir.join("out.csv").display(),
        dir.join("out.pgm").display()
    )
}

#[test]
fn theory_two_by_two_grid_is_byte_stable() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = parse_config(&config_in(dir.path(), "r_steps = 2\nt_steps = 2")).unwrap();
    run(&cfg).unwrap();
    let first = fs::read_to_string(&cfg.output_csv).unwrap();
    let lines: Vec<&str> = first.lines().collect();
    assert_eq!(lines.len(), 5);
    assert_eq!(lines[0], CSV_HEADER);
    assert!(!first.contains('\r'));
    run(&cfg).unwrap();
    assert_eq!(fs::read_to_string(&cfg.output_csv).unwrap(), first);
    let meta = fs::read_to_string(sidecar(&cfg.output_csv, ".meta")).unwrap();
    assert!(meta.contains("backend = theory"));
}

#[test]
fn csv_fields_roundtrip_to_printed_precision() {
    let cfg = parse_config("backend = transmon\nr_steps = 5\nt_steps = 9\nseed = 3").unwrap();
    let out = execute(&cfg).unwrap();
    for (line, p) in out.csv.lines().skip(1).zip(&out.points) {
        let f: Vec<&str> = line.split(',').collect();
        assert_eq!(f.len(), 11);
        let num = |s: &str| s.parse::<f64>().unwrap();
        let close = |a: f64, b: f64| (a - b).abs() <= 1e-11 * b.abs().max(1e-300);
        assert!(close(num(f[0]), p.r) && close(num(f[1]), p.t));
        assert_eq!(f[2], "transmon");
        for k in 0..3 {
            assert!(close(num(f[3 + k]), p.p_exact[k]) || p.p_exact[k] == 0.0);
        }
        assert!(close(num(f[6]), p.p0_raw) || p.p0_raw == 0.0);
        match p.p0_postselected {
            Some(v) => assert!(close(num(f[7]), v) || v == 0.0),
            None => assert_eq!(f[7], ""),
        }
        assert_eq!(f[8].parse::<u64>().unwrap(), p.postselect_kept);
        assert_eq!(f[9], "8192");
        assert_eq!(f[10], "3");
    }
}

#[test]
fn theory_heatmap_is_faithful() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = parse_config(&config_in(dir.path(), "")).unwrap();
    run(&cfg).unwrap();
    let img = Heatmap::parse_pgm(&fs::read_to_string(cfg.output_pgm.as_ref().unwrap()).unwrap()).unwrap();
    let grid = cfg.grid;
    assert_eq!((img.width, img.height), (101, 61));
    // Bottom row is r = 0; t = 0 is the first column.
    assert_eq!(img.get(60, 0), 255);
    for row in 0..img.height {
        let r = grid.r_at(img.height - 1 - row);
        for col in 0..img.width {
            let want = pt_model::return_probability(&PTParams::new(r, grid.t_at(col)).unwrap());
            let got = f64::from(img.get(row, col)) / 255.0;
            assert!((got - want).abs() <= 1.0 / 255.0 + 1e-12);
        }
    }
    let mask = fs::read_to_string(sidecar(cfg.output_pgm.as_ref().unwrap(), ".mask.csv")).unwrap();
    assert_eq!(mask, "row,col,r,t\n");
}

#[test]
fn ion_column_metadata() {
    let cfg = parse_config("backend = ion\nr_steps = 4\nt_steps = 12").unwrap();
    let out = execute(&cfg).unwrap();
    let mut lines = out.csv.lines();
    assert!(lines.next().unwrap().ends_with(",ion"));
    for (idx, line) in lines.enumerate() {
        let ion: usize = line.rsplit(',').next().unwrap().parse().unwrap();
        assert_eq!(ion, (idx % 12) % 5);
    }
    assert!(out.meta.contains("synthetic default"));
}

#[test]
fn empty_postselection_is_masked() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("all_two.txt");
    fs::write(&conf, "0 0 0\n0 0 0\n1 1 1\n").unwrap();
    let body = format!("backend = transmon\nobservable = postselected\nr_steps = 2\nt_steps = 3\nconfusion_file = {}", conf.display());
    let cfg = parse_config(&config_in(dir.path(), &body)).unwrap();
    let out = run(&cfg).unwrap();
    assert_eq!(out.heatmap.missing.len(), 6);
    assert!(out.heatmap.pixels.iter().all(|&p| p == 0));
    assert!(out.csv.lines().skip(1).all(|l| l.split(',').nth(7) == Some("")));
    let mask = fs::read_to_string(sidecar(cfg.output_pgm.as_ref().unwrap(), ".mask.csv")).unwrap();
    assert_eq!(mask.lines().count(), 7);
}

#[test]
fn transpile_examples() {
    let three = "RX 0 1 0.7\nRX 1 2 -1.3\nRX 0 1 0.7\n";
    let (text, stats) = transpile_text(three, Target::Ion).unwrap();
    assert_eq!(stats.physical_count, 5);
    assert_eq!(parse_circuit(&text).unwrap().len(), 5);

    let (text, stats) = transpile_text("", Target::Ion).unwrap();
    assert_eq!((text.as_str(), stats.physical_count, stats.virtual_count), ("", 0, 0));

    let (text, _) = transpile_text(three, Target::Transmon).unwrap();
    for g in parse_circuit(&text).unwrap().gates() {
        if let Gate::Rx { theta, .. } = g {
            assert_eq!(*theta, FRAC_PI_2);
        }
    }
    assert_eq!(transpile_text("RX 0 2 0.1", Target::Transmon).unwrap_err().exit_code(), 2);
}

#[test]
fn binary_transpile_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.txt");
    let output = dir.path().join("out.txt");
    fs::write(&input, "RX 0 1 0.7\nRX 1 2 -1.3\nRX 0 1 0.7\n").unwrap();
    let args = ["transpile", "--target", "ion", input.to_str().unwrap(), output.to_str().unwrap()];
    let res = ptqsim(&args);
    assert!(res.status.success());
    assert_eq!(String::from_utf8_lossy(&res.stdout).trim(), "physical=5 virtual=0");

    let missing = dir.path().join("nope.txt");
    let res = ptqsim(&["transpile", "--target", "ion", missing.to_str().unwrap(), output.to_str().unwrap()]);
    assert_eq!(res.status.code(), Some(1));

    let bad = dir.path().join("bad.cfg");
    fs::write(&bad, "shots = -3\n").unwrap();
    assert_eq!(ptqsim(&["run", "--config", bad.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn binary_run_with_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("o.csv");
    let cfg = dir.path().join("c.cfg");
    fs::write(&cfg, "r_steps = 2\nt_steps = 2\nseed = 1\n").unwrap();
    let res = ptqsim(&["run", "--config", cfg.to_str().unwrap(), "--backend", "ion", "--seed", "42", "--output-csv", csv.to_str().unwrap()]);
    assert!(res.status.success(), "{}", String::from_utf8_lossy(&res.stderr));
    let text = fs::read_to_string(&csv).unwrap();
    assert!(text.lines().skip(1).all(|l| l.contains(",ion,") && l.contains(",512,42,")));
}

#[test]
fn binary_dilation_check() {
    let res = ptqsim(&["dilation-check", "--n", "2", "--m", "1", "--trials", "200", "--seed", "7"]);
    assert!(res.status.success());
    let res = ptqsim(&["dilation-check", "--n", "1", "--m", "1", "--trials", "10"]);
    assert!(res.status.success());
    let res = ptqsim(&["dilation-check", "--n", "4", "--m", "0", "--trials", "1"]);
    assert_eq!(res.status.code(), Some(4));
    let stdout = String::from_utf8_lossy(&res.stdout);
    assert!(stdout.contains("trial 0: rank(1 - A†A) = 3 exceeds the 0 auxiliary dimensions"), "{stdout}");
}

#[test]
fn exit_code_mapping() {
    assert_eq!(CliError::Equivalence(1.0).exit_code(), 3);
    assert_eq!(CliError::Input("x".into()).exit_code(), 2);
}
