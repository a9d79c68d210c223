use std::fs;
use std::process::{Command, Output};

use qdarwin::measures::{discord_systemic, mutual_information};
use qdarwin::sweep::format_float;
use qdarwin::CouplingParams;

fn qdarwin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qdarwin"))
        .args(args)
        .output()
        .expect("run qdarwin")
}

fn stdout_of(args: &[&str]) -> String {
    let out = qdarwin(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "qdarwin {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

/// Parses CSV text into a header and rows of fields.
fn parse(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let header = rdr.headers().unwrap().iter().map(str::to_string).collect();
    let rows = rdr
        .records()
        .map(|r| r.unwrap().iter().map(str::to_string).collect())
        .collect();
    (header, rows)
}

fn num(s: &str) -> f64 {
    s.parse().unwrap_or_else(|_| panic!("not a number: {s:?}"))
}

#[test]
fn curve_defaults_rise_to_plateau_and_double() {
    let text = stdout_of(&["curve", "--measures", "MutualInfo"]);
    assert!(!text.contains('\r'));
    let (header, rows) = parse(&text);
    assert_eq!(header, ["m", "mutual_info"]);
    assert_eq!(rows.len(), 101);
    assert_eq!(num(&rows[0][1]), 0.0);
    assert!((num(&rows[50][1]) - 1.0).abs() < 1e-9);
    assert!((num(&rows[100][1]) - 2.0).abs() < 1e-9);
}

#[test]
fn curve_rows_are_ordered_and_reproducible() {
    let text = stdout_of(&["curve", "--measures", "HolevoFragment,HolevoSystem,MutualInfo"]);
    let (_, rows) = parse(&text);
    let pr = CouplingParams::from_c2(100, 0.5, 0.4).unwrap();
    for row in &rows {
        let (f, s, i) = (num(&row[1]), num(&row[2]), num(&row[3]));
        assert!(f <= s + 1e-9 && s <= i + 1e-9, "row {row:?}");
        let m: u32 = row[0].parse().unwrap();
        assert_eq!(row[3], format_float(mutual_information(&pr, m).unwrap()));
    }
}

#[test]
fn discord_vanishes_on_the_plateau() {
    let text = stdout_of(&["curve", "--measures", "DiscordSystemic"]);
    let (_, rows) = parse(&text);
    let pr = CouplingParams::from_c2(100, 0.5, 0.4).unwrap();
    let discord: Vec<f64> = rows.iter().map(|r| num(&r[1])).collect();
    assert!(discord[..=50].iter().all(|&d| d < 1e-10));
    assert!(discord[50..].windows(2).all(|w| w[1] >= w[0]));
    assert!(discord[100] > 0.9);
    assert_eq!(rows[99][1], format_float(discord_systemic(&pr, 99).unwrap()));
}

#[test]
fn json_matches_csv() {
    let csv_text = stdout_of(&["curve", "--N", "12", "--p", "0.3"]);
    let json_text = stdout_of(&["curve", "--N", "12", "--p", "0.3", "--format", "json"]);
    let (header, rows) = parse(&csv_text);
    let parsed: serde_json::Value = serde_json::from_str(&json_text).unwrap();
    let arr = parsed.as_array().unwrap();
    assert_eq!(arr.len(), rows.len());
    for (obj, row) in arr.iter().zip(&rows) {
        for (k, v) in header.iter().zip(row) {
            assert_eq!(obj[k].as_f64().unwrap(), num(v), "{k}");
        }
    }
}

#[test]
fn flags_override_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.json");
    fs::write(&cfg, r#"{"params": {"N": 20, "p": 0.4, "s": 0.5}, "measures": ["mutual_info"]}"#).unwrap();
    let cfg = cfg.to_str().unwrap();
    let (_, rows) = parse(&stdout_of(&["curve", "--config", cfg]));
    assert_eq!(rows.len(), 21);
    let (_, rows) = parse(&stdout_of(&["curve", "--config", cfg, "--N", "30", "--c2", "0.4"]));
    assert_eq!(rows.len(), 31);
    let pr = CouplingParams::from_c2(30, 0.4, 0.4).unwrap();
    assert_eq!(rows[7][1], format_float(mutual_information(&pr, 7).unwrap()));
}

#[test]
fn output_file_is_written() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("curve.csv");
    let out = qdarwin(&["curve", "--N", "5", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("m,mutual_info,holevo_system,holevo_fragment\n"));
    assert!(text.lines().all(|l| !l.ends_with(',')));
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| qdarwin(args).status.code();
    assert_eq!(code(&["curve", "--p", "1.5"]), Some(1));
    assert_eq!(code(&["curve", "--c2", "0.4", "--s", "0.5"]), Some(1));
    assert_eq!(code(&["curve", "--measures", "Nonsense"]), Some(1));
    assert_eq!(code(&["redundancy", "--measures", "EoF"]), Some(1));
    assert_eq!(code(&["verify", "--max-N", "15"]), Some(1));
    assert_eq!(code(&["curve", "--config", "/nonexistent/qdarwin.json"]), Some(3));
    assert_eq!(code(&["curve", "--out", "/nonexistent/dir/out.csv"]), Some(3));
    assert_eq!(code(&["bogus"]), Some(1));
    assert_eq!(code(&["--help"]), Some(0));
    let rejected = qdarwin(&["verify", "--max-N", "15"]);
    assert!(String::from_utf8_lossy(&rejected.stderr).contains("resource limit"));
}

#[test]
fn verify_small_run() {
    let a = stdout_of(&["verify", "--max-N", "6", "--samples", "25", "--seed", "3"]);
    let b = stdout_of(&["verify", "--max-N", "6", "--samples", "25", "--seed", "3"]);
    assert_eq!(a, b);
    assert!(a.ends_with("overall: PASS\n"));
    assert!(a.starts_with("qdarwin verify: seed=3 samples=25 max_N=6\n"));
}

#[test]
fn redundancy_report_and_flags() {
    let text = stdout_of(&["redundancy", "--c2-grid", "0.1,0.5,0.9", "--p-grid", "0.5,1"]);
    let (header, rows) = parse(&text);
    assert_eq!(header, ["c2", "delta", "p", "measure", "m_int", "m_cont", "R", "status"]);
    assert_eq!(rows.len(), 3 * 2 * 2);
    for row in &rows {
        if row[2] == "1" {
            assert_eq!(row[7], "plateau_degenerate");
            assert!(row[4].is_empty() && row[6].is_empty());
        } else {
            assert_eq!(row[7], "ok");
            let (m_int, m_cont) = (num(&row[4]), num(&row[5]));
            assert!(m_cont <= m_int && m_cont >= m_int - 1.0);
            assert_eq!(row[6], format_float(100.0 / m_int));
        }
    }
}

#[test]
fn redundancy_ratio_mode_is_symmetric() {
    let text = stdout_of(&["redundancy", "--mode", "ratio", "--p-grid", "0.3,0.5,0.7", "--delta", "0.2"]);
    let (header, rows) = parse(&text);
    assert_eq!(header, ["p", "delta", "ratio", "status"]);
    assert_eq!(rows[0][2], rows[2][2]);
    assert!((num(&rows[1][2]) - 0.37).abs() < 0.03);
}

#[test]
fn universality_surface() {
    let text = stdout_of(&["universality", "--p-grid", "0.1,0.5,0.9"]);
    let (header, rows) = parse(&text);
    assert_eq!(header, ["m", "p_prime", "delta_i", "delta_chi", "status"]);
    assert_eq!(rows.len(), 300);
    for row in &rows {
        if row[1] == "0.5" {
            assert_eq!((row[2].as_str(), row[3].as_str()), ("0", "0"));
        }
        if row[0] == "100" {
            assert!(num(&row[3]).abs() <= 1e-10);
        }
    }
}

#[test]
fn photon_rows() {
    let (_, rows) = parse(&stdout_of(&["photon", "--N", "40", "--p", "0.3"]));
    assert_eq!(rows.len(), 41);
    for row in &rows {
        assert_eq!(row[7], "ok");
        assert!(num(&row[5]) <= 1e-9 && num(&row[6]) <= 1e-9);
    }
    let (_, rows) = parse(&stdout_of(&["photon", "--N", "10", "--s", "1"]));
    for row in &rows {
        assert_eq!((row[2].as_str(), row[3].as_str(), row[4].as_str()), ("0", "0", "0"));
    }
    let (_, rows) = parse(&stdout_of(&["photon", "--N", "10", "--s", "0"]));
    assert!(rows.iter().all(|r| r[7] == "perfect_records" && r[4].is_empty()));
}
