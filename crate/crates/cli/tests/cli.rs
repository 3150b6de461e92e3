//! End-to-end runs of the `frameq` binary.

use std::f64::consts::PI;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use frame_equiv::{random_transform, random_unit_frame, Frame};
use frame_equiv_cli::{read_frame, read_witness, write_frame};

fn frameq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_frameq"))
        .args(args)
        .output()
        .expect("failed to launch frameq")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("terminated by signal")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn save(dir: &Path, name: &str, frame: &Frame) -> PathBuf {
    let path = dir.join(name);
    write_frame(frame, &path).unwrap();
    path
}

fn f0() -> Frame {
    Frame::from_angles(&(1..=4).map(|i| i as f64 * PI / 4.0).collect::<Vec<_>>()).unwrap()
}

fn g0() -> Frame {
    Frame::from_angles(&[0.0, PI / 6.0, PI / 2.0, 2.0 * PI / 3.0]).unwrap()
}

#[test]
fn tight_frames_are_not_equivalent() {
    let dir = tempfile::tempdir().unwrap();
    let f = save(dir.path(), "f0.json", &f0());
    let g = save(dir.path(), "g0.json", &g0());

    let out = frameq(&["check", s(&f), s(&g)]);
    assert_eq!(code(&out), 1, "{}", stdout(&out));

    let out = frameq(&["check", s(&f), s(&g), "--method", "innerprod"]);
    assert_eq!(code(&out), 1);
    let text = stdout(&out);
    assert!(text.contains("certificate: abs-gram-mismatch"), "{text}");
    assert!(text.contains("multisets differ"), "{text}");

    let out = frameq(&["potential", "--p", "2", "--p", "4", s(&g)]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("p=2 potential=2.0000000000000"), "{text}");
    assert!(text.contains("p=4 potential=1.2500000000000"), "{text}");
}

#[test]
fn planar_equivalence_uses_the_angle_method() {
    let dir = tempfile::tempdir().unwrap();
    let f = random_unit_frame(2, 7, 1).unwrap();
    let g = random_transform(2, 7, 2).apply(&f).unwrap();
    let (pf, pg) = (save(dir.path(), "f.json", &f), save(dir.path(), "g.json", &g));
    let out = frameq(&["check", s(&pf), s(&pg)]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("certificate: angle-canonical"));
}

#[test]
fn large_matches_stay_conjectural() {
    let dir = tempfile::tempdir().unwrap();
    let f = random_unit_frame(5, 20, 3).unwrap();
    let g = random_transform(5, 20, 4).apply(&f).unwrap();
    let (pf, pg) = (save(dir.path(), "f.json", &f), save(dir.path(), "g.json", &g));
    let out = frameq(&["check", s(&pf), s(&pg)]);
    assert_eq!(code(&out), 2);
    let text = stdout(&out);
    assert!(text.contains("certificate: conjecture-1"), "{text}");
    assert!(text.contains("method: innerprod\n"), "{text}");
}

#[test]
fn small_matches_escalate_to_the_oracle() {
    let dir = tempfile::tempdir().unwrap();
    let f = random_unit_frame(3, 6, 5).unwrap();
    let g = random_transform(3, 6, 6).apply(&f).unwrap();
    let (pf, pg) = (save(dir.path(), "f.json", &f), save(dir.path(), "g.json", &g));
    let out = frameq(&["check", s(&pf), s(&pg)]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("method: innerprod -> oracle"), "{text}");
    assert!(text.contains("certificate: oracle-witness"), "{text}");
}

#[test]
fn gen_transform_check_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let (a, a2, b, w) = (d.join("a.json"), d.join("a2.json"), d.join("b.json"), d.join("w.json"));

    assert_eq!(code(&frameq(&["gen", "--dim", "2", "--count", "3", "--seed", "1", "--out", s(&a)])), 0);
    assert_eq!(code(&frameq(&["gen", "--dim", "2", "--count", "3", "--seed", "1", "--out", s(&a2)])), 0);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&a2).unwrap());

    let out = frameq(&["transform", "--in", s(&a), "--seed", "2", "--out", s(&b), "--witness", s(&w)]);
    assert_eq!(code(&out), 0);
    assert_eq!(code(&frameq(&["check", s(&a), s(&b)])), 0);
    assert_eq!(code(&frameq(&["check", s(&a), s(&b), "--method", "innerprod"])), 0);
    assert_eq!(code(&frameq(&["check", s(&a), s(&b), "--method", "oracle"])), 0);

    let f = read_frame(&a, 1e-9).unwrap();
    let g = read_frame(&b, 1e-9).unwrap();
    let t = read_witness(&w).unwrap();
    assert!(t.apply(&f).unwrap().max_abs_diff(&g).unwrap() <= 1e-9);
}

#[test]
fn error_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let f3 = save(d, "f3.json", &random_unit_frame(3, 4, 0).unwrap());
    let f2 = save(d, "f2.json", &random_unit_frame(2, 4, 0).unwrap());

    assert_eq!(code(&frameq(&["frobnicate"])), 64);
    assert_eq!(code(&frameq(&["check", s(&f3), s(&f3), "--method", "fast"])), 64);
    assert_eq!(code(&frameq(&["check", s(&f3), s(&f3), "--method", "angle"])), 64);
    assert_eq!(code(&frameq(&["check", s(&f3), s(&f2)])), 65);
    assert_eq!(code(&frameq(&["--help"])), 0);

    let bad = d.join("bad.json");
    std::fs::write(&bad, r#"{"dim": 2, "count": 2, "vectors": [[1, 0], [2, 0]]}"#).unwrap();
    let out = frameq(&["check", s(&bad), s(&f2)]);
    assert_eq!(code(&out), 65);
    assert!(String::from_utf8_lossy(&out.stderr).contains("vector 2 has norm 2"));

    let garbled = d.join("garbled.json");
    std::fs::write(&garbled, "{\"dim\": 2,").unwrap();
    assert_eq!(code(&frameq(&["check", s(&garbled), s(&f2)])), 65);

    assert_eq!(code(&frameq(&["check", s(&d.join("missing.json")), s(&f2)])), 70);
    assert_eq!(code(&frameq(&["potential", "--p", "-1", s(&f2)])), 64);
    assert_eq!(code(&frameq(&["gen", "--dim", "3", "--count", "2", "--out", s(&d.join("x"))])), 64);
}

#[test]
fn bench_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("bench.csv");
    let gp = dir.path().join("bench.dat");
    let out = frameq(&[
        "bench", "--dims", "2", "--counts", "3:6:3", "--trials", "4", "--seed", "7", "--out", s(&out_path),
        "--gnuplot", s(&gp),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let csv = std::fs::read_to_string(&out_path).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("method,dim,count,trial,seed,equivalent,elapsed_micros"));
    assert_eq!(lines.count(), 2 * 4 * 3);

    let summary = std::fs::read_to_string(dir.path().join("bench.csv.summary.csv")).unwrap();
    assert!(summary.starts_with("method,dim,count,pairs,mean_micros,median_micros\n"));
    assert!(gp.exists());

    let out = frameq(&["bench", "--dims", "5", "--counts", "3", "--out", s(&out_path)]);
    assert_eq!(code(&out), 64);
}

#[test]
fn search_reports_counts() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("found");
    let out = frameq(&["search", "--trials", "200", "--seed", "3", "--out", s(&out_dir)]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.starts_with("trials: 200\n"), "{text}");
    assert!(text.contains("match but not equivalent: 0"), "{text}");
    assert!(!out_dir.exists());

    assert_eq!(code(&frameq(&["search", "--shapes", "3by4"])), 64);
    assert_eq!(code(&frameq(&["search", "--shapes", "3x9", "--trials", "2"])), 64);
}
