//! End-to-end runs of the compiled binary: the generate/condense/verify
//! pipeline over real files, output formats, determinism, and exit codes.

use std::path::Path;
use std::process::{Command, Output};

use nnthin::io::{ingest_csv, parse_csv, ResultDoc};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nnthin"))
        .args(args)
        .output()
        .expect("binary launches")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal termination")
}

fn path_str(p: &Path) -> &str {
    p.to_str().expect("temp paths are UTF-8")
}

#[test]
fn generate_condense_verify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("blobs.csv");
    let json = dir.path().join("relevant.json");

    let out = run(&[
        "generate",
        "--family",
        "gaussian-clusters",
        "--n",
        "40",
        "--labels",
        "2",
        "--seed",
        "5",
        "--output",
        path_str(&csv),
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr_of(&out));
    let data = ingest_csv(&csv).expect("generated CSV parses");
    assert_eq!(data.len(), 40);
    assert_eq!(data.dim(), 2);

    let out = run(&[
        "condense",
        "--input",
        path_str(&csv),
        "--seed",
        "3",
        "--output",
        path_str(&json),
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr_of(&out));
    let doc = ResultDoc::parse(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(doc.n, 40);
    assert_eq!(doc.seed, 3);
    assert_eq!(doc.k, doc.relevant.len());
    assert!(doc.k > 0 && doc.k < 40);
    let indices = doc.indices();
    assert!(indices.windows(2).all(|w| w[0] < w[1]), "indices ascend");
    assert!(indices.iter().all(|&i| i < 40));

    // Stdout mode emits the same document bytes as file mode.
    let out = run(&["condense", "--input", path_str(&csv), "--seed", "3"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_of(&out), std::fs::read_to_string(&json).unwrap());

    let out = run(&[
        "verify",
        "--input",
        path_str(&csv),
        "--queries",
        "500",
        "--seed",
        "7",
    ]);
    assert_eq!(code(&out), 0, "stdout: {}", stdout_of(&out));
    let text = stdout_of(&out);
    assert!(text.contains("result: PASS"), "report was: {text}");
    assert!(text.contains("condense_matches_oracle"));
}

#[test]
fn condense_is_deterministic_per_seed() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("grid.csv");
    let out = run(&[
        "generate",
        "--family",
        "grid-halfplane",
        "--n",
        "30",
        "--labels",
        "3",
        "--output",
        path_str(&csv),
    ]);
    assert_eq!(code(&out), 0);

    let first = run(&["condense", "--input", path_str(&csv), "--seed", "11"]);
    let second = run(&["condense", "--input", path_str(&csv), "--seed", "11"]);
    assert_eq!(code(&first), 0);
    assert_eq!(first.stdout, second.stdout, "same seed, same bytes");

    // A different seed may walk the expansion in another order but lands on
    // the same relevant set.
    let other = run(&["condense", "--input", path_str(&csv), "--seed", "12"]);
    assert_eq!(code(&other), 0);
    let a = ResultDoc::parse(&stdout_of(&first)).unwrap();
    let b = ResultDoc::parse(&stdout_of(&other)).unwrap();
    assert_eq!(a.indices(), b.indices());
}

#[test]
fn render_emits_svg_for_plane_data_only() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("ring.csv");
    let svg = dir.path().join("ring.svg");
    let out = run(&[
        "generate",
        "--family",
        "convex-ring",
        "--n",
        "16",
        "--labels",
        "2",
        "--output",
        path_str(&csv),
    ]);
    assert_eq!(code(&out), 0);

    let out = run(&[
        "render",
        "--input",
        path_str(&csv),
        "--output",
        path_str(&svg),
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr_of(&out));
    let text = std::fs::read_to_string(&svg).unwrap();
    assert!(text.starts_with("<svg"), "not an svg: {}", &text[..40.min(text.len())]);
    assert!(text.contains("<circle"));
    assert!(text.trim_end().ends_with("</svg>"));

    // Three-dimensional data has no picture; that is a usage error.
    let csv3 = dir.path().join("cube.csv");
    let out = run(&[
        "generate",
        "--family",
        "grid-halfplane",
        "--n",
        "27",
        "--dim",
        "3",
        "--output",
        path_str(&csv3),
    ]);
    assert_eq!(code(&out), 0);
    let out = run(&[
        "render",
        "--input",
        path_str(&csv3),
        "--output",
        path_str(&svg),
    ]);
    assert_eq!(code(&out), 2);
    assert!(stderr_of(&out).contains("error:"));
}

#[test]
fn generate_writes_csv_to_stdout() {
    let out = run(&["generate", "--family", "convex-ring", "--n", "12"]);
    assert_eq!(code(&out), 0);
    let text = stdout_of(&out);
    assert_eq!(text.lines().count(), 12);
    let data = parse_csv(&text).expect("stdout CSV parses");
    assert_eq!(data.len(), 12);

    // The ring family lives in the plane; asking for 3-D is refused.
    let out = run(&[
        "generate",
        "--family",
        "convex-ring",
        "--n",
        "12",
        "--dim",
        "3",
    ]);
    assert_eq!(code(&out), 2);
    assert!(stderr_of(&out).contains("error:"));
}

#[test]
fn bench_prints_table_and_slope() {
    let out = run(&[
        "bench",
        "--sizes",
        "60,120",
        "--reps",
        "1",
        "--family",
        "grid-halfplane",
        "--labels",
        "2",
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr_of(&out));
    let text = stdout_of(&out);
    assert!(text.contains("log-log slope:"), "output was: {text}");
    assert!(text.lines().count() >= 3);

    // One size, no slope.
    let out = run(&[
        "bench",
        "--sizes",
        "60",
        "--reps",
        "1",
        "--family",
        "grid-halfplane",
    ]);
    assert_eq!(code(&out), 0);
    assert!(!stdout_of(&out).contains("log-log slope:"));
}

#[test]
fn usage_parse_and_io_problems_exit_2() {
    let dir = tempfile::tempdir().unwrap();

    let out = run(&["condense", "--no-such-flag"]);
    assert_eq!(code(&out), 2);

    let out = run(&[
        "condense",
        "--input",
        path_str(&dir.path().join("missing.csv")),
    ]);
    assert_eq!(code(&out), 2);
    assert!(stderr_of(&out).contains("error:"));

    let dup = dir.path().join("dup.csv");
    std::fs::write(&dup, "0,0,A\n0,0,B\n1,1,B\n").unwrap();
    let out = run(&["condense", "--input", path_str(&dup)]);
    assert_eq!(code(&out), 2);
    assert!(
        stderr_of(&out).contains("identical coordinates"),
        "stderr: {}",
        stderr_of(&out)
    );

    let ok = dir.path().join("ok.csv");
    std::fs::write(&ok, "0,0,A\n1,0,B\n2,1,A\n0,2,B\n").unwrap();
    let out = run(&["verify", "--input", path_str(&ok), "--queries", "0"]);
    assert_eq!(code(&out), 2);
    let out = run(&["verify", "--input", path_str(&ok), "--inflate=-3"]);
    assert_eq!(code(&out), 2);
    let out = run(&[
        "condense",
        "--input",
        path_str(&ok),
        "--eps-geom",
        "nope",
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn verify_exits_1_when_checks_fail() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("blobs.csv");
    let out = run(&[
        "generate",
        "--family",
        "gaussian-clusters",
        "--n",
        "24",
        "--labels",
        "2",
        "--seed",
        "2",
        "--output",
        path_str(&csv),
    ]);
    assert_eq!(code(&out), 0);

    // A clearance demand far above any achievable witness makes the wall
    // oracle reject every wall, so its relevant set goes empty and the
    // comparison checks report failures.
    let out = run(&[
        "verify",
        "--input",
        path_str(&csv),
        "--queries",
        "200",
        "--eps-strict",
        "1000000",
    ]);
    assert_eq!(code(&out), 1, "stdout: {}", stdout_of(&out));
    let text = stdout_of(&out);
    assert!(text.contains("result: FAIL"), "report was: {text}");
    assert!(text.contains("condense_matches_oracle"));
}
