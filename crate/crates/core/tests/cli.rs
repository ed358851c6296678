use std::path::Path;
use std::process::{Command, Output};

fn quadrate(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quadrate"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn last_line(out: &Output) -> String {
    stdout(out).lines().last().unwrap_or_default().to_string()
}

fn slope_after(text: &str, key: &str) -> f64 {
    let start = text
        .find(key)
        .unwrap_or_else(|| panic!("`{key}` not in {text}"))
        + key.len();
    text[start..]
        .split(|c: char| c == ' ' || c == ',')
        .next()
        .unwrap()
        .parse()
        .unwrap()
}

#[test]
fn figure1_defaults_write_two_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = quadrate(&["figure1", "--out", dir.path().to_str().unwrap()]);
    assert!(out.status.success(), "{}", stdout(&out));
    assert_eq!(last_line(&out), "RESULT: pass");
    for s in ["0.5", "1.5"] {
        let csv = std::fs::read_to_string(dir.path().join(format!("figure1_s{s}.csv"))).unwrap();
        assert!(csv.starts_with("n,E_gauss,E_cc,fit_line\n16,"));
        assert_eq!(csv.lines().count(), 25);
    }
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().filter(|l| l.starts_with("s=")).collect();
    assert!((slope_after(lines[0], "cc slope=") + 1.5).abs() <= 0.15);
    assert!((slope_after(lines[1], "cc slope=") + 2.5).abs() <= 0.15);
}

#[test]
fn figure1_s25_gauss_slope() {
    let dir = tempfile::tempdir().unwrap();
    let out = quadrate(&[
        "figure1",
        "--s",
        "2.5",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!((slope_after(&stdout(&out), "gauss slope=") + 3.5).abs() <= 0.15);
}

#[test]
fn figure1_rejects_single_point_grid() {
    let out = quadrate(&["figure1", "--n-max", "16", "--n-min", "16"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(last_line(&out), "RESULT: fail");
    assert!(stdout(&out).contains("at least 6"));
}

#[test]
fn n_max_guard() {
    let out = quadrate(&["sweep", "--n-max", "100001"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).contains("exceeds the limit 100000"));
}

#[test]
fn unknown_function_keys_rejected() {
    let out = quadrate(&["sweep", "--function", "abs_pow:s=1,xi=0.3,zeta=2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).contains("unknown key `zeta`"));
}

#[test]
fn alias_tables() {
    let out = quadrate(&["alias", "--family", "cc", "--n", "10", "--m-max", "160"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("m,j,r,measured,model,residual\n"));

    let out = quadrate(&[
        "alias", "--family", "gauss", "--n", "100", "--m-min", "200", "--m-max", "600",
    ]);
    assert!(out.status.success(), "{}", stdout(&out));

    let out = quadrate(&[
        "alias", "--family", "gauss", "--n", "10", "--m-min", "15", "--m-max", "15",
    ]);
    assert!(stdout(&out)
        .contains("\n15,,,0.0000000000000000e0,0.0000000000000000e0,0.0000000000000000e0\n"));
}

#[test]
fn bounds_reports() {
    let out = quadrate(&["bounds", "--family", "cc", "--all-n"]);
    assert!(out.status.success(), "{}", stdout(&out));
    assert!(stdout(&out).contains("n in [10, 2048]: no violations"));

    let out = quadrate(&["bounds", "--family", "gauss"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).contains("k >= 2"));

    // V far below the true variation: the bound must fail at the first n.
    let out = quadrate(&["bounds", "--function", "abs_pow:s=1,xi=0,k=1,v=0.01"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("first violation at n = 10"));
    assert_eq!(last_line(&out), "RESULT: fail");
}

#[test]
fn remez_bernstein_and_reference_dump() {
    let dir = tempfile::tempdir().unwrap();
    let dump = dir.path().join("ref.csv");
    let out = quadrate(&[
        "remez",
        "--degree",
        "64",
        "--dump-reference",
        dump.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let scaled = slope_after(&stdout(&out), "degree * E* = ");
    assert!((0.27..=0.29).contains(&scaled), "{scaled}");
    let reference = std::fs::read_to_string(&dump).unwrap();
    assert_eq!(reference.lines().count(), 1 + 66);

    let out = quadrate(&["remez", "--expect-slope", "-1"]);
    assert!(out.status.success(), "{}", stdout(&out));
}

fn files_in(dir: &Path) -> Vec<(String, String)> {
    let mut files: Vec<_> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (
                e.file_name().to_string_lossy().into_owned(),
                std::fs::read_to_string(e.path()).unwrap(),
            )
        })
        .collect();
    files.sort();
    files
}

#[test]
fn output_is_deterministic() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for dir in [&a, &b] {
        let d = dir.path().to_str().unwrap();
        assert!(
            quadrate(&["figure1", "--s", "1", "--n-max", "512", "--out", d])
                .status
                .success()
        );
        let sweep = format!("{d}/sweep.csv");
        assert!(quadrate(&["sweep", "--s", "0.5", "--out", &sweep])
            .status
            .success());
        let gm = quadrate(&["gauss-model", "--n", "50", "--seed", "42"]);
        assert!(gm.status.success());
        std::fs::write(format!("{d}/gm.txt"), &gm.stdout).unwrap();
    }
    assert_eq!(files_in(a.path()), files_in(b.path()));
}
