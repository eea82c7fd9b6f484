use std::process::{Command, Output};

fn heightlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_heightlab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn text(bytes: &[u8]) -> String {
    String::from_utf8_lossy(bytes).into_owned()
}

#[test]
fn gamma_subcommand_prints_table_and_verdict() {
    let out = heightlab(&["gamma", "--n", "2", "--ell", "10"]);
    assert_eq!(out.status.code(), Some(0));
    let csv = text(&out.stdout);
    assert!(csv.starts_with("#schema=1\nN,numerator,denominator,ratio\n50,"));
    assert_eq!(csv.lines().count(), 5);
    let summary = text(&out.stderr);
    assert!(
        summary.contains("verdict: PASS (margin 0.0029"),
        "{summary}"
    );
}

#[test]
fn out_flag_writes_csv_and_prints_summary() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("scan.csv");
    let out = heightlab(&["--preset", "cz-example", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let summary = text(&out.stdout);
    assert!(summary.contains("records: 120"), "{summary}");
    assert!(summary.contains("skipped (f = g = 0): 1"));
    let csv = std::fs::read_to_string(&path).unwrap();
    assert!(csv.starts_with("#schema=1\ne1,e2,u1,u2,hmax,gcdlog,ratio,skipped_reason\n"));
    // header + 121 box elements
    assert_eq!(csv.lines().count(), 2 + 121);
    assert!(csv.contains("\n0,0,1,1,,,,common_zero\n"));
    let row55 = csv.lines().find(|l| l.starts_with("5,5,32,32,")).unwrap();
    assert!(row55.contains(",3.4339872044851463,0.99083926"), "{row55}");
}

#[test]
fn flags_override_the_preset() {
    let out = heightlab(&["--preset", "cz-example", "scan", "--B", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(text(&out.stdout).lines().count(), 2 + 25);
}

#[test]
fn config_file_errors_name_line_and_field() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.cfg");
    std::fs::write(&path, "mode = gamma\nn = 2\nell = ten\n").unwrap();
    let out = heightlab(&["--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = text(&out.stderr);
    assert!(err.contains("line 3") && err.contains("`ell`"), "{err}");

    std::fs::write(
        &path,
        "mode = scan\nf = x - 1\ng = x^2 - 1\ngenerators = (2, 1); (1, 2)\nB = 3\nS = 2\n",
    )
    .unwrap();
    let out = heightlab(&["--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(text(&out.stderr).contains("share a nonconstant factor"));
}

#[test]
fn invalid_input_exits_2() {
    assert_eq!(heightlab(&["--preset", "nope"]).status.code(), Some(2));
    assert_eq!(heightlab(&[]).status.code(), Some(2));
    assert_eq!(
        heightlab(&["gamma", "--n", "1", "--ell", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(heightlab(&["scan", "--bogus"]).status.code(), Some(2));
}

#[test]
fn oversized_box_trips_the_resource_guard() {
    let out = heightlab(&["--preset", "cz-example", "scan", "--B", "100000"]);
    assert_eq!(out.status.code(), Some(3), "{}", text(&out.stderr));
    assert!(text(&out.stderr).contains("resource guard"));
}

#[test]
fn verify_runs_the_suite() {
    let out = heightlab(&["verify", "--samples", "100"]);
    assert_eq!(out.status.code(), Some(0), "{}", text(&out.stderr));
    let csv = text(&out.stdout);
    assert!(csv.starts_with("#schema=1\ncheck,samples,failures,passed\n"));
    assert!(csv.lines().skip(2).all(|l| l.ends_with(",0,true")), "{csv}");
}

#[test]
fn heights_table_matches_the_worked_example() {
    let out = heightlab(&["heights", "--points", "[5:25:1]", "--Y", "X; Y"]);
    assert_eq!(out.status.code(), Some(0));
    let csv = text(&out.stdout);
    let ln5 = 5f64.ln().to_string();
    assert!(
        csv.contains(&format!("[5:25:1],5,{ln5},0,{ln5},{ln5}\n")),
        "{csv}"
    );
    assert!(
        csv.contains(&format!("[5:25:1],total,,0,{ln5},{ln5}\n")),
        "{csv}"
    );
}

#[test]
fn every_preset_runs() {
    for name in [
        "cz-example",
        "cz-detect-strict",
        "gamma-l1",
        "heights-example",
        "integral-triangle",
        "integral-line",
    ] {
        let out = heightlab(&["--preset", name, "--threads", "2"]);
        assert_eq!(out.status.code(), Some(0), "{name}: {}", text(&out.stderr));
    }
    let list = text(&heightlab(&["--list-presets"]).stdout);
    assert!(list.contains("cz-diagonal") && list.contains("gamma-l10"));
}

#[test]
fn csv_is_identical_across_thread_counts() {
    let a = heightlab(&["--preset", "cz-detect", "--threads", "1"]).stdout;
    let b = heightlab(&["--preset", "cz-detect", "--threads", "3"]).stdout;
    assert_eq!(a, b);
}
