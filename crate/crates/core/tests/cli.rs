use std::path::PathBuf;
use std::process::{Command, Output};

use coarsemet::text::Workspace;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn run(args: &[&str], envs: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_coarsemet"));
    cmd.args(args).env_remove("COARSEMET_MAX_GROUND").env_remove("COARSEMET_MAX_HYPERSPACE");
    for (k, v) in envs {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn space(sub: &str, extra: &[&str]) -> Output {
    let path = fixture("space.txt");
    let mut args = vec![sub, "--in", path.to_str().unwrap()];
    args.extend_from_slice(extra);
    run(&args, &[])
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn successful_commands_exit_zero_and_reload() {
    let cases: &[(&str, &[&str])] = &[
        ("check-coarse", &[]),
        ("saturate", &["--structure", "S"]),
        ("from-base", &["--structure", "Clusters", "--family", "Base"]),
        ("props", &["--metric", "d", "--set", "0,1", "--map", "squash", "--target", "dy", "--close", "swap"]),
        ("bounded-geometry", &["--metric", "d"]),
        ("hausdorff", &["--metric", "d"]),
        ("hausdorff", &["--structure", "S"]),
        ("uniformize", &["--uniform", "U"]),
    ];
    for (sub, extra) in cases {
        let out = space(sub, extra);
        assert_eq!(out.status.code(), Some(0), "{sub}: {}{}", stdout(&out), stderr(&out));
        Workspace::parse(&stdout(&out)).unwrap_or_else(|e| panic!("{sub} report reloads: {e}"));
    }
}

#[test]
fn property_failures_exit_one_with_a_witness() {
    let out = space("dominate", &["--metric", "blocks", "--other", "d"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL"));

    let out = space("uniformize", &["--uniform", "U", "--literal"]);
    assert_eq!(out.status.code(), Some(1));

    let bad = fixture("bad.txt");
    let out = run(&["check-coarse", "--in", bad.to_str().unwrap()], &[]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("the union of D and A lies in no member"));
    Workspace::parse(&stdout(&out)).unwrap();
}

#[test]
fn domination_holds_in_the_other_direction() {
    let out = space("dominate", &["--metric", "d", "--other", "blocks"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
}

#[test]
fn input_errors_exit_two_with_a_position() {
    let bad = fixture("malformed.txt");
    let out = run(&["check-coarse", "--in", bad.to_str().unwrap()], &[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("malformed.txt:4:3"), "{}", stderr(&out));

    let out = space("saturate", &["--structure", "Missing"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["check-coarse", "--in", "/nonexistent/space.txt"], &[]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["padic", "--prime", "4", "--window", "0..3"], &[]);
    assert_eq!(out.status.code(), Some(2));

    // clap usage errors share the input-error code
    let out = run(&["saturate"], &[]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn inputs_from_several_files_are_merged() {
    let dir = tempfile::tempdir().unwrap();
    let extra = dir.path().join("extra.txt");
    std::fs::write(&extra, "structure T over X generated by Far\n").unwrap();
    let path = fixture("space.txt");
    let out = run(
        &["saturate", "--in", path.to_str().unwrap(), "--in", extra.to_str().unwrap(), "--structure", "T"],
        &[],
    );
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
}

#[test]
fn environment_limits_are_honoured() {
    let path = fixture("space.txt");
    let out = run(&["check-coarse", "--in", path.to_str().unwrap()], &[("COARSEMET_MAX_GROUND", "3")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("space.txt:2:"), "{}", stderr(&out));

    let out = run(
        &["hausdorff", "--in", path.to_str().unwrap(), "--structure", "S"],
        &[("COARSEMET_MAX_HYPERSPACE", "2")],
    );
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("exceeds the configured limit 2"));
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["padic", "--prime", "2", "--window", "-8..8"],
        vec!["search-counterexample", "--n-max", "3", "--budget", "2000"],
    ] {
        let a = run(&args, &[]);
        let b = run(&args, &[]);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout);
    }
    let a = space("hausdorff", &["--metric", "d"]);
    let b = space("hausdorff", &["--metric", "d"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn reports_can_be_fed_back_in() {
    let dir = tempfile::tempdir().unwrap();
    let saved = dir.path().join("sat.txt");
    let out = space("saturate", &["--structure", "S"]);
    std::fs::write(&saved, &out.stdout).unwrap();
    let again = run(&["check-coarse", "--in", saved.to_str().unwrap(), "--metric", "S_sat"], &[]);
    assert_eq!(again.status.code(), Some(0), "{}{}", stdout(&again), stderr(&again));
}

#[test]
fn padic_accepts_rational_windows() {
    let out = run(&["padic", "--prime", "3", "--window", "1/3,3,-4/9,0"], &[]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stdout(&out).contains("Rationals"));
}
