use std::process::{Command, Output};

use ffgenus::genus::GenusReport;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ffgenus"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn fixture(name: &str) -> String {
    std::fs::read_to_string(format!(
        "{}/tests/fixtures/{name}",
        env!("CARGO_MANIFEST_DIR")
    ))
    .unwrap()
}

const EX51: &[&str] = &[
    "genus", "--field", "3", "--n", "2", "--gamma", "1", "--poly", "T^3+2T+1",
];

#[test]
fn first_example_matches_fixtures() {
    assert_eq!(stdout(EX51), fixture("ex5_1.txt"));
    let mut json = EX51.to_vec();
    json.extend(["--format", "json"]);
    assert_eq!(stdout(&json), fixture("ex5_1.json"));
}

#[test]
fn third_example_constants() {
    let out = stdout(&[
        "genus",
        "--field",
        "5",
        "--n",
        "3",
        "--gamma",
        "1",
        "--poly",
        "T*(T^2+T+1)",
        "--base-constants",
        "2",
        "--format",
        "json",
    ]);
    let r = GenusReport::from_json(&out).unwrap();
    assert_eq!(r.exact_field.unwrap().constants_deg, Some(2));
    assert_eq!(out, fixture("ex5_3p_s2.json"));
}

#[test]
fn json_round_trips_for_fixtures() {
    for name in [
        "ex5_1.json",
        "ex5_3.json",
        "ex5_3p_s1.json",
        "ex5_3p_s2.json",
    ] {
        let text = fixture(name);
        let r = GenusReport::from_json(&text).unwrap();
        assert_eq!(r.to_json(), text, "{name}");
    }
}

#[test]
fn empty_ramification_profile() {
    let dir = std::env::temp_dir().join(format!("ffgenus-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("profile.json");
    std::fs::write(
        &path,
        r#"{"finite": [], "infinity": [{"e": 1, "t": 2}], "geometric": false}"#,
    )
    .unwrap();
    let out = stdout(&["genus", "--field", "3", "--profile", path.to_str().unwrap()]);
    assert!(out.contains("K_ge = K·F_{q^{t_0}} = K·F_9"), "{out}");
    std::fs::write(&path, r#"{"finite": [], "bogus": 1}"#).unwrap();
    assert_eq!(
        run(&["genus", "--field", "3", "--profile", path.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn small_commands() {
    assert_eq!(stdout(&["phi", "--field", "3", "--poly", "T^2"]), "6\n");
    assert_eq!(
        stdout(&["factor", "--field", "5", "--poly", "X^3-1"]),
        "(T+4)*(T^2+T+1)\n"
    );
    assert_eq!(
        stdout(&["carlitz", "--field", "3", "--poly", "T^2"]),
        "X^9+(T^3+T)*X^3+T^2*X\n"
    );
    let a = stdout(&[
        "analyze",
        "--field",
        "3",
        "--n",
        "10",
        "--gamma",
        "-1",
        "--poly",
        "T^2*(T^2-T-1)",
    ]);
    assert!(a.contains("infinity: e = 5, t = [2]"), "{a}");
    assert!(a.contains("t_0 = 2"));
}

#[test]
fn oracle_verify_both_spellings() {
    let a = stdout(&["oracle-verify"]);
    let b = stdout(&["oracle", "verify"]);
    assert_eq!(a, b);
    assert_eq!(a.lines().filter(|l| l.starts_with("PASS")).count(), 5);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(
        run(&["genus", "--field", "5", "--n", "5", "--gamma", "1", "--poly", "T"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        run(&["genus", "--field", "3", "--n", "2", "--gamma", "0", "--poly", "T"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        run(&["genus", "--field", "6", "--n", "2", "--gamma", "1", "--poly", "T"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["phi", "--field", "3", "--poly", "T+"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["genus", "--field", "3"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    let err = run(&["phi", "--field", "3", "--poly", "T+"]);
    assert_eq!(String::from_utf8_lossy(&err.stderr).lines().count(), 1);
}
