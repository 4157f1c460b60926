use assert_cmd::Command;

use mersq_core::SolutionSet;
use mersq_core::solver::{EquationInstance, classify};

fn mersq() -> Command {
    Command::cargo_bin("mersq").expect("binary builds")
}

#[test]
fn solve_example_1_text() {
    let assert = mersq()
        .args(["solve", "--p", "13", "--q", "3", "--l", "3", "--positive-only"])
        .assert()
        .success();
    let stdout = String::from_utf8(assert.get_output().stdout.clone()).unwrap();
    assert_eq!(
        stdout,
        "equation: 8191^x + 8^y = (3z)^2\n\
         instance: p=13, q=3, l=3\n\
         solutions (positive only):\n\
         \x20 (x, y, z) = (2, 5, 2731)  [T2-CaseIII]\n"
    );
}

#[test]
fn solve_json_round_trips_to_library_solution_set() {
    let assert = mersq()
        .args(["solve", "--p", "13", "--q", "3", "--l", "3", "--format", "json"])
        .assert()
        .success();
    let stdout = assert.get_output().stdout.clone();

    // byte-for-byte against the committed golden file
    let golden = include_bytes!("golden/solve_p13_q3_l3.json");
    assert_eq!(stdout, golden, "JSON output drifted from the golden file");

    // and parse back into the exact library result
    let parsed: SolutionSet = serde_json::from_slice(&stdout).unwrap();
    let local = classify(&EquationInstance::from_exponents(13, 3, 3).unwrap(), false);
    assert_eq!(parsed, local);
}

#[test]
fn solve_example_2_reports_reason() {
    let assert = mersq()
        .args(["solve", "--p", "3", "--q", "2", "--l", "7"])
        .assert()
        .success();
    let stdout = String::from_utf8(assert.get_output().stdout.clone()).unwrap();
    assert!(stdout.contains("no solutions"));
    assert!(stdout.contains("l = 7 does not divide 2^p + 1 = 9"));
}

#[test]
fn mp_value_form_back_solves() {
    let by_value = mersq()
        .args(["solve", "--mp", "8191", "--mq", "7", "--l", "3", "--format", "json"])
        .assert()
        .success();
    let by_exponent = mersq()
        .args(["solve", "--p", "13", "--q", "3", "--l", "3", "--format", "json"])
        .assert()
        .success();
    assert_eq!(
        by_value.get_output().stdout,
        by_exponent.get_output().stdout
    );
}

#[test]
fn validation_failures_exit_2() {
    // 2^4 - 1 = 15 is composite (and 4 is not prime)
    mersq()
        .args(["solve", "--p", "4", "--q", "3", "--l", "3"])
        .assert()
        .code(2);
    // composite l
    mersq()
        .args(["solve", "--p", "13", "--q", "3", "--l", "9"])
        .assert()
        .code(2);
    // mersenne needs one selector
    mersq().arg("mersenne").assert().code(2);
}

#[test]
fn cap_exceeded_exits_3() {
    mersq()
        .args(["tables", "--p-limit", "89"])
        .assert()
        .code(3);
}

#[test]
fn verify_matches_golden() {
    let assert = mersq()
        .args([
            "verify", "--p", "13", "--q", "3", "--l", "3", "--x", "2", "--y", "5", "--z", "2731",
        ])
        .assert()
        .success();
    assert_eq!(
        assert.get_output().stdout,
        include_bytes!("golden/verify_example1.txt")
    );
}

#[test]
fn search_finds_both_tuples() {
    let assert = mersq()
        .args([
            "search", "--p", "13", "--q", "3", "--l", "3", "--x-max", "6", "--y-max", "6",
        ])
        .assert()
        .success();
    let stdout = String::from_utf8(assert.get_output().stdout.clone()).unwrap();
    assert!(stdout.contains("bounds: x <= 6, y <= 6"));
    assert!(stdout.contains("(x, y, z) = (0, 1, 1)"));
    assert!(stdout.contains("(x, y, z) = (2, 5, 2731)"));
}

#[test]
fn tables_writes_named_files() {
    let dir = tempfile::tempdir().unwrap();
    mersq()
        .args(["tables", "--p-limit", "7", "--format", "csv"])
        .arg("--out")
        .arg(dir.path())
        .assert()
        .success();
    let table1 = std::fs::read(dir.path().join("table1_p7.csv")).unwrap();
    let table2 = std::fs::read(dir.path().join("table2.csv")).unwrap();
    assert_eq!(table1, include_bytes!("golden/table1_p7.csv"));
    assert_eq!(table2, include_bytes!("golden/table2.csv"));
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = ["solve", "--p", "13", "--q", "5", "--l", "3", "--format", "json"];
    let first = mersq().args(args).assert().success();
    let second = mersq().args(args).assert().success();
    assert_eq!(first.get_output().stdout, second.get_output().stdout);
}

#[test]
fn unreachable_server_exits_1() {
    // port 1 refuses connections; transport failures are exit 1
    mersq()
        .args(["--server", "http://127.0.0.1:1", "mersenne", "--p-limit", "7"])
        .assert()
        .code(1);
}

#[test]
fn mersenne_list_text() {
    let assert = mersq()
        .args(["mersenne", "--p-limit", "13"])
        .assert()
        .success();
    let stdout = String::from_utf8(assert.get_output().stdout.clone()).unwrap();
    assert!(stdout.starts_with("Mersenne prime exponents p <= 13:\n"));
    assert!(stdout.contains("p = 13"));
    assert!(stdout.contains("8191"));
    assert!(!stdout.contains("p = 11")); // 2047 is composite
}
