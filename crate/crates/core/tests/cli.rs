use std::io::Write;
use std::process::{Command, Output, Stdio};

const EXAMPLE: &str = "n=3\n{1} {3} {1,2}\n{2}\n{1,3} {2,3} {1,2,3} {}\n";

fn socrank(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_socrank"))
        .args(args)
        .env_remove("SOCRANK_MAX_M")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    if let Some(text) = stdin {
        child
            .stdin
            .take()
            .unwrap()
            .write_all(text.as_bytes())
            .unwrap();
    }
    child.wait_with_output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn rank_from_stdin() {
    for (rule, want) in [
        ("lexcel", "1 > 2 > 3"),
        ("plurality", "1 > 2 ~ 3"),
        ("iis", "1 ~ 2 ~ 3"),
    ] {
        let out = socrank(&["rank", "-", rule], Some(EXAMPLE));
        assert_eq!(out.status.code(), Some(0));
        assert_eq!(stdout(&out).trim(), want);
    }
}

#[test]
fn exit_codes() {
    assert_eq!(
        socrank(&["rank", "-", "borda"], Some(EXAMPLE))
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        socrank(&["rank", "-", "lexcel"], Some("n=2\n{1}\n"))
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        socrank(&["rank", "/no/such/file", "lexcel"], None)
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        socrank(&["check", "lexcel", "ssi", "--n", "two"], None)
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        socrank(&["check", "lexcel", "ssi"], None).status.code(),
        Some(0)
    );
    assert_eq!(
        socrank(&["check", "const", "wivip"], None).status.code(),
        Some(1)
    );
    assert_eq!(
        socrank(&["check", "lexcel", "mon"], None).status.code(),
        Some(3)
    );
    assert_eq!(socrank(&["--help"], None).status.code(), Some(0));
}

#[test]
fn json_witness_feeds_back_into_rank() {
    let out = socrank(&["check", "iis", "si", "--n", "3", "--json"], None);
    assert_eq!(out.status.code(), Some(1));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["mode"], "registry");
    for (input, output) in [("before", "before_output"), ("after", "after_output")] {
        let text = doc["witness"][input].as_str().unwrap();
        let ranked = socrank(&["rank", "-", "iis"], Some(text));
        assert_eq!(
            stdout(&ranked).trim(),
            doc["witness"][output].as_str().unwrap()
        );
    }
}

#[test]
fn table_formats() {
    let csv = socrank(&["table3", "--format", "csv"], None);
    assert_eq!(csv.status.code(), Some(0));
    assert_eq!(stdout(&csv).lines().count(), 8);
    let json = socrank(&["table3", "--format", "json"], None);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&json)).unwrap();
    assert_eq!(doc["matching"], 63);
    assert_eq!(doc["rows"].as_array().unwrap().len(), 7);
    let again = socrank(&["table3", "--format", "json"], None);
    assert_eq!(json.stdout, again.stdout);
}

#[test]
fn sampled_cells_are_marked() {
    let out = socrank(&["table3", "--n", "3", "--budget", "20"], None);
    let text = stdout(&out);
    assert!(text.lines().nth(1).unwrap().contains("1s"), "{text}");
}

#[test]
fn domain_cap_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_socrank"))
        .args(["check", "lexcel", "nt", "--n", "3"])
        .env("SOCRANK_MAX_M", "4")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = socrank(&["enumerate", "--max", "5"], None);
    assert!(stdout(&out).contains("5\t541\t541"));
}

#[test]
fn verify_at_two() {
    let out = socrank(&["verify"], None);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(!stdout(&out).contains("FAIL"));
}
