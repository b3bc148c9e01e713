use std::io::Write;
use std::process::{Command, Output, Stdio};

fn passage(args: &[&str], stdin: &str, color: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_passage"));
    cmd.args(args).stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped());
    match color {
        Some(c) => cmd.env("PASSAGE_COLOR", c),
        None => cmd.env_remove("PASSAGE_COLOR"),
    };
    let mut child = cmd.spawn().unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

#[test]
fn reads_stdin_by_default() {
    let out = passage(&["count"], "a b\nb c\n", Some("never"));
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "k=2\npassages=4\npartitionings=2\n");
}

#[test]
fn domain_error_exits_one_with_empty_stdout() {
    let out = passage(&["check", "--edges", "b a"], "a b\na c\n", Some("never"));
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8(out.stderr).unwrap().starts_with("error: "));

    let out = passage(&["minimal"], "a b c d\n", Some("never"));
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
}

#[test]
fn usage_error_exits_two() {
    let out = passage(&["passages", "--limit", "0"], "a b\n", Some("never"));
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert_eq!(passage(&["frobnicate"], "", Some("never")).status.code(), Some(2));
}

#[test]
fn color_setting() {
    // stderr is a pipe here, so `auto` stays plain
    for setting in [Some("never"), Some("auto"), None] {
        let out = passage(&["minimal", "missing-file.txt"], "", setting);
        assert_eq!(out.status.code(), Some(1));
        assert!(!out.stderr.contains(&0x1b));
    }
    assert_eq!(passage(&["count"], "a b\n", Some("always")).status.code(), Some(2));
}
