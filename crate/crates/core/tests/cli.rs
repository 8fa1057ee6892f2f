use std::io::Write;
use std::process::{Command, Output, Stdio};

fn crossfree(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_crossfree"))
        .args(args)
        .env_remove("CROSSFREE_WORKERS")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn exit_codes() {
    assert_eq!(crossfree(&["count", "--class", "CT", "--n", "4"], "").status.code(), Some(0));
    assert_eq!(crossfree(&["count", "--class", "CT"], "").status.code(), Some(2));
    assert_eq!(crossfree(&["frobnicate"], "").status.code(), Some(2));
    assert_eq!(crossfree(&["map", "--direction", "alpha", "3;{1,2,3}"], "").status.code(), Some(2));
    assert_eq!(crossfree(&["verify", "--max-n", "3"], "").status.code(), Some(0));
    assert_eq!(crossfree(&["--help"], "").status.code(), Some(0));
}

#[test]
fn alpha_then_alpha_inv_reproduces_input() {
    let all = stdout(&crossfree(&["enumerate", "--class", "P", "--n", "5"], ""));
    let seqs = crossfree(&["map", "--direction", "alpha"], &all);
    assert!(seqs.status.success());
    let back = crossfree(&["map", "--direction", "alpha-inv"], &stdout(&seqs));
    assert_eq!(stdout(&back), all);
}

#[test]
fn reduce_then_expand_reproduces_input() {
    let all = stdout(&crossfree(&["enumerate", "--class", "P", "--n", "5", "--k", "3"], ""));
    let parts = crossfree(&["map", "--direction", "reduce"], &all);
    let back = crossfree(&["map", "--direction", "expand"], &stdout(&parts));
    let strip = |s: String| s.lines().filter(|l| !l.starts_with('#')).map(|l| format!("{l}\n")).collect::<String>();
    assert_eq!(strip(stdout(&back)), all);
}

#[test]
fn verify_output_is_stable_across_worker_counts() {
    let a = crossfree(&["verify", "--max-n", "6", "--workers", "1"], "");
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_crossfree"));
    let b = cmd.args(["verify", "--max-n", "6"]).env("CROSSFREE_WORKERS", "5").output().unwrap();
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(text.lines().last().unwrap().contains("\"mismatches\":0"));
    // Timing goes to stderr only.
    assert!(String::from_utf8(a.stderr).unwrap().starts_with("verified 21 cells"));
}

#[test]
fn json_map_records() {
    let o = crossfree(&["map", "--direction", "reduce", "--format", "json", "12;{1,6},{2,3},{4,12},{5,10},{7,8},{9},{11}"], "");
    assert_eq!(
        stdout(&o),
        "{\"input\":\"12;{1,6},{2,3},{4,12},{5,10},{7,8},{9},{11}\",\"output\":\"8;{1,5,6},{2,3,8},{4,7}\",\"alignments\":2,\"transients\":2}\n"
    );
}
