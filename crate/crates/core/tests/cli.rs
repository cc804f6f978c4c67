use std::path::Path;
use std::process::{Command, Output};

fn nagsb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nagsb")).args(args).output().unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn complete_then_check() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "cubic.txt", "xvars: x1 > x2 > x3\nrel: ((x1 x1) x1) - x2\nrel: (x1 x1) - x3\n");
    let o = nagsb(&["complete", &input]);
    assert_eq!(o.status.code(), Some(0));
    let golden = include_str!("golden/cubic_completed.txt");
    assert_eq!(stdout(&o), golden);

    let done = write(dir.path(), "done.txt", golden);
    let o = nagsb(&["check", &done, "--shape-bound", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("GSB at max-deg 6, shape-bound 4"));
}

#[test]
fn nf_and_irr() {
    let dir = tempfile::tempdir().unwrap();
    let done = write(dir.path(), "done.txt", include_str!("golden/cubic_completed.txt"));
    let o = nagsb(&["nf", &done, "--expr", "(x1 (x1 x1)) + (x3 x1)"]);
    assert_eq!(stdout(&o), "(x1 x3) + x2\n");
    let o = nagsb(&["irr", &done, "--deg", "2"]);
    let out = stdout(&o);
    let mut lines = out.lines();
    // 3 letters and 9 products, minus the two leading words.
    assert_eq!(lines.next(), Some("10 irreducible monomials of degree <= 2"));
    let rest: Vec<_> = lines.collect();
    assert_eq!(rest.len(), 10);
    assert!(!rest.contains(&"(x1 x1)") && !rest.contains(&"(x3 x1)"));
}

#[test]
fn y_intersection_needs_padding() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(
        dir.path(),
        "y.txt",
        "yvars: y1 > y2\nxvars: x1 > x2\nrel: y1 x1 - 1/2 y2 x2\nrel: y1 x2 - 1/2 y2 x2\n",
    );
    let minimal = dir.path().join("minimal.txt");
    let o = nagsb(&["complete", &input, "-o", minimal.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let minimal = minimal.to_str().unwrap();
    assert_eq!(nagsb(&["check", minimal]).status.code(), Some(0));
    assert_eq!(nagsb(&["check", minimal, "--shape-bound", "3"]).status.code(), Some(1));

    let padded = dir.path().join("padded.txt");
    let o = nagsb(&["complete", &input, "--shape-bound", "3", "-o", padded.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let o = nagsb(&["check", padded.to_str().unwrap(), "--shape-bound", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn usage_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.txt", "xvars: x1 > x2\nrel: x1 x2\n");
    let o = nagsb(&["check", &bad]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("line 2"), "{err}");
    assert_eq!(nagsb(&["check"]).status.code(), Some(2));
    assert_eq!(nagsb(&["--help"]).status.code(), Some(0));
}
