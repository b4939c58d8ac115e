use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn corpus(entry: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/corpus").join(entry)
}

fn rmc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rmc")).args(args).output().expect("binary runs")
}

fn files(entry: &str) -> Vec<String> {
    let d = corpus(entry);
    ["--system", "A.aut", "--trans", "T.tdc", "--bad", "B.aut"]
        .chunks(2)
        .flat_map(|kv| [kv[0].to_owned(), d.join(kv[1]).display().to_string()])
        .collect()
}

fn with<'a>(base: &'a [String], extra: &[&'a str]) -> Vec<&'a str> {
    extra.iter().copied().chain(base.iter().map(String::as_str)).collect()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn fixpoint_left_is_safe() {
    let f = files("token_ring");
    let o = rmc(&with(&f, &["fixpoint", "--criterion", "left"]));
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("safe\n"));
}

#[test]
fn fixpoint_json_and_dot() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("r.json");
    let dots = dir.path().join("dots");
    let f = files("token_ring_mirror");
    let o = rmc(&with(
        &f,
        &[
            "fixpoint",
            "--criterion",
            "right",
            "--json",
            json.to_str().unwrap(),
            "--dot-dir",
            dots.to_str().unwrap(),
        ],
    ));
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(v["equality_step"], 2);
    assert_eq!(v["bad_step"], serde_json::Value::Null);
    assert_eq!(v["final_size"], 5);
    assert!(fs::read_to_string(dots.join("final.dot")).unwrap().starts_with("digraph"));
}

#[test]
fn bad_initial_words_exit_inconclusive() {
    let mut f = files("token_ring");
    let a = f[1].clone();
    f[5] = a;
    let o = rmc(&with(&f, &["fixpoint", "--criterion", "left", "--json", "-"]));
    assert_eq!(o.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["outcome"], "inconclusive");
    assert_eq!(v["bad_step"], 1);
}

#[test]
fn classifier_engines() {
    let f = files("token_ring");
    let cla = corpus("token_ring").join("C.cla");
    let o = rmc(&with(&f, &["fixpoint-t", "--classifier", cla.to_str().unwrap()]));
    assert_eq!(o.status.code(), Some(0));
    let o = rmc(&with(&f, &["cegar", "--classifier", "onestate", "--json", "-"]));
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["depth"].as_u64().unwrap() <= 4);
    let o = rmc(&with(&f, &["fixpoint-t", "--classifier", "mutex:3,4", "--max-steps", "0"]));
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn unsafe_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.aut");
    fs::write(&bad, "automaton\nalphabet: a b\nstates: 0 1\ninitial: 0\nfinal: 1\ntransitions:\n0 a 0\n0 b 1\n").unwrap();
    let mut f = files("token_ring");
    f[5] = bad.display().to_string();
    let o = rmc(&with(&f, &["cegar", "--classifier", "onestate"]));
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("witness: \"b\""));
}

#[test]
fn errors_exit_four() {
    let mut f = files("token_ring");
    f[1] = "/nonexistent".into();
    let o = rmc(&with(&f, &["fixpoint", "--criterion", "left"]));
    assert_eq!(o.status.code(), Some(4));
    let dir = tempfile::tempdir().unwrap();
    let broken = dir.path().join("A.aut");
    fs::write(&broken, "automaton\nalphabet: a b\nstates: 1\ntransitions:\n1 a\n").unwrap();
    let o = rmc(&["dot", broken.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 5"));
}

#[test]
fn table_over_the_builtin_corpus() {
    let o = rmc(&["table", "--json", "-"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 6);
    let o = rmc(&["table", "--corpus", corpus("").to_str().unwrap(), "--criteria", "right"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("size T : 62"));
}

#[test]
fn utilities() {
    let d = corpus("token_ring");
    let (a, t, b) = (d.join("A.aut"), d.join("T.tdc"), d.join("B.aut"));
    let o = rmc(&["apply", "--trans", t.to_str().unwrap(), "--system", a.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let dir = tempfile::tempdir().unwrap();
    let img = dir.path().join("img.aut");
    fs::write(&img, stdout(&o)).unwrap();
    assert!(stdout(&o).contains("states: 1,3 1,4 2,3"));

    let o = rmc(&["include", img.to_str().unwrap(), a.to_str().unwrap()]);
    assert_eq!((o.status.code(), stdout(&o).trim()), (Some(0), "true"));
    let o = rmc(&["include", a.to_str().unwrap(), b.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let o = rmc(&["equal", a.to_str().unwrap(), a.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));

    let o = rmc(&["inverse", "--trans", t.to_str().unwrap()]);
    assert!(stdout(&o).contains("3 b/a 4"));
    let o1 = rmc(&["dot", img.to_str().unwrap()]);
    let o2 = rmc(&["dot", img.to_str().unwrap()]);
    assert_eq!(o1.stdout, o2.stdout);
}
