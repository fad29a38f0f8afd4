use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use growthlab::rotation::{sturmian, Angle};
use rand::{Rng, SeedableRng};
use serde_json::{json, Value};
use tempfile::TempDir;

fn growthlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_growthlab")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json_of(o: &Output) -> Value {
    assert_eq!(o.status.code(), Some(0), "stderr: {}", stderr(o));
    serde_json::from_slice(&o.stdout).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn generate_to(dir: &TempDir, name: &str, args: &[&str]) -> String {
    let p = dir.path().join(name);
    let out = p.to_str().unwrap();
    let mut full = vec!["generate"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--out", out]);
    let o = growthlab(&full);
    assert_eq!(o.status.code(), Some(0), "stderr: {}", stderr(&o));
    out.to_string()
}

#[test]
fn generate_sturmian_matches_library() {
    let o = growthlab(&["generate", "sturmian", "--alpha", "610/987", "--x0", "1/7", "--len", "400"]);
    assert_eq!(o.status.code(), Some(0));
    let a: Angle = "610/987".parse().unwrap();
    let w = sturmian(&a, &"1/7".parse().unwrap(), 400, false).unwrap();
    let expected: String = w.iter().map(|s| if s.0 == 0 { 'a' } else { 'b' }).collect();
    assert_eq!(stdout(&o), format!("{expected}\n"));
    let echo: Value = serde_json::from_str(stderr(&o).trim()).unwrap();
    assert_eq!(echo["schema"], "growthlab/1");
    assert_eq!(echo["spec"]["alpha"], "610/987");
}

#[test]
fn generate_periodic_and_two_ray() {
    let o = growthlab(&["generate", "periodic", "--u", "ab", "--len", "10"]);
    assert_eq!(stdout(&o), "ababababab\n");
    let o = growthlab(&["generate", "two-ray", "--u", "a", "--c", "c", "--v", "b", "--origin", "-3", "--len", "8"]);
    assert_eq!(stdout(&o), "aaacbbbb\n");
}

#[test]
fn generate_mechanical_from_spec_echo() {
    let dir = TempDir::new().unwrap();
    let o = growthlab(&[
        "generate",
        "min-growth",
        "--alpha",
        "610/987",
        "--breakpoints",
        "0,1,2",
        "--assign",
        "a,b,c",
        "--len",
        "2000",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let echo: Value = serde_json::from_str(stderr(&o).trim()).unwrap();
    let spec = write(&dir, "spec.json", &echo["spec"].to_string());
    let again = growthlab(&["generate", "mechanical", "--spec", &spec, "--len", "2000"]);
    assert_eq!(stdout(&again), stdout(&o));
    assert_eq!(stdout(&o).trim().len(), 2000);
}

#[test]
fn resonance_is_an_input_error() {
    let o = growthlab(&["generate", "sturmian", "--alpha", "1/4", "--x0", "0", "--len", "10"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("partition endpoint"));
    let o = growthlab(&["generate", "sturmian", "--alpha", "1/4", "--x0", "0", "--len", "8", "--waive-resonance"]);
    assert_eq!(stdout(&o), "abbbabbb\n");
}

#[test]
fn analyze_reports() {
    let dir = TempDir::new().unwrap();
    let s = generate_to(&dir, "s.txt", &["sturmian", "--alpha", "610/987", "--x0", "1/7", "--len", "400"]);
    let r = json_of(&growthlab(&["analyze", &s]));
    assert_eq!(r["schema"], "growthlab/1");
    assert_eq!(r["affine_tail"], json!({"N": 1, "slope": 1, "K": 1}));
    assert_eq!(r["balance"]["max_discrepancy"], 1);
    assert_eq!(r["rauzy"]["verdict"], "strongly connected throughout");

    let per = write(&dir, "p.txt", &"ab".repeat(40));
    let r = json_of(&growthlab(&["analyze", &per]));
    assert_eq!(r["affine_tail"]["slope"], 0);
    assert_eq!(r["affine_tail"]["K"], 2);

    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0);
    let random: String = (0..64).map(|_| if rng.gen_bool(0.5) { 'a' } else { 'b' }).collect();
    let rnd = write(&dir, "r.txt", &random);
    let r = json_of(&growthlab(&["analyze", &rnd]));
    assert!(r["affine_tail"].is_null());
    assert_eq!(r["complexity"]["exact"][33], false);
    assert!(!r["warnings"].as_array().unwrap().is_empty());

    let tsv = stdout(&growthlab(&["analyze", &per, "--format", "tsv", "--n-max", "3"]));
    assert_eq!(tsv, "n\tT_word\n0\t1\n1\t2\n2\t2\n3\t2\n");
}

#[test]
fn empty_word_and_bad_format_are_input_errors() {
    let dir = TempDir::new().unwrap();
    let empty = write(&dir, "e.txt", "\n");
    assert_eq!(growthlab(&["analyze", &empty]).status.code(), Some(2));
    let per = write(&dir, "p.txt", "abab");
    assert_eq!(growthlab(&["analyze", &per, "--format", "dot"]).status.code(), Some(2));
    assert_eq!(growthlab(&["analyze", "/nonexistent/word.txt"]).status.code(), Some(2));
}

#[test]
fn algebra_reports() {
    let dir = TempDir::new().unwrap();
    let ba = write(&dir, "ba.txt", "# one obstruction\nab\nba\n");
    let r = json_of(&growthlab(&["algebra", &ba]));
    assert_eq!(r["class"]["tag"], "Boundary");
    assert_eq!(r["class"]["K"], 1);
    assert_eq!(r["decomposition"]["description"]["two_ray"]["u"], "a");
    assert_eq!(r["decomposition"]["coverage"]["pass"], true);

    let bb = write(&dir, "bb.txt", "ab\nbb\n");
    let r = json_of(&growthlab(&["algebra", &bb]));
    assert_eq!(r["class"]["tag"], "Exponential");
    assert!(r["decomposition"].is_null());
    assert_eq!(
        r["profiles"]["T"].as_array().unwrap()[1..=6],
        [json!(2), json!(3), json!(5), json!(8), json!(13), json!(21)]
    );

    let free = write(&dir, "a.txt", "a\n");
    let r = json_of(&growthlab(&["algebra", &free]));
    assert_eq!(r["class"]["tag"], "Slow");
    assert!(r["profiles"]["T"].as_array().unwrap().iter().skip(1).all(|t| t == 1));

    let text = stdout(&growthlab(&["algebra", &ba, "--format", "text"]));
    assert!(text.starts_with("class: Boundary K=1\n"));
}

#[test]
fn algebra_parse_error_names_the_line() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.txt", "ab\nba\nbz\n");
    let o = growthlab(&["algebra", &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));
}

#[test]
fn cycle_cap_from_environment() {
    let dir = TempDir::new().unwrap();
    let ba = write(&dir, "ba.txt", "ab\nba\n");
    let run = |cap: Option<&str>| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_growthlab"));
        c.args(["algebra", &ba]);
        match cap {
            Some(v) => c.env("GROWTHLAB_CYCLE_CAP", v),
            None => c.env_remove("GROWTHLAB_CYCLE_CAP"),
        };
        json_of(&c.output().unwrap())
    };
    assert_eq!(run(None)["class"]["empirical"], false);
    assert_eq!(run(Some("1"))["class"]["empirical"], true);
}

#[test]
fn duality_reports() {
    let dir = TempDir::new().unwrap();
    let fib = generate_to(&dir, "fib.txt", &["sturmian", "--alpha", "610/987", "--x0", "1/2", "--len", "1000"]);
    let r = json_of(&growthlab(&["duality", &fib, "--m", "12"]));
    assert_eq!(r["duality"]["pass"], true);
    assert_eq!(r["duality"]["antidictionary"]["words"], json!(["bb", "aaa", "babab", "aabaabaa"]));

    let per = write(&dir, "per.txt", &"ab".repeat(10));
    let r = json_of(&growthlab(&["duality", &per, "--m", "6"]));
    assert_eq!(r["duality"]["antidictionary"]["words"], json!(["aa", "bb"]));

    let short = write(&dir, "short.txt", "ababa");
    let o = growthlab(&["duality", &short, "--m", "6"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("needs at least 12"));
}

#[test]
fn rauzy_dot_and_json() {
    let dir = TempDir::new().unwrap();
    let spec = write(&dir, "tr.json", r#"{"kind": "two_ray", "u": "aa", "c": "ab", "v": "bb"}"#);
    let dot = stdout(&growthlab(&["rauzy", "--spec", &spec]));
    assert!(dot.starts_with("// loses strong connectivity at k=1\ndigraph"));
    let r = json_of(&growthlab(&["rauzy", "--spec", &spec, "--format", "json"]));
    assert_eq!(r["schema"], "growthlab/1");

    let s = generate_to(&dir, "s.txt", &["sturmian", "--alpha", "610/987", "--x0", "1/7", "--len", "400"]);
    let r = json_of(&growthlab(&["rauzy", &s, "--format", "json", "--k-max", "10"]));
    assert_eq!(r["verdict"], "strongly connected throughout");
    assert_eq!(r["stats"].as_array().unwrap().len(), 10);
    assert_eq!(growthlab(&["rauzy"]).status.code(), Some(2));
}

#[test]
fn witness_for_golden_rotation() {
    let dir = TempDir::new().unwrap();
    let spec = write(
        &dir,
        "spec.json",
        r#"{"alpha": "610/987", "x0": "1/2", "partition": {"a": [["0", "610/987"]], "b": [["610/987", "0"]]}}"#,
    );
    let run = || json_of(&growthlab(&["witness", "--spec", &spec, "--horizon", "800", "--seed", "3"]));
    let r = run();
    assert_eq!(r["witness"]["K"], 1);
    assert_eq!(r, run());
}

#[test]
fn outputs_are_deterministic() {
    let dir = TempDir::new().unwrap();
    let pres = write(&dir, "p.txt", "abc\nba\nca\ncb\n");
    let a = growthlab(&["algebra", &pres]);
    let b = growthlab(&["algebra", &pres]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json_of(&a)["class"]["degree"], 3);
}

#[test]
fn selftest_single_criterion() {
    let o = growthlab(&["selftest", "--criterion", "9", "--seed", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("PASS [9]"));
    assert_eq!(growthlab(&["selftest", "--criterion", "10"]).status.code(), Some(2));
}

#[test]
fn stdin_input() {
    use std::io::Write;
    let mut child = Command::new(env!("CARGO_BIN_EXE_growthlab"))
        .args(["duality", "-", "--m", "2"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"aaaa\n").unwrap();
    let o = child.wait_with_output().unwrap();
    let r = json_of(&o);
    assert_eq!(r["duality"]["antidictionary"]["words"], json!([]));
    assert!(Path::new(env!("CARGO_BIN_EXE_growthlab")).exists());
}
