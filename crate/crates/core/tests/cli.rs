use serde_json::Value;
use std::process::Command;

fn qra(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_qra")).args(args).output().expect("run qra");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap())
}

fn json(s: &str) -> Value {
    serde_json::from_str(s).unwrap_or_else(|e| panic!("not JSON ({}): {}", e, s))
}

const V1_2: &str = r#"{"l":3,"factors":[{"kind":"ev","m":1,"a":"2"}]}"#;
const REDUCIBLE: &str = r#"{"l":3,"factors":[{"kind":"ev","m":1,"a":"1"},{"kind":"ev","m":1,"a":"eps^2"}]}"#;

#[test]
fn construct() {
    let (code, out) = qra(&["construct", V1_2]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["dim"], 2);
    let (code, out) = qra(&["construct", r#"{"l":3,"factors":[{"kind":"ev","m":1,"a":"2"},{"kind":"ev","m":2,"a":"3/2"}]}"#]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["dim"], 6);
    assert_eq!(v["audit"], "pass");
    let (code, out) = qra(&["construct", r#"{"l":3,"factors":[{"kind":"ev""#]);
    assert_eq!(code, 2);
    assert!(json(&out)["error"].is_string());
    let (code, _) = qra(&["construct", r#"{"l":3,"factors":[{"kind":"tensor","m":1}]}"#]);
    assert_eq!(code, 2);
    let (code, out) = qra(&["construct", r#"{"l":0,"factors":[{"kind":"ev","m":2,"a":"q^2 + 1"}]}"#]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["dim"], 3);
}

#[test]
fn drinfeld() {
    let (code, out) = qra(&["drinfeld", V1_2]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["plus"], "1 - 2*u");
    assert_eq!(v["reciprocity"], true);
    let (code, out) = qra(&["drinfeld", r#"{"l":5,"factors":[{"kind":"ev","m":2,"a":"1"}]}"#]);
    assert_eq!(code, 0);
    // (1 - eps u)(1 - eps^-1 u), expanded
    let want = qaffine::segments::parse_poly("(1-eps*u)(1-eps^-1*u)", 5, &[]).unwrap().text();
    assert_eq!(json(&out)["plus"], want.as_str());
    assert_eq!(qra(&["drinfeld", REDUCIBLE]).0, 4);
    let (code, out) = qra(&["drinfeld", "--index", "1", REDUCIBLE]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["weight"], 0);
}

#[test]
fn factor() {
    let (code, out) = qra(&["--l", "3", "factor", "(1-2u)(1-u^3)"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["P0"], "1 - 2*u");
    assert_eq!(v["P1"], "1 - u^3");
    let (_, out) = qra(&["--l", "3", "factor", "1-5u"]);
    assert_eq!(json(&out)["P0"], "1 - 5*u");
    let (_, out) = qra(&["--l", "3", "factor", "1-u^3"]);
    let v = json(&out);
    assert_eq!(v["plan"], json(r#"[{"kind":"frob","n":1,"b":"1"}]"#));
    let (code, _) = qra(&["--l", "3", "factor", "(1-2u"]);
    assert_eq!(code, 2);
    let (code, out) = qra(&["--l", "4", "factor", "1-2u"]);
    assert_eq!(code, 2);
    assert!(json(&out)["error"].as_str().unwrap().contains("odd order"));
    let (code, _) = qra(&["--l", "3", "factor", r#"{"roots":[{"val":"2","mult":1}]}"#]);
    assert_eq!(code, 0);
}

#[test]
fn irreducible_and_classify() {
    let (code, out) = qra(&["irreducible", REDUCIBLE]);
    assert_eq!(code, 1);
    let v = json(&out);
    assert_eq!(v["verdict"], "reducible");
    assert_eq!(v["witness_dim"], 1);
    let (code, out) = qra(&["irreducible", r#"{"l":3,"factors":[{"kind":"frob","n":1,"b":"2"}]}"#]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["verdict"], "irreducible");

    assert_eq!(qra(&["--l", "3", "classify", "1-2u", "1-2u"]).0, 0);
    // b = 1 and b = eps have the same l-th power
    assert_eq!(qra(&["--l", "3", "classify", "1-u^3", "1-eps^3*u^3"]).0, 0);
    assert_eq!(qra(&["--l", "3", "classify", "1-2u", "1-2*eps*u"]).0, 1);
}

#[test]
fn verify() {
    let (code, out) = qra(&["verify", "lemma-5.1"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["checks"][0]["status"], "pass");
    let (code, out) = qra(&["verify", "eq-18", "--max-r", "2", "--max-n", "2", "--mutations"]);
    assert_eq!(code, 0, "{}", out);
    assert_eq!(json(&out)["mutations"].as_array().unwrap().len(), 3);
    assert_eq!(qra(&["verify", "no-such-check"]).0, 2);
    assert_eq!(qra(&["frobnicate"]).0, 2);
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["--l", "3", "factor", "(1-2u)(1-u^3)(1-eps*u)"],
        vec!["drinfeld", r#"{"l":5,"factors":[{"kind":"ev","m":2,"a":"2"},{"kind":"ev","m":1,"a":"-1"}]}"#],
        vec!["irreducible", REDUCIBLE],
    ] {
        assert_eq!(qra(&args), qra(&args));
    }
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("qra-out-{}", std::process::id()));
    let path = dir.to_str().unwrap().to_string();
    let (code, stdout) = qra(&["--out", &path, "--pretty", "construct", V1_2]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("\n  \"dim\": 2"));
    std::fs::remove_file(&path).unwrap();
}
