use qaffine_web::{drinfeld, factor, irreducible};
use serde_json::Value;

fn j(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn drinfeld_of_v1() {
    let v = j(drinfeld(r#"{"l":3,"factors":[{"kind":"ev","m":1,"a":"2"}]}"#));
    assert_eq!(v["dim"], 2);
    assert_eq!(v["polynomials"][0]["plus"], "1 - 2*u");
}

#[test]
fn factor_mixed() {
    let v = j(factor("(1-2u)(1-u^3)", 3));
    assert_eq!(v["P0"], "1 - 2*u");
    assert_eq!(v["P1"], "1 - u^3");
    assert_eq!(v["plan"].as_array().unwrap().len(), 2);
}

#[test]
fn verdicts() {
    let v = j(irreducible(r#"{"l":3,"factors":[{"kind":"ev","m":1,"a":"1"},{"kind":"ev","m":1,"a":"eps^2"}]}"#));
    assert_eq!(v["verdict"], "reducible");
    assert_eq!(v["predicted"], "reducible");
    let v = j(irreducible(r#"{"l":3,"factors":[{"kind":"ev","m":1,"a":"1"},{"kind":"ev","m":1,"a":"2"}]}"#));
    assert_eq!(v["verdict"], "irreducible");
}

#[test]
fn errors_are_json() {
    assert!(j(drinfeld("{")).get("error").is_some());
    assert!(j(factor("1-2u", 4)).get("error").is_some());
    assert!(j(irreducible(r#"{"l":0,"factors":[{"kind":"ev","m":1,"a":"q"}]}"#)).get("error").is_some());
}
