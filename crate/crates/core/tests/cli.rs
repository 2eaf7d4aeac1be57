use std::process::{Command, Output};

use serde_json::Value;

fn umbra(args: &[&str], order_env: Option<&str>) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_umbra"));
    c.args(args).env_remove("UMBRA_ORDER");
    if let Some(o) = order_env {
        c.env("UMBRA_ORDER", o);
    }
    c.output().expect("binary runs")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json on stdout")
}

#[test]
fn spec_examples_through_the_binary() {
    let o = umbra(&["triangle", "--family", "touchard", "--order", "5", "--format", "tsv"], None);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&o.stdout).lines().nth(4), Some("0\t1\t7\t6\t1"));

    let o = umbra(&["iterate", "--series", "exp(x)-1", "--s", "1/2", "--order", "4"], None);
    assert_eq!(json(&o)["coeffs"].as_array().unwrap()[..4], ["0", "1", "1/4", "1/48"]);

    let o = umbra(&["sum", "--poly", "x^2", "--from", "0", "--at", "5"], None);
    assert_eq!(json(&o), "30");
}

#[test]
fn order_comes_from_env_unless_given() {
    let o = umbra(&["series", "exp(x)"], None);
    assert_eq!(json(&o)["trunc"], 16);
    let o = umbra(&["series", "exp(x)"], Some("5"));
    assert_eq!(json(&o)["trunc"], 5);
    let o = umbra(&["series", "exp(x)", "--order", "3"], Some("5"));
    assert_eq!(json(&o)["trunc"], 3);
    assert_eq!(umbra(&["series", "exp(x)"], Some("99")).status.code(), Some(2));
}

#[test]
fn exit_codes() {
    let o = umbra(&["basic", "--delta", "D*(1-D)", "--order", "8"], None);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["kind"], "triangle");

    let o = umbra(&["series", "log(2+x)"], None);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    assert!(String::from_utf8_lossy(&o.stderr).contains("offset 0"));

    assert_eq!(umbra(&["faulhaber"], None).status.code(), Some(2));
    assert_eq!(umbra(&["check", "--family", "stretch", "--params", "0"], None).status.code(), Some(2));

    let o = umbra(&["check", "--family", "catalan", "--order", "6"], None);
    assert_eq!(o.status.code(), Some(0));
    assert!(json(&o).as_array().unwrap().iter().all(|e| e["status"] == "pass"));
}

#[test]
fn json_round_trips() {
    let o = umbra(&["sheffer", "--appell", "1/(1-D)", "--delta", "exp(D)-1", "--order", "6"], None);
    let text = String::from_utf8(o.stdout).unwrap();
    let t: umbra::umbral::Triangle = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string(&t).unwrap(), text.trim_end());

    let o = umbra(&["itlog", "--series", "x+x^2", "--order", "6"], None);
    let text = String::from_utf8(o.stdout).unwrap();
    let s: umbra::Series = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string(&s).unwrap(), text.trim_end());
    assert_eq!(s.coeff(3), umbra::rat::int(-1));
}
