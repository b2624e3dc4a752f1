use std::process::{Command, Output};

use serde_json::Value;

fn perfectoid(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_perfectoid")).args(args).output().unwrap()
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn sharp_of_t_is_p() {
    let out = perfectoid(&["sharp", "--p", "3", "--prec", "4", "elem-t"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["kind"], "untilt");
    assert_eq!(v["precexp"]["num"], 4);
    assert_eq!(v["terms"], serde_json::json!([{"num": 1, "denpow": 0, "digit": 1}]));
}

#[test]
fn newton_of_x2_minus_p() {
    let out = perfectoid(&["newton", "poly-x2-minus-p"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "[{\"mult\":2,\"slope\":\"1/2\"}]\n");
}

#[test]
fn toric_sections_of_the_hyperplane() {
    let v = json_of(&perfectoid(&["toric", "sections", "fan-pn2", "divisor-pn2-hyperplane"]));
    assert_eq!(v["count"], 3);
    let v = json_of(&perfectoid(&["toric", "sections", "--dencap", "1", "fan-pn2", "divisor-pn2-third"]));
    assert_eq!(v["points"], serde_json::json!([["0", "0"], ["0", "1/3"], ["1/3", "0"]]));
}

#[test]
fn inline_json_and_text_inputs() {
    let inline = r#"{"kind":"tilt","p":3,"prec":8,"dencap":2,"precexp":null,"terms":[{"num":1,"denpow":0,"digit":1}]}"#;
    let a = perfectoid(&["sharp", inline]);
    let b = perfectoid(&["sharp", "elem-t"]);
    assert_eq!(a.stdout, b.stdout);
    let c = perfectoid(&["tilt-reduce", "--p", "3", "--prec", "8", "--dencap", "2", "2*p^(1/3) + 1*p^(4/3) + O(p^8)", "--format", "text"]);
    assert_eq!(String::from_utf8(c.stdout).unwrap(), "2*t^(1/3) + O(t^1)\n");
}

#[test]
fn witt_and_theta() {
    let v = json_of(&perfectoid(&["theta", "witt-teich-t"]));
    assert_eq!(v["terms"], serde_json::json!([{"num": 1, "denpow": 0, "digit": 1}]));
    let w = perfectoid(&["witt", "teichmuller", "--length", "3", "elem-t"]);
    assert_eq!(w.status.code(), Some(0));
    let sum = perfectoid(&["witt", "add", "witt-t-one", "witt-t-one", "--format", "text"]);
    assert_eq!(sum.status.code(), Some(0));
}

#[test]
fn approx_and_verify_report() {
    let v = json_of(&perfectoid(&["approx", "--c", "2", "--eps", "1/3", "tate-linear3"]));
    assert_eq!(v["report"]["verdict"], "pass");
    let v = json_of(&perfectoid(&["verify", "--c", "1", "--eps", "1/3", "tate-t0-pt1", "tate-t0"]));
    assert_eq!(v["verdict"], "fail");
    let d = json_of(&perfectoid(&["decompose", "--c", "1", "tate-t0-pt1"]));
    assert_eq!(d["components"].as_array().unwrap().len(), 2);
}

#[test]
fn disc_commands() {
    let v = json_of(&perfectoid(&["disc", "eval", "poly-disc-f", "--point", r#"{"type":"gauss"}"#]));
    assert_eq!(v["exponent"], "0");
    let v = json_of(&perfectoid(&["disc", "member", "subset-pdisc", "point-classical"]));
    assert_eq!(v["member"], false);
    let v = json_of(&perfectoid(&["disc", "specializes", "point-gauss", "point-type5"]));
    assert_eq!(v["specializes"], true);
    let v = json_of(&perfectoid(&["disc", "specializes", "point-type5", "point-gauss"]));
    assert_eq!(v["specializes"], false);
}

#[test]
fn toric_smooth_and_transfer() {
    let v = json_of(&perfectoid(&["toric", "smooth", "fan-index2"]));
    assert_eq!(v["smooth"], false);
    let v = json_of(&perfectoid(&["toric", "transfer", "tate-linear3", "--c", "2", "--eps", "1/3"]));
    assert_eq!(v["report"]["verdict"], "pass");
    assert_eq!(v["s"], 0);
}

#[test]
fn exit_codes_and_error_payloads() {
    let out = perfectoid(&["newton", "[1,"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json_of(&out)["error"]["kind"], "usage");

    let out = perfectoid(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));

    let out = perfectoid(&["sharp", "--p", "5", "elem-t"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json_of(&out)["error"]["kind"], "config_mismatch");

    let out = perfectoid(&["toric", "smooth", "invalid/fan-overlap.json"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json_of(&out);
    assert_eq!(v["error"]["kind"], "invalid_fan");
    assert_eq!(v.as_object().unwrap().len(), 1);
}

#[test]
fn fixture_directory_override() {
    let dir = std::env::temp_dir().join(format!("perfectoid-fixtures-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    std::fs::write(dir.join("elem-one.json"), "{\"dencap\":0,\"kind\":\"tilt\",\"p\":2,\"prec\":3,\"precexp\":null,\"terms\":[{\"denpow\":0,\"digit\":1,\"num\":0}]}\n").unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_perfectoid"))
        .env("PERFECTOID_FIXTURES", &dir)
        .args(["sharp", "elem-one", "--format", "text"])
        .output()
        .unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "1 + O(p^3)\n");
    std::fs::remove_dir_all(&dir).unwrap();
}
