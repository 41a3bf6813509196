#![allow(dead_code)]

pub mod schema;

use serde_json::Value;

pub fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("kscalc").chain(args.iter().copied());
    let code = ks_cli::run_with(argv, &ks_cli::Settings::default(), &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

pub fn run_json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let (code, out, err) = run(&full);
    let v = serde_json::from_str(&out)
        .unwrap_or_else(|e| panic!("no JSON on stdout ({e}); stderr: {err}"));
    (code, v)
}

pub fn load_schema(name: &str) -> Value {
    let path = format!("{}/schemas/{name}.schema.json", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"));
    serde_json::from_str(&text).unwrap()
}

pub fn assert_valid(name: &str, v: &Value) {
    let s = load_schema(name);
    if let Err(e) = schema::validate(&s, v) {
        panic!("output does not match {name} schema: {e}\n{v:#}");
    }
}
