//! Validator for the JSON Schema keywords used by the shipped schema files.
//! Unknown keywords are rejected rather than ignored.

use regex::Regex;
use serde_json::{Map, Value};

const ANNOTATIONS: &[&str] = &["$schema", "title", "description", "$defs"];

pub fn validate(root: &Value, instance: &Value) -> Result<(), String> {
    check(root, root, instance, "$")
}

fn resolve<'a>(root: &'a Value, reference: &str) -> Result<&'a Value, String> {
    let name = reference
        .strip_prefix("#/$defs/")
        .ok_or_else(|| format!("unsupported $ref {reference}"))?;
    root.get("$defs")
        .and_then(|d| d.get(name))
        .ok_or_else(|| format!("dangling $ref {reference}"))
}

fn type_matches(t: &str, v: &Value) -> Result<bool, String> {
    Ok(match t {
        "object" => v.is_object(),
        "array" => v.is_array(),
        "string" => v.is_string(),
        "boolean" => v.is_boolean(),
        "null" => v.is_null(),
        "integer" => v.is_i64() || v.is_u64(),
        "number" => v.is_number(),
        other => return Err(format!("unknown type {other}")),
    })
}

fn check(root: &Value, schema: &Value, v: &Value, at: &str) -> Result<(), String> {
    let s: &Map<String, Value> = schema
        .as_object()
        .ok_or_else(|| format!("schema at {at} is not an object"))?;
    for (key, rule) in s {
        match key.as_str() {
            k if ANNOTATIONS.contains(&k) => {}
            "$ref" => check(root, resolve(root, rule.as_str().unwrap_or(""))?, v, at)?,
            "type" => {
                let allowed: Vec<&str> = match rule {
                    Value::String(t) => vec![t.as_str()],
                    Value::Array(ts) => ts.iter().filter_map(Value::as_str).collect(),
                    _ => return Err(format!("bad type rule at {at}")),
                };
                let mut ok = false;
                for t in &allowed {
                    ok |= type_matches(t, v)?;
                }
                if !ok {
                    return Err(format!("{at}: {v} is not of type {allowed:?}"));
                }
            }
            "enum" => {
                let options = rule.as_array().ok_or("enum must be an array")?;
                if !options.contains(v) {
                    return Err(format!("{at}: {v} not in {rule}"));
                }
            }
            "pattern" => {
                if let Some(text) = v.as_str() {
                    let re = Regex::new(rule.as_str().ok_or("pattern must be a string")?)
                        .map_err(|e| e.to_string())?;
                    if !re.is_match(text) {
                        return Err(format!("{at}: {text:?} does not match {rule}"));
                    }
                }
            }
            "minimum" => {
                if let (Some(x), Some(m)) = (v.as_f64(), rule.as_f64()) {
                    if x < m {
                        return Err(format!("{at}: {x} < minimum {m}"));
                    }
                }
            }
            "minItems" | "maxItems" => {
                if let Some(a) = v.as_array() {
                    let bound = rule.as_u64().ok_or("item bound must be an integer")? as usize;
                    let bad = if key == "minItems" {
                        a.len() < bound
                    } else {
                        a.len() > bound
                    };
                    if bad {
                        return Err(format!("{at}: {} items violates {key} {bound}", a.len()));
                    }
                }
            }
            "items" => {
                if let Some(a) = v.as_array() {
                    for (k, item) in a.iter().enumerate() {
                        check(root, rule, item, &format!("{at}[{k}]"))?;
                    }
                }
            }
            "required" => {
                if let Some(o) = v.as_object() {
                    for name in rule.as_array().ok_or("required must be an array")? {
                        let name = name.as_str().ok_or("required entries are strings")?;
                        if !o.contains_key(name) {
                            return Err(format!("{at}: missing required {name:?}"));
                        }
                    }
                }
            }
            "properties" => {
                if let Some(o) = v.as_object() {
                    let props = rule.as_object().ok_or("properties must be an object")?;
                    for (name, sub) in props {
                        if let Some(field) = o.get(name) {
                            check(root, sub, field, &format!("{at}.{name}"))?;
                        }
                    }
                }
            }
            "additionalProperties" => {
                if rule != &Value::Bool(false) {
                    return Err("only additionalProperties: false is supported".into());
                }
                if let Some(o) = v.as_object() {
                    let props = s.get("properties").and_then(Value::as_object);
                    for name in o.keys() {
                        if !props.is_some_and(|p| p.contains_key(name)) {
                            return Err(format!("{at}: unexpected property {name:?}"));
                        }
                    }
                }
            }
            "oneOf" => {
                let branches = rule.as_array().ok_or("oneOf must be an array")?;
                let hits = branches
                    .iter()
                    .filter(|b| check(root, b, v, at).is_ok())
                    .count();
                if hits != 1 {
                    return Err(format!("{at}: {v} matches {hits} oneOf branches"));
                }
            }
            other => return Err(format!("unsupported keyword {other} at {at}")),
        }
    }
    Ok(())
}
