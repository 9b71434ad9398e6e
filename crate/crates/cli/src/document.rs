//! Output documents and their rendering.

use std::collections::BTreeMap;

use kstab_core::rational::{fmt_q, parse_q, to_f64};
use kstab_core::Q;
use serde::Serialize;
use serde_json::Value;

pub const TOOL: &str = "kstab";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// What a subcommand produced, before rendering.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub command: &'static str,
    pub input: Value,
    pub seed: Option<u64>,
    /// Agreement flags between independent computations of the same value.
    pub checks: BTreeMap<String, bool>,
    pub result: Value,
    pub summary: Vec<String>,
    pub svg: Option<String>,
}

impl Outcome {
    pub fn new(command: &'static str, input: Value) -> Self {
        Outcome {
            command,
            input,
            seed: None,
            checks: BTreeMap::new(),
            result: Value::Null,
            summary: Vec::new(),
            svg: None,
        }
    }

    pub fn check(&mut self, name: &str, passed: bool) {
        self.checks.insert(name.to_string(), passed);
    }

    pub fn all_checks_pass(&self) -> bool {
        self.checks.values().all(|&x| x)
    }
}

#[derive(Debug, Serialize)]
pub struct Document<'a> {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub input: &'a Value,
    pub seed: Option<u64>,
    pub cap: usize,
    pub checks: &'a BTreeMap<String, bool>,
    pub checks_passed: bool,
    pub result: &'a Value,
    #[serde(
        rename = "approximate_non_authoritative",
        skip_serializing_if = "Option::is_none"
    )]
    pub approximate: Option<Value>,
}

impl<'a> Document<'a> {
    pub fn new(outcome: &'a Outcome, cap: usize, decimal: bool) -> Self {
        Document {
            tool: TOOL,
            version: VERSION,
            command: outcome.command,
            input: &outcome.input,
            seed: outcome.seed,
            cap,
            checks: &outcome.checks,
            checks_passed: outcome.all_checks_pass(),
            result: &outcome.result,
            approximate: decimal.then(|| approximate(&outcome.result)),
        }
    }

    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents serialize");
        s.push('\n');
        s
    }
}

fn looks_rational(s: &str) -> bool {
    !s.is_empty()
        && s.chars()
            .all(|c| c.is_ascii_digit() || c == '/' || c == '-')
        && s.chars().any(|c| c.is_ascii_digit())
}

/// Copy of `v` with every rational string replaced by a float.
pub fn approximate(v: &Value) -> Value {
    match v {
        Value::String(s) if looks_rational(s) => match parse_q(s) {
            Ok(x) => {
                serde_json::Number::from_f64(to_f64(&x)).map_or_else(|| v.clone(), Value::Number)
            }
            Err(_) => v.clone(),
        },
        Value::Array(items) => Value::Array(items.iter().map(approximate).collect()),
        Value::Object(map) => Value::Object(
            map.iter()
                .map(|(k, x)| (k.clone(), approximate(x)))
                .collect(),
        ),
        _ => v.clone(),
    }
}

pub fn strings(xs: &[Q]) -> Vec<String> {
    xs.iter().map(fmt_q).collect()
}

/// `(5/6, 5/6)`, with an approximate column when asked for.
pub fn tuple(xs: &[Q], decimal: bool) -> String {
    let exact = format!("({})", strings(xs).join(", "));
    if decimal {
        let approx: Vec<String> = xs.iter().map(|x| format!("{:.6}", to_f64(x))).collect();
        format!(
            "{exact}  [approx. ({}), non-authoritative]",
            approx.join(", ")
        )
    } else {
        exact
    }
}

pub fn scalar(x: &Q, decimal: bool) -> String {
    if decimal {
        format!(
            "{}  [approx. {:.6}, non-authoritative]",
            fmt_q(x),
            to_f64(x)
        )
    } else {
        fmt_q(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use kstab_core::rational::qr;
    use serde_json::json;

    #[test]
    fn approximation_touches_only_rationals() {
        let v =
            json!({"a": ["5/6", "-1"], "status": "unstable", "w": [1, -1], "label": "random[0]"});
        let a = approximate(&v);
        assert_eq!(a["a"][1], json!(-1.0));
        assert_eq!(a["status"], json!("unstable"));
        assert_eq!(a["w"], json!([1, -1]));
        assert_eq!(a["label"], json!("random[0]"));
    }

    #[test]
    fn tuples() {
        assert_eq!(tuple(&[qr(5, 6), qr(5, 6)], false), "(5/6, 5/6)");
        assert!(tuple(&[qr(1, 2)], true).contains("0.500000"));
    }
}
