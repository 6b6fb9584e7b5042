//! Structured output. Every command builds one JSON document; the text
//! rendering is computed from that document.

use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use locus_core::text::ParseError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Text,
}

/// Exit status of a successful command.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Accepted,
    Rejected,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Doc {
    pub value: Value,
    pub status: Status,
}

impl Doc {
    pub fn new(value: Value) -> Doc {
        Doc { value, status: Status::Accepted }
    }

    pub fn of<T: Serialize>(v: &T) -> Doc {
        Doc::new(serde_json::to_value(v).expect("documents serialize"))
    }

    pub fn verdict(value: Value, accepted: bool) -> Doc {
        Doc { value, status: if accepted { Status::Accepted } else { Status::Rejected } }
    }

    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Accepted => 0,
            Status::Rejected => 1,
        }
    }

    pub fn render(&self, format: Format) -> String {
        render(&self.value, format)
    }
}

pub fn render(v: &Value, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(v).expect("json values print");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut out = String::new();
            text(v, 0, &mut out);
            out
        }
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) if !s.contains('\n') => Some(s.clone()),
        Value::Array(a) if a.is_empty() => Some("(none)".into()),
        Value::Object(o) if o.is_empty() => Some("(none)".into()),
        _ => None,
    }
}

fn pad(out: &mut String, indent: usize) {
    out.extend(std::iter::repeat(' ').take(indent));
}

fn text(v: &Value, indent: usize, out: &mut String) {
    match v {
        Value::Object(o) => {
            for (k, x) in o {
                pad(out, indent);
                out.push_str(k);
                out.push(':');
                match scalar(x) {
                    Some(s) => {
                        out.push(' ');
                        out.push_str(&s);
                        out.push('\n');
                    }
                    None => {
                        out.push('\n');
                        text(x, indent + 2, out);
                    }
                }
            }
        }
        Value::Array(a) => {
            for x in a {
                match scalar(x) {
                    Some(s) => {
                        pad(out, indent);
                        out.push_str("- ");
                        out.push_str(&s);
                        out.push('\n');
                    }
                    None => {
                        pad(out, indent);
                        out.push_str("-\n");
                        text(x, indent + 2, out);
                    }
                }
            }
        }
        Value::String(s) => {
            for line in s.lines() {
                pad(out, indent);
                out.push_str(line);
                out.push('\n');
            }
        }
        other => {
            pad(out, indent);
            out.push_str(&scalar(other).unwrap_or_default());
            out.push('\n');
        }
    }
}

/// Bad input: exit code 2.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InputError {
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Invalid(String),
}

impl InputError {
    pub fn invalid(e: impl ToString) -> InputError {
        InputError::Invalid(e.to_string())
    }

    pub fn doc(&self) -> Value {
        match self {
            InputError::Parse(p) => json!({
                "error": "parse",
                "line": p.line,
                "col": p.col,
                "message": p.msg,
            }),
            InputError::Invalid(m) => json!({ "error": "invalid", "message": m }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_follows_the_document() {
        let v = json!({
            "accepted": false,
            "witness": { "kind": "cycle", "cycle": ["a", "b"] },
            "structure": "tree 0: C\ntree 1: C^\n",
            "none": [],
        });
        let t = render(&v, Format::Text);
        assert_eq!(
            t,
            "accepted: false\nnone: (none)\nstructure:\n  tree 0: C\n  tree 1: C^\nwitness:\n  cycle:\n    - a\n    - b\n  kind: cycle\n"
        );
        assert!(render(&v, Format::Json).ends_with("}\n"));
    }

    #[test]
    fn parse_errors_keep_positions() {
        let e = InputError::from(ParseError { line: 2, col: 5, msg: "expected '}'".into() });
        assert_eq!(e.doc()["line"], 2);
        assert_eq!(e.to_string(), "parse error at 2:5: expected '}'");
    }
}
