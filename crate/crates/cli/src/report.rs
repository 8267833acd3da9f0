//! Line-per-check reports with a plain text rendering and a JSON twin.

use std::fmt::Write as _;
use std::sync::Arc;

use serde::Serialize;
use serde_json::Value;

/// Re-evaluates a failing line's witness; returns whether the check still
/// fails.
pub type Recheck = Arc<dyn Fn() -> bool + Send + Sync>;

#[derive(Clone, Serialize)]
pub struct Line {
    pub id: String,
    pub pass: bool,
    pub witness: Value,
    #[serde(skip)]
    recheck: Option<Recheck>,
}

impl std::fmt::Debug for Line {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Line")
            .field("id", &self.id)
            .field("pass", &self.pass)
            .field("witness", &self.witness)
            .finish()
    }
}

impl Line {
    pub fn new(id: impl Into<String>, pass: bool, witness: Value) -> Line {
        Line {
            id: id.into(),
            pass,
            witness,
            recheck: None,
        }
    }

    /// Attaches an independent re-evaluation of the witness.
    pub fn with_recheck(mut self, f: impl Fn() -> bool + Send + Sync + 'static) -> Line {
        self.recheck = Some(Arc::new(f));
        self
    }

    pub fn verdict(&self) -> &'static str {
        if self.pass {
            "PASS"
        } else {
            "FAIL"
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub lines: Vec<Line>,
}

impl Report {
    pub fn new() -> Report {
        Report::default()
    }

    pub fn push(&mut self, line: Line) {
        self.lines.push(line);
    }

    pub fn extend(&mut self, lines: impl IntoIterator<Item = Line>) {
        self.lines.extend(lines);
    }

    pub fn passed(&self) -> bool {
        self.lines.iter().all(|l| l.pass)
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    /// Re-evaluates the witness of every FAIL line and appends one
    /// `verify/<id>` line each. A line without a re-check, or whose witness
    /// no longer fails, yields a FAIL.
    pub fn verify_witnesses(&mut self) {
        let extra: Vec<Line> = self
            .lines
            .iter()
            .filter(|l| !l.pass)
            .map(|l| {
                let (pass, note) = match &l.recheck {
                    Some(f) if f() => (true, "witness reproduces the failure"),
                    Some(_) => (false, "witness does not reproduce the failure"),
                    None => (false, "no independent re-check for this line"),
                };
                Line::new(format!("verify/{}", l.id), pass, Value::String(note.into()))
            })
            .collect();
        self.lines.extend(extra);
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => {
                let mut out = String::new();
                for l in &self.lines {
                    write!(out, "{} {}", l.verdict(), l.id).expect("string write");
                    if !l.witness.is_null() {
                        write!(out, " {}", l.witness).expect("string write");
                    }
                    out.push('\n');
                }
                out
            }
            Format::Json => {
                let lines: Vec<Value> = self
                    .lines
                    .iter()
                    .map(|l| serde_json::json!({"id": l.id, "verdict": l.verdict(), "witness": l.witness}))
                    .collect();
                let mut s = serde_json::to_string_pretty(&serde_json::json!({
                    "passed": self.passed(),
                    "lines": lines,
                }))
                .expect("serializable");
                s.push('\n');
                s
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn text_and_json_renderings() {
        let mut r = Report::new();
        r.push(Line::new("a", true, Value::Null));
        r.push(Line::new("b", false, json!({"x": 1})));
        assert_eq!(r.render(Format::Text), "PASS a\nFAIL b {\"x\":1}\n");
        let v: Value = serde_json::from_str(&r.render(Format::Json)).unwrap();
        assert_eq!(v["passed"], json!(false));
        assert_eq!(v["lines"][1]["verdict"], json!("FAIL"));
        assert_eq!(r.exit_code(), 1);
    }

    #[test]
    fn verification_lines() {
        let mut r = Report::new();
        r.push(Line::new("kept", false, Value::Null).with_recheck(|| true));
        r.push(Line::new("flaky", false, Value::Null).with_recheck(|| false));
        r.push(Line::new("bare", false, Value::Null));
        r.push(Line::new("fine", true, Value::Null));
        r.verify_witnesses();
        let tail: Vec<(&str, bool)> = r.lines[4..]
            .iter()
            .map(|l| (l.id.as_str(), l.pass))
            .collect();
        assert_eq!(
            tail,
            [
                ("verify/kept", true),
                ("verify/flaky", false),
                ("verify/bare", false)
            ]
        );
    }
}
