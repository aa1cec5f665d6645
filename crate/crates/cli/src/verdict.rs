use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    /// Admissible, equivalent, verified, or a plain report.
    Positive,
    /// Inadmissible, not equivalent, failing.
    Negative,
    Inconclusive,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Positive => 0,
            Status::Negative => 1,
            Status::Inconclusive => 3,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Status::Positive => "ok",
            Status::Negative => "negative",
            Status::Inconclusive => "inconclusive",
        }
    }
}

/// Human lines followed by a machine block of `key=value` lines.
pub struct Verdict {
    pub command: String,
    pub status: Status,
    pub human: Vec<String>,
    pub fields: Vec<(String, String)>,
    /// Printed verbatim instead of the two blocks (JSON output keeps it
    /// under `text`).
    pub raw: Option<String>,
}

impl Verdict {
    pub fn new(command: &str, status: Status) -> Self {
        Verdict { command: command.into(), status, human: Vec::new(), fields: Vec::new(), raw: None }
    }

    pub fn say(mut self, line: impl Into<String>) -> Self {
        self.human.push(line.into());
        self
    }

    pub fn field(mut self, key: &str, value: impl ToString) -> Self {
        self.fields.push((key.into(), value.to_string()));
        self
    }

    fn machine(&self) -> Vec<(String, String)> {
        let mut out = vec![("command".to_string(), self.command.clone()), ("status".to_string(), self.status.name().to_string())];
        out.extend(self.fields.iter().cloned());
        out.push(("semantics".into(), "generic-parameters".into()));
        out
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            let mut m = Map::new();
            for (k, v) in self.machine() {
                m.insert(k, Value::String(v));
            }
            if let Some(raw) = &self.raw {
                m.insert("text".into(), Value::String(raw.clone()));
            }
            return format!("{}\n", Value::Object(m));
        }
        if let Some(raw) = &self.raw {
            return raw.clone();
        }
        let mut out = String::new();
        for h in &self.human {
            out.push_str(&format!("# {h}\n"));
        }
        for (k, v) in self.machine() {
            out.push_str(&format!("{k}={v}\n"));
        }
        out
    }
}
