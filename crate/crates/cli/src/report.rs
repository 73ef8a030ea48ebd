use serde::Serialize;
use serde_json::Value;

/// The outcome of a subcommand, printed as text lines or as one JSON
/// document.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub passed: bool,
    pub lines: Vec<String>,
    pub data: Value,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report { command: command.into(), passed: true, lines: Vec::new(), data: Value::Object(Default::default()) }
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    /// Records a named verdict in both outputs.
    pub fn verdict(&mut self, name: &str, ok: bool, detail: Option<String>) {
        let mut s = format!("{name}: {}", if ok { "yes" } else { "no" });
        if let Some(d) = &detail {
            s.push_str(&format!(" ({d})"));
        }
        self.lines.push(s);
        self.set(name, serde_json::json!({ "holds": ok, "detail": detail }));
    }

    pub fn set(&mut self, key: &str, v: impl Serialize) {
        let v = serde_json::to_value(v).expect("report data serializes");
        if let Value::Object(m) = &mut self.data {
            m.insert(key.to_string(), v);
        }
    }

    pub fn text(&self) -> String {
        let mut out = self.lines.join("\n");
        out.push('\n');
        out
    }

    pub fn json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }
}
