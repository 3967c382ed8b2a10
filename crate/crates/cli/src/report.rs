use std::io::Write;
use std::path::Path;

use serde_json::Value;

/// Result of one command: a JSON document, the rows of its text table, and whether
/// every checked invariant held.
pub struct Report {
    pub json: Value,
    pub rows: Vec<(String, String)>,
    pub ok: bool,
}

impl Report {
    pub fn new(json: Value) -> Self {
        Report {
            json,
            rows: Vec::new(),
            ok: true,
        }
    }

    pub fn row(mut self, key: impl Into<String>, value: impl ToString) -> Self {
        self.rows.push((key.into(), value.to_string()));
        self
    }

    pub fn failed(mut self) -> Self {
        self.ok = false;
        self
    }

    pub fn table(&self) -> String {
        let width = self.rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
        self.rows
            .iter()
            .map(|(k, v)| format!("{k:<width$}  {v}\n"))
            .collect()
    }

    pub fn json_text(&self) -> String {
        let mut text = serde_json::to_string_pretty(&self.json).expect("reports are plain JSON");
        text.push('\n');
        text
    }

    pub fn emit(&self, json_stdout: bool, report_path: Option<&Path>) -> std::io::Result<()> {
        if let Some(path) = report_path {
            std::fs::write(path, self.json_text())?;
        }
        let out = if json_stdout { self.json_text() } else { self.table() };
        std::io::stdout().write_all(out.as_bytes())
    }
}
