//! Plain-text reports: a header with the command and input digest, then
//! `[section]` blocks of `key: value` lines.

use std::fmt::Write as _;

use sha2::{Digest, Sha256};

/// Hex SHA-256 of the input bytes.
pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    lines: Vec<String>,
}

impl Report {
    pub fn new(command: &str, input: &[u8]) -> Self {
        Report {
            lines: vec![
                format!("command: {command}"),
                format!("input-sha256: {}", digest(input)),
            ],
        }
    }

    pub fn seed(&mut self, seed: u64) -> &mut Self {
        self.kv("seed", seed)
    }

    pub fn section(&mut self, name: &str) -> &mut Self {
        self.lines.push(format!("[{name}]"));
        self
    }

    pub fn kv(&mut self, key: &str, value: impl std::fmt::Display) -> &mut Self {
        self.lines.push(format!("{key}: {value}"));
        self
    }

    pub fn line(&mut self, text: impl Into<String>) -> &mut Self {
        self.lines.push(text.into());
        self
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for l in &self.lines {
            let _ = writeln!(out, "{l}");
        }
        out
    }

    /// Every line prefixed with `# `, for embedding above a document.
    pub fn render_commented(&self) -> String {
        let mut out = String::new();
        for l in &self.lines {
            let _ = writeln!(out, "# {l}");
        }
        out
    }
}

/// `{a,b}, {c}` style listing of property names.
pub fn list(names: &[String]) -> String {
    if names.is_empty() {
        "(none)".into()
    } else {
        names.join(" ")
    }
}
