//! The one formatter every subcommand goes through.

use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
}

/// A computed result in every format it supports; `dot` is present only for graphs.
pub struct Report {
    pub text: String,
    pub json: Value,
    pub dot: Option<String>,
}

impl Report {
    pub fn new(text: impl Into<String>, json: Value) -> Self {
        Report {
            text: text.into(),
            json,
            dot: None,
        }
    }

    /// The output for `format`, or `None` when the format does not apply.
    pub fn render(&self, format: Format) -> Option<String> {
        let mut out = match format {
            Format::Text => self.text.clone(),
            Format::Json => serde_json::to_string_pretty(&self.json).expect("values serialize"),
            Format::Dot => self.dot.clone()?,
        };
        if !out.ends_with('\n') {
            out.push('\n');
        }
        Some(out)
    }
}
