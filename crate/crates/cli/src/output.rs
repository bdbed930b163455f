use std::io::{self, Write};

use serde_json::Value;

use crate::Format;

/// Either print the text lines or the JSON value, never both.
pub fn emit(format: Format, text: &[String], json: Value) {
    match format {
        Format::Text => print_lines(text.iter().map(String::as_str)),
        Format::Json => print_json(&json),
    }
}

pub fn print_json(value: &Value) {
    print_lines([serde_json::to_string_pretty(value).expect("report serializes").as_str()]);
}

// A closed pipe (`| head`) is not an error worth reporting.
fn print_lines<'a>(lines: impl IntoIterator<Item = &'a str>) {
    let mut out = io::stdout().lock();
    for line in lines {
        if writeln!(out, "{line}").is_err() {
            return;
        }
    }
}

pub fn sci(x: f64) -> String {
    format!("{x:.3e}")
}

pub fn gap(g: Option<f64>) -> String {
    g.map_or_else(|| "exact".to_owned(), sci)
}
