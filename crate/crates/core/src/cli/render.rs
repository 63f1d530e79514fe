//! Rendering of tables and reports in the output formats.

use clap::ValueEnum;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::levels::tables::Table;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
    Csv,
    Markdown,
    Dot,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Text => "txt",
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Markdown => "md",
            Format::Dot => "dot",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Format::Text => "text",
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Markdown => "markdown",
            Format::Dot => "dot",
        }
    }
}

/// Pick the requested format, or the first allowed one.
pub fn choose(requested: Option<Format>, allowed: &[Format]) -> Result<Format> {
    match requested {
        None => Ok(allowed[0]),
        Some(f) if allowed.contains(&f) => Ok(f),
        Some(f) => Err(Error::Invalid(format!(
            "format {} is not available here (use one of: {})",
            f.name(),
            allowed.iter().map(|a| a.name()).collect::<Vec<_>>().join(", ")
        ))),
    }
}

pub const TABLE_FORMATS: [Format; 4] = [Format::Markdown, Format::Json, Format::Csv, Format::Text];

pub fn pretty_json(v: &serde_json::Value) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

pub fn table_json(t: &Table) -> serde_json::Value {
    serde_json::json!({
        "schema": "collapsing.table/1",
        "name": t.name,
        "title": t.title,
        "headers": t.headers,
        "rows": t.rows,
    })
}

pub fn render_table(t: &Table, format: Format) -> Result<String> {
    match format {
        Format::Markdown => Ok(markdown(t)),
        Format::Json => pretty_json(&table_json(t)),
        Format::Csv => csv_text(t),
        Format::Text => Ok(text(t)),
        Format::Dot => Err(Error::Invalid("tables have no DOT rendering".into())),
    }
}

fn markdown(t: &Table) -> String {
    let esc = |s: &str| s.replace('|', "\\|");
    let line = |cells: &[String]| format!("| {} |\n", cells.iter().map(|c| esc(c)).collect::<Vec<_>>().join(" | "));
    let mut s = format!("## {}\n\n", t.title);
    s.push_str(&line(&t.headers));
    s.push_str(&format!("|{}\n", "---|".repeat(t.headers.len())));
    for r in &t.rows {
        s.push_str(&line(r));
    }
    s
}

fn csv_text(t: &Table) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Io(std::io::Error::other(e));
    w.write_record(&t.headers).map_err(io)?;
    for r in &t.rows {
        w.write_record(r).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(std::io::Error::other(e.to_string())))?;
    String::from_utf8(bytes).map_err(|e| Error::Io(std::io::Error::other(e)))
}

/// Display width ignoring combining marks.
fn width(s: &str) -> usize {
    s.chars().filter(|c| !('\u{300}'..='\u{36f}').contains(c)).count()
}

fn text(t: &Table) -> String {
    let cols = t.headers.len();
    let mut w: Vec<usize> = t.headers.iter().map(|h| width(h)).collect();
    for r in &t.rows {
        for (i, c) in r.iter().enumerate().take(cols) {
            w[i] = w[i].max(width(c));
        }
    }
    let line = |cells: &[String]| {
        let padded: Vec<String> =
            cells.iter().enumerate().map(|(i, c)| format!("{c}{}", " ".repeat(w[i] - width(c)))).collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut s = format!("{}\n\n", t.title);
    s.push_str(&line(&t.headers));
    s.push_str(&line(&w.iter().map(|n| "-".repeat(*n)).collect::<Vec<_>>()));
    for r in &t.rows {
        s.push_str(&line(r));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Table {
        Table {
            name: "t".into(),
            title: "Sample".into(),
            headers: vec!["a".into(), "b|c".into()],
            rows: vec![vec!["1".into(), "x, y".into()], vec!["O\u{304}".into(), "2".into()]],
        }
    }

    #[test]
    fn markdown_escapes_pipes() {
        let s = render_table(&sample(), Format::Markdown).unwrap();
        assert_eq!(s, "## Sample\n\n| a | b\\|c |\n|---|---|\n| 1 | x, y |\n| O\u{304} | 2 |\n");
    }

    #[test]
    fn csv_quotes_commas() {
        let s = render_table(&sample(), Format::Csv).unwrap();
        assert_eq!(s, "a,b|c\n1,\"x, y\"\nO\u{304},2\n");
    }

    #[test]
    fn text_aligns_on_display_width() {
        let s = render_table(&sample(), Format::Text).unwrap();
        assert_eq!(s, "Sample\n\na  b|c\n-  ----\n1  x, y\nO\u{304}  2\n");
    }

    #[test]
    fn format_choice() {
        assert_eq!(choose(None, &TABLE_FORMATS).unwrap(), Format::Markdown);
        assert!(matches!(choose(Some(Format::Dot), &TABLE_FORMATS), Err(Error::Invalid(_))));
    }
}
