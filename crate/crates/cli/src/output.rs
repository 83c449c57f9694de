use std::io::{self, Write};
use std::process::ExitCode;

use clap::ValueEnum;
use serde_json::{json, Value};

use poset_operads::Error;

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

/// What a command prints, in both formats, and whether it succeeded.
pub struct Rendered {
    json: Option<Value>,
    text: String,
    pub ok: bool,
}

impl Rendered {
    pub fn text(json: Value, text: String) -> Self {
        Rendered {
            json: Some(json),
            text,
            ok: true,
        }
    }

    /// Same text in either format.
    pub fn raw(text: String) -> Self {
        Rendered {
            json: None,
            text: text.trim_end().to_owned(),
            ok: true,
        }
    }

    pub fn nothing() -> Self {
        Rendered::raw(String::new())
    }

    pub fn table(json: Value, headers: &[&str], rows: Vec<Vec<String>>) -> Self {
        Rendered::text(json, align(headers, &rows))
    }

    pub fn failed(mut self) -> Self {
        self.ok = false;
        self
    }

    pub fn emit(self, format: Format) -> ExitCode {
        let body = match (format, self.json) {
            (Format::Json, Some(v)) => serde_json::to_string_pretty(&v).expect("values serialize"),
            _ => self.text,
        };
        if !body.is_empty() {
            let mut out = io::stdout().lock();
            // A closed pipe is not worth a panic.
            let _ = writeln!(out, "{body}");
        }
        if self.ok {
            ExitCode::SUCCESS
        } else {
            ExitCode::FAILURE
        }
    }
}

/// Left-aligned columns separated by two spaces.
pub fn align(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let fmt_row = |cells: Vec<&str>| -> String {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
            .collect();
        padded.join("  ").trim_end().to_owned()
    };
    let mut lines = vec![fmt_row(headers.to_vec())];
    lines.extend(rows.iter().map(|r| fmt_row(r.iter().map(String::as_str).collect())));
    lines.join("\n")
}

pub fn line(out: &mut impl Write, text: &str) -> anyhow::Result<()> {
    match writeln!(out, "{text}") {
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => Ok(()),
        r => Ok(r?),
    }
}

fn kind(e: &Error) -> &'static str {
    match e {
        Error::DuplicateLabel(_) => "duplicate_label",
        Error::UnknownLabel(_) => "unknown_label",
        Error::CycleDetected { .. } => "cycle_detected",
        Error::LabelClash(_) => "label_clash",
        Error::GroundSetMismatch => "ground_set_mismatch",
        Error::NotConvex(_) => "not_convex",
        Error::EmptySubset => "empty_subset",
        Error::SizeLimitExceeded { .. } => "size_limit_exceeded",
        Error::VertexNotFound(_) => "vertex_not_found",
        Error::EmptyInner => "empty_inner",
        Error::NotWn => "not_wn",
        Error::NotNablaCompatible => "not_nabla_compatible",
        Error::EmptyPoset => "empty_poset",
        Error::NotBinary => "not_binary",
        Error::Document(_) => "invalid_document",
    }
}

/// `{"error": kind, "message": text}` on stderr.
pub fn report_error(e: &anyhow::Error) {
    let kind = e.downcast_ref::<Error>().map_or("io", kind);
    let msg = format!("{e:#}");
    eprintln!("{}", json!({"error": kind, "message": msg}));
}
