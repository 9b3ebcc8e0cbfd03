//! Text tables and JSON lines for reports.

use std::io::{self, Write};

use kronrad::bounds::RelationKind;
use kronrad::BoundReport;
use serde::Serialize;

/// A serialisable value tagged with the report name.
#[derive(Serialize)]
pub struct Tagged<'a, R: Serialize> {
    pub report: &'a str,
    #[serde(flatten)]
    pub body: &'a R,
}

/// Writes `value` as one JSON line tagged with `name`.
pub fn json_line<R: Serialize>(out: &mut dyn Write, name: &str, value: &R) -> io::Result<()> {
    let line = serde_json::to_string(&Tagged { report: name, body: value }).map_err(io::Error::other)?;
    writeln!(out, "{line}")
}

/// `# name | anchors: a; b; c`, listing each distinct anchor once.
pub fn header(out: &mut dyn Write, name: &str, anchors: &[&str]) -> io::Result<()> {
    let mut seen: Vec<&str> = Vec::new();
    for a in anchors {
        if !seen.contains(a) {
            seen.push(a);
        }
    }
    writeln!(out, "# {name} | anchors: {}", seen.join("; "))
}

/// Header, entry table, relation table and the JSON line for one report.
pub fn bound_report(out: &mut dyn Write, name: &str, r: &BoundReport<f64>, tol: f64, json_only: bool) -> io::Result<()> {
    if !json_only {
        let anchors: Vec<&str> = r.entries.iter().map(|e| e.anchor.as_str()).collect();
        header(out, name, &anchors)?;
        let width = r.entries.iter().map(|e| e.name.len()).max().unwrap_or(0).max(5);
        for e in &r.entries {
            writeln!(out, "  {:<width$}  {:>22.15e}  {}", e.name, e.value, e.anchor)?;
        }
        for rel in &r.relations {
            let op = match rel.kind {
                RelationKind::Le => "<=",
                RelationKind::Eq => "==",
            };
            let verdict = if rel.holds(tol) { "ok" } else { "VIOLATED" };
            let text = format!("{} {op} {}", rel.lhs, rel.rhs);
            writeln!(out, "  {text:<40}  slack {:>10.3e}  {verdict}", rel.slack)?;
        }
    }
    json_line(out, name, r)
}
