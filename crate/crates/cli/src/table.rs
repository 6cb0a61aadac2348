//! Plain-text rendering of a run report.

use serde_json::{Map, Value};

pub fn render(report: &Value) -> String {
    let mut out = String::new();
    if let Some(cmd) = report["command"].as_array() {
        let words: Vec<&str> = cmd.iter().filter_map(Value::as_str).collect();
        out.push_str(&format!("$ brake-index {}\n", words.join(" ")));
    }
    if let Some(err) = report.get("error") {
        out.push_str(&format!("error {}: {}\n", scalar(&err["kind"]), scalar(&err["message"])));
        return out;
    }
    if let Some(results) = report["results"].as_object() {
        section(&mut out, results, 0);
    }
    let cex = report["counterexamples"].as_array().map_or(&[][..], Vec::as_slice);
    if cex.is_empty() {
        out.push_str("counterexamples: none\n");
    } else {
        out.push_str(&format!("counterexamples: {}\n", cex.len()));
        for c in cex {
            out.push_str(&format!("  {}: {}\n", scalar(&c["case"]), scalar(&c["detail"])));
        }
    }
    out
}

fn section(out: &mut String, obj: &Map<String, Value>, depth: usize) {
    let pad = "  ".repeat(depth);
    for (key, value) in obj {
        match value {
            Value::Array(rows) if rows.iter().all(Value::is_object) && !rows.is_empty() => {
                out.push_str(&format!("{pad}{key}:\n"));
                grid(out, rows, depth + 1);
            }
            Value::Object(inner) => {
                out.push_str(&format!("{pad}{key}:\n"));
                section(out, inner, depth + 1);
            }
            other => out.push_str(&format!("{pad}{key}: {}\n", scalar(other))),
        }
    }
}

fn grid(out: &mut String, rows: &[Value], depth: usize) {
    let mut columns: Vec<String> = Vec::new();
    for row in rows {
        for key in row.as_object().into_iter().flat_map(Map::keys) {
            if !columns.contains(key) {
                columns.push(key.clone());
            }
        }
    }
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| columns.iter().map(|c| r.get(c).map_or(String::new(), scalar)).collect())
        .collect();
    let widths: Vec<usize> = columns
        .iter()
        .enumerate()
        .map(|(i, c)| cells.iter().map(|r| r[i].len()).chain([c.len()]).max().unwrap_or(0))
        .collect();
    let pad = "  ".repeat(depth);
    let line = |vals: &[String]| {
        let parts: Vec<String> = vals.iter().zip(&widths).map(|(v, w)| format!("{v:<w$}")).collect();
        format!("{pad}{}\n", parts.join("  ").trim_end())
    };
    out.push_str(&line(&columns));
    for r in &cells {
        out.push_str(&line(r));
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        Value::Array(items) => format!("({})", items.iter().map(scalar).collect::<Vec<_>>().join(",")),
        other => other.to_string(),
    }
}
