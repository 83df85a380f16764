//! Plain-text rendering of any output value: scalars inline, string maps as
//! two-column tables, arrays of records as tables with one row each.

use std::fmt::Write;

use serde_json::{Map, Value};

pub fn render(value: &Value) -> String {
    let mut out = String::new();
    block(&mut out, value, 0);
    out
}

fn block(out: &mut String, value: &Value, indent: usize) {
    let pad = " ".repeat(indent);
    match value {
        Value::Object(map) if is_flat(map) && !map.is_empty() && indent > 0 => pairs(out, map, indent),
        Value::Object(map) => {
            for (key, v) in map {
                if let Some(text) = inline(v) {
                    let _ = writeln!(out, "{pad}{key}: {text}");
                } else {
                    let _ = writeln!(out, "{pad}{key}:");
                    block(out, v, indent + 2);
                }
            }
        }
        Value::Array(items) if items.iter().all(Value::is_object) => table(out, items, indent),
        Value::Array(items) => {
            for item in items {
                match inline(item) {
                    Some(text) => {
                        let _ = writeln!(out, "{pad}- {text}");
                    }
                    None => block(out, item, indent + 2),
                }
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", inline(other).unwrap_or_default());
        }
    }
}

/// A one-line rendering for scalars and arrays of scalars.
fn inline(value: &Value) -> Option<String> {
    match value {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(if *b { "yes" } else { "no" }.into()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) if items.is_empty() => Some("[]".into()),
        Value::Array(items) if items.iter().all(is_scalar) => {
            Some(format!("[{}]", items.iter().filter_map(inline).collect::<Vec<_>>().join(", ")))
        }
        Value::Object(map) if map.is_empty() => Some("{}".into()),
        _ => None,
    }
}

fn is_scalar(value: &Value) -> bool {
    !matches!(value, Value::Array(_) | Value::Object(_))
}

fn is_flat(map: &Map<String, Value>) -> bool {
    map.values().all(is_scalar)
}

fn pairs(out: &mut String, map: &Map<String, Value>, indent: usize) {
    let pad = " ".repeat(indent);
    let width = map.keys().map(|k| k.chars().count()).max().unwrap_or(0);
    for (key, v) in map {
        let _ = writeln!(out, "{pad}{key:<width$}  {}", inline(v).unwrap_or_default());
    }
}

fn table(out: &mut String, rows: &[Value], indent: usize) {
    let pad = " ".repeat(indent);
    let mut columns: Vec<&str> = Vec::new();
    for row in rows {
        for key in row.as_object().into_iter().flat_map(|m| m.keys()) {
            if !columns.contains(&key.as_str()) {
                columns.push(key);
            }
        }
    }
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|row| {
            columns
                .iter()
                .map(|c| match row.get(*c) {
                    Some(v) => inline(v).unwrap_or_else(|| v.to_string()),
                    None => "-".into(),
                })
                .collect()
        })
        .collect();
    let widths: Vec<usize> = columns
        .iter()
        .enumerate()
        .map(|(i, c)| cells.iter().map(|r| r[i].chars().count()).chain([c.chars().count()]).max().unwrap_or(0))
        .collect();
    let line = |out: &mut String, items: Vec<&str>| {
        let text: Vec<String> = items.iter().zip(&widths).map(|(s, w)| format!("{s:<w$}")).collect();
        let _ = writeln!(out, "{pad}{}", text.join("  ").trim_end());
    };
    line(out, columns.clone());
    line(out, widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().iter().map(String::as_str).collect());
    for row in &cells {
        line(out, row.iter().map(String::as_str).collect());
    }
}
