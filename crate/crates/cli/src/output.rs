//! Rendering of JSON reports as JSON, CSV or `key = value` text.

use serde_json::{Map, Value};

use crate::args::OutFormat;

pub fn render(value: &Value, format: OutFormat) -> String {
    match format {
        OutFormat::Json => {
            let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
            s.push('\n');
            s
        }
        OutFormat::Text => {
            let mut out = String::new();
            for (k, v) in flatten(value, "") {
                out.push_str(&format!("{k} = {v}\n"));
            }
            out
        }
        OutFormat::Csv => csv_table(value),
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some(String::new()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        _ => None,
    }
}

fn join_key(prefix: &str, key: &str) -> String {
    if prefix.is_empty() {
        key.to_string()
    } else {
        format!("{prefix}.{key}")
    }
}

/// Dotted keys for nested objects; arrays of scalars become one
/// space-separated cell, other arrays are indexed.
fn flatten(v: &Value, prefix: &str) -> Vec<(String, String)> {
    if let Some(s) = scalar(v) {
        let key = if prefix.is_empty() { "value" } else { prefix };
        return vec![(key.to_string(), s)];
    }
    match v {
        Value::Object(m) => m.iter().flat_map(|(k, x)| flatten(x, &join_key(prefix, k))).collect(),
        Value::Array(items) => {
            if let Some(cells) = items.iter().map(scalar).collect::<Option<Vec<_>>>() {
                let key = if prefix.is_empty() { "value" } else { prefix };
                return vec![(key.to_string(), cells.join(" "))];
            }
            items
                .iter()
                .enumerate()
                .flat_map(|(i, x)| flatten(x, &join_key(prefix, &i.to_string())))
                .collect()
        }
        _ => unreachable!(),
    }
}

/// A top-level array is one row per element. An object holding an array of
/// objects is one row per element, with the object's scalar fields repeated
/// on every row. Anything else is a single row.
fn csv_table(value: &Value) -> String {
    let rows: Vec<Vec<(String, String)>> = match value {
        Value::Array(items) if items.iter().all(Value::is_object) => items.iter().map(|x| flatten(x, "")).collect(),
        Value::Object(m) => match row_array(m) {
            Some((key, items)) => {
                let shared: Vec<(String, String)> = m
                    .iter()
                    .filter(|(k, _)| *k != key)
                    .flat_map(|(k, x)| flatten(x, k))
                    .collect();
                items
                    .iter()
                    .map(|x| shared.iter().cloned().chain(flatten(x, "")).collect())
                    .collect()
            }
            None => vec![flatten(value, "")],
        },
        _ => vec![flatten(value, "")],
    };
    let mut header: Vec<String> = Vec::new();
    for row in &rows {
        for (k, _) in row {
            if !header.contains(k) {
                header.push(k.clone());
            }
        }
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&header).expect("in-memory write");
    for row in &rows {
        let record = header
            .iter()
            .map(|h| row.iter().find(|(k, _)| k == h).map_or("", |(_, v)| v.as_str()));
        w.write_record(record).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 cells")
}

fn row_array(m: &Map<String, Value>) -> Option<(&String, &Vec<Value>)> {
    m.iter().find_map(|(k, v)| match v {
        Value::Array(items) if !items.is_empty() && items.iter().all(Value::is_object) => Some((k, items)),
        _ => None,
    })
}
