//! Plain-text rendering of a JSON report: one `key: value` line per leaf,
//! nested objects indented, matrices one row per line.

use serde_json::Value;

pub fn render(v: &Value) -> String {
    let mut out = String::new();
    if let Value::Object(m) = v {
        for (k, v) in m {
            entry(&mut out, 0, k, v);
        }
    } else {
        out.push_str(&leaf(v));
        out.push('\n');
    }
    out
}

fn leaf(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(leaf).collect();
            format!("[{}]", parts.join(", "))
        }
        other => other.to_string(),
    }
}

fn entry(out: &mut String, depth: usize, key: &str, v: &Value) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(m) => {
            out.push_str(&format!("{pad}{key}:\n"));
            for (k, v) in m {
                entry(out, depth + 1, k, v);
            }
        }
        Value::Array(items) if items.iter().all(|x| matches!(x, Value::Number(_))) => {
            out.push_str(&format!("{pad}{key}: {}\n", leaf(v)));
        }
        Value::Array(items) => {
            out.push_str(&format!("{pad}{key}:\n"));
            for (i, item) in items.iter().enumerate() {
                match item {
                    Value::Object(m) => {
                        out.push_str(&format!("{pad}  [{i}]\n"));
                        for (k, v) in m {
                            entry(out, depth + 2, k, v);
                        }
                    }
                    _ => out.push_str(&format!("{pad}  {}\n", leaf(item))),
                }
            }
        }
        _ => out.push_str(&format!("{pad}{key}: {}\n", leaf(v))),
    }
}
