//! JSON, CSV and aligned-table output.

use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

const MAX_DIGITS: usize = 30;

enum Block {
    /// key followed by one or more values
    Line(String, Vec<String>),
    Table { name: String, header: Vec<String>, rows: Vec<Vec<String>> },
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Bool(b) => b.to_string(),
        Value::Number(n) => n.to_string(),
        other => other.to_string(),
    }
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<Block>) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, x, out);
            }
        }
        Value::Array(items) if items.iter().all(is_scalar) => {
            out.push(Block::Line(prefix.to_string(), items.iter().map(scalar).collect()));
        }
        Value::Array(items) if items.iter().all(|x| x.is_object()) => {
            let mut header: Vec<String> = Vec::new();
            for it in items {
                for k in it.as_object().expect("object").keys() {
                    if !header.contains(k) {
                        header.push(k.clone());
                    }
                }
            }
            let rows = items
                .iter()
                .map(|it| {
                    header
                        .iter()
                        .map(|k| it.get(k).map(|x| if is_scalar(x) { scalar(x) } else { x.to_string() }).unwrap_or_default())
                        .collect()
                })
                .collect();
            out.push(Block::Table { name: prefix.to_string(), header, rows });
        }
        Value::Array(items) => {
            out.push(Block::Line(prefix.to_string(), items.iter().map(|x| x.to_string()).collect()));
        }
        _ => out.push(Block::Line(prefix.to_string(), vec![scalar(v)])),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Shortens long integers for display.
pub fn truncate_int(s: &str) -> String {
    let digits = s.strip_prefix('-').unwrap_or(s);
    if digits.len() > MAX_DIGITS && digits.bytes().all(|b| b.is_ascii_digit()) {
        let sign = if s.starts_with('-') { "-" } else { "" };
        format!("{sign}{}…({} digits)", &digits[..MAX_DIGITS], digits.len())
    } else {
        s.to_string()
    }
}

fn render_csv(blocks: &[Block]) -> String {
    let mut s = String::new();
    for b in blocks {
        match b {
            Block::Line(k, vals) => {
                let mut fields = vec![csv_field(k)];
                fields.extend(vals.iter().map(|v| csv_field(v)));
                s.push_str(&fields.join(","));
                s.push('\n');
            }
            Block::Table { name, header, rows } => {
                s.push_str(&format!("# {name}\n"));
                s.push_str(&header.iter().map(|h| csv_field(h)).collect::<Vec<_>>().join(","));
                s.push('\n');
                for r in rows {
                    s.push_str(&r.iter().map(|v| csv_field(v)).collect::<Vec<_>>().join(","));
                    s.push('\n');
                }
            }
        }
    }
    s
}

fn width(s: &str) -> usize {
    s.chars().count()
}

fn render_table(blocks: &[Block]) -> String {
    let mut s = String::new();
    let key_w = blocks
        .iter()
        .filter_map(|b| match b {
            Block::Line(k, _) => Some(width(k)),
            _ => None,
        })
        .max()
        .unwrap_or(0);
    for b in blocks {
        match b {
            Block::Line(k, vals) => {
                let vals: Vec<String> = vals.iter().map(|v| truncate_int(v)).collect();
                s.push_str(&format!("{k}{}  {}\n", " ".repeat(key_w - width(k)), vals.join(" ")));
            }
            Block::Table { name, header, rows } => {
                let rows: Vec<Vec<String>> =
                    rows.iter().map(|r| r.iter().map(|v| truncate_int(v)).collect()).collect();
                let mut w: Vec<usize> = header.iter().map(|h| width(h)).collect();
                for r in &rows {
                    for (i, v) in r.iter().enumerate() {
                        w[i] = w[i].max(width(v));
                    }
                }
                let line = |cells: &[String]| {
                    cells
                        .iter()
                        .enumerate()
                        .map(|(i, c)| format!("{c}{}", " ".repeat(w[i] - width(c))))
                        .collect::<Vec<_>>()
                        .join("  ")
                        .trim_end()
                        .to_string()
                };
                s.push_str(&format!("\n[{name}]\n{}\n", line(header)));
                for r in &rows {
                    s.push_str(&line(r));
                    s.push('\n');
                }
            }
        }
    }
    s
}

pub fn render(v: &Value, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(v).expect("serializable");
            s.push('\n');
            s
        }
        Format::Csv | Format::Table => {
            let mut blocks = Vec::new();
            flatten("", v, &mut blocks);
            if format == Format::Csv {
                render_csv(&blocks)
            } else {
                render_table(&blocks)
            }
        }
    }
}
