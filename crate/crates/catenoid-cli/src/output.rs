//! Deterministic CSV / JSON rendering.
//!
//! Every command assembles a [`Table`] and renders it in one shot: a single
//! `#` metadata line (tool version plus the echoed configuration), a header
//! row, then data rows with reals printed at 17 significant digits. The JSON
//! form mirrors the same schema as `{ "meta": {...}, "rows": [...] }` with
//! keys sorted; reruns with the same arguments are byte-identical.

use std::fmt::Write as _;

#[derive(Debug, Clone)]
pub enum Cell {
    Float(f64),
    Int(i64),
    Str(String),
}

#[derive(Debug, Clone)]
pub struct Table {
    /// Ordered configuration echo for the metadata line.
    pub meta: Vec<(String, String)>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(command: &str, columns: Vec<&'static str>) -> Self {
        Self {
            meta: vec![("command".to_string(), command.to_string())],
            columns,
            rows: Vec::new(),
        }
    }

    pub fn meta(&mut self, key: &str, value: impl ToString) {
        self.meta.push((key.to_string(), value.to_string()));
    }

    /// Scientific notation keeps tolerance echoes like `1e-12` readable.
    pub fn meta_float(&mut self, key: &str, value: f64) {
        self.meta.push((key.to_string(), format!("{value:e}")));
    }

    pub fn row(&mut self, cells: Vec<Cell>) {
        debug_assert_eq!(cells.len(), self.columns.len());
        self.rows.push(cells);
    }
}

/// 17 significant digits, enough to reproduce any f64 exactly.
pub fn fmt_float(x: f64) -> String {
    if x.is_nan() {
        "nan".to_string()
    } else if x.is_infinite() {
        if x > 0.0 {
            "inf".to_string()
        } else {
            "-inf".to_string()
        }
    } else {
        format!("{x:.16e}")
    }
}

fn cell_csv(c: &Cell) -> String {
    match c {
        Cell::Float(x) => fmt_float(*x),
        Cell::Int(i) => i.to_string(),
        Cell::Str(s) => s.clone(),
    }
}

pub fn render_csv(t: &Table) -> String {
    let mut out = String::new();
    let meta = t
        .meta
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(" ");
    let _ = writeln!(out, "# catenoid v{} {}", env!("CARGO_PKG_VERSION"), meta);
    let _ = writeln!(out, "{}", t.columns.join(","));
    for row in &t.rows {
        let line = row.iter().map(cell_csv).collect::<Vec<_>>().join(",");
        let _ = writeln!(out, "{line}");
    }
    out
}

fn cell_json(c: &Cell) -> serde_json::Value {
    match c {
        // Non-finite reals have no JSON number form; serde maps them to null.
        Cell::Float(x) => serde_json::json!(x),
        Cell::Int(i) => serde_json::json!(i),
        Cell::Str(s) => serde_json::json!(s),
    }
}

pub fn render_json(t: &Table) -> String {
    let mut meta = serde_json::Map::new();
    meta.insert(
        "tool".into(),
        serde_json::json!(format!("catenoid v{}", env!("CARGO_PKG_VERSION"))),
    );
    for (k, v) in &t.meta {
        meta.insert(k.clone(), serde_json::json!(v));
    }
    let rows: Vec<serde_json::Value> = t
        .rows
        .iter()
        .map(|row| {
            let mut obj = serde_json::Map::new();
            for (name, cell) in t.columns.iter().zip(row) {
                obj.insert((*name).to_string(), cell_json(cell));
            }
            serde_json::Value::Object(obj)
        })
        .collect();
    let doc = serde_json::json!({ "meta": serde_json::Value::Object(meta), "rows": rows });
    let mut s = serde_json::to_string_pretty(&doc).expect("static schema always serializes");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_formatting_is_17_digits() {
        assert_eq!(fmt_float(0.25), "2.5000000000000000e-1");
        assert_eq!(fmt_float(f64::INFINITY), "inf");
        let x = 0.1 + 0.2;
        let parsed: f64 = fmt_float(x).parse().unwrap();
        assert_eq!(parsed.to_bits(), x.to_bits());
    }

    #[test]
    fn csv_layout() {
        let mut t = Table::new("demo", vec!["a", "b"]);
        t.meta("n", 2);
        t.row(vec![Cell::Float(1.0), Cell::Str("x".into())]);
        let s = render_csv(&t);
        let lines: Vec<&str> = s.lines().collect();
        assert_eq!(lines.len(), 3);
        assert!(lines[0].starts_with("# catenoid v"));
        assert_eq!(lines[1], "a,b");
        assert_eq!(lines[2], "1.0000000000000000e0,x");
    }

    #[test]
    fn json_roundtrips() {
        let mut t = Table::new("demo", vec!["a"]);
        t.row(vec![Cell::Float(2.5)]);
        let v: serde_json::Value = serde_json::from_str(&render_json(&t)).unwrap();
        assert_eq!(v["rows"][0]["a"], serde_json::json!(2.5));
        assert_eq!(v["meta"]["command"], serde_json::json!("demo"));
    }
}
