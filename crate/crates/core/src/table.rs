//! Small deterministic table model rendered to CSV or JSON.
//!
//! Floats print in shortest round-trip form in both formats, so the two
//! encodings of one table carry bit-identical values. JSON objects come out
//! with alphabetically sorted keys; nothing depends on hash ordering.

use serde_json::{json, Map, Value};

use crate::scalar::Real;

/// One table value. `Empty` renders as a blank CSV field / JSON null.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Bool(bool),
    Str(String),
    Empty,
}

impl Cell {
    /// Convert any scalar into an `f64` cell; tables are always emitted in
    /// double precision.
    pub fn from_real<T: Real>(x: T) -> Cell {
        Cell::Float(x.to_f64().expect("table scalars convert to f64"))
    }

    fn csv_field(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => format_float(*v),
            Cell::Bool(v) => v.to_string(),
            Cell::Str(s) => escape_csv(s),
            Cell::Empty => String::new(),
        }
    }

    fn json_value(&self) -> Value {
        match self {
            Cell::Int(v) => json!(v),
            Cell::Float(v) => serde_json::Number::from_f64(*v)
                .map(Value::Number)
                .unwrap_or(Value::Null),
            Cell::Bool(v) => json!(v),
            Cell::Str(s) => json!(s),
            Cell::Empty => Value::Null,
        }
    }
}

/// Shortest decimal string that parses back to the same f64.
pub fn format_float(v: f64) -> String {
    format!("{v}")
}

fn escape_csv(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Named table: fixed column list, rows of cells.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new<S: Into<String>>(name: &str, columns: Vec<S>) -> Table {
        Table {
            name: name.to_string(),
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push_row(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len(), "ragged row in {}", self.name);
        self.rows.push(row);
    }
}

/// CSV document: `# key = value` metadata lines, then each table as a header
/// row plus data rows. A `# table = name` line separates sections when more
/// than one table is present.
pub fn render_csv(meta: &[(String, Cell)], tables: &[Table]) -> String {
    let mut out = String::new();
    for (k, v) in meta {
        out.push_str(&format!("# {} = {}\n", k, v.csv_field()));
    }
    for t in tables {
        if tables.len() > 1 {
            out.push_str(&format!("# table = {}\n", t.name));
        }
        out.push_str(&t.columns.join(","));
        out.push('\n');
        for row in &t.rows {
            let fields: Vec<String> = row.iter().map(Cell::csv_field).collect();
            out.push_str(&fields.join(","));
            out.push('\n');
        }
    }
    out
}

/// JSON document: one object `{"meta": {...}, "rows": [...]}`. Rows from a
/// multi-table document carry a `"table"` field naming their section.
pub fn render_json(meta: &[(String, Cell)], tables: &[Table]) -> String {
    let mut meta_obj = Map::new();
    for (k, v) in meta {
        meta_obj.insert(k.clone(), v.json_value());
    }
    let mut rows = Vec::new();
    for t in tables {
        for row in &t.rows {
            let mut obj = Map::new();
            if tables.len() > 1 {
                obj.insert("table".to_string(), json!(t.name));
            }
            for (col, cell) in t.columns.iter().zip(row.iter()) {
                obj.insert(col.clone(), cell.json_value());
            }
            rows.push(Value::Object(obj));
        }
    }
    let doc = json!({ "meta": Value::Object(meta_obj), "rows": rows });
    let mut s = serde_json::to_string_pretty(&doc).expect("table JSON always serializes");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> (Vec<(String, Cell)>, Vec<Table>) {
        let meta = vec![
            ("tool".to_string(), Cell::Str("demo 0.1.0".to_string())),
            ("w".to_string(), Cell::Float(0.1)),
        ];
        let mut t = Table::new("modes", vec!["twos", "omega", "note"]);
        t.push_row(vec![
            Cell::Int(-1),
            Cell::Float(-32.417_600_747_513_53),
            Cell::Empty,
        ]);
        t.push_row(vec![
            Cell::Int(0),
            Cell::Float(1.001_674_211_615_598),
            Cell::Str("lowest, plus".to_string()),
        ]);
        (meta, vec![t])
    }

    #[test]
    fn csv_is_deterministic_and_quotes_only_when_needed() {
        let (meta, tables) = sample();
        let a = render_csv(&meta, &tables);
        let b = render_csv(&meta, &tables);
        assert_eq!(a, b);
        assert!(a.starts_with("# tool = demo 0.1.0\n# w = 0.1\n"));
        assert!(a.contains("twos,omega,note\n"));
        assert!(a.contains("-1,-32.41760074751353,\n"));
        assert!(a.contains("0,1.001674211615598,\"lowest, plus\"\n"));
        // Single table: no section marker.
        assert!(!a.contains("# table"));
    }

    #[test]
    fn json_round_trips_float_bits() {
        let (meta, tables) = sample();
        let s = render_json(&meta, &tables);
        let doc: serde_json::Value = serde_json::from_str(&s).unwrap();
        let rows = doc["rows"].as_array().unwrap();
        assert_eq!(rows.len(), 2);
        let omega = rows[0]["omega"].as_f64().unwrap();
        assert_eq!(omega.to_bits(), (-32.417_600_747_513_53f64).to_bits());
        assert!(rows[0]["note"].is_null());
        assert_eq!(doc["meta"]["w"].as_f64().unwrap(), 0.1);
    }

    #[test]
    fn multi_table_rows_carry_section_names() {
        let (meta, tables) = sample();
        let mut t2 = Table::new("claims", vec!["claim", "holds"]);
        t2.push_row(vec![Cell::Str("x".to_string()), Cell::Bool(true)]);
        let both = vec![tables[0].clone(), t2];
        let csv = render_csv(&meta, &both);
        assert!(csv.contains("# table = modes\n"));
        assert!(csv.contains("# table = claims\n"));
        let js = render_json(&meta, &both);
        let doc: serde_json::Value = serde_json::from_str(&js).unwrap();
        assert_eq!(doc["rows"][0]["table"], "modes");
        assert_eq!(doc["rows"][2]["table"], "claims");
        assert_eq!(doc["rows"][2]["holds"], true);
    }

    #[test]
    fn float_formatting_round_trips() {
        for &x in &[0.1, 1.0, -493.4802200544679, 1e-12, 6.123233995736766e-17] {
            let s = format_float(x);
            assert_eq!(s.parse::<f64>().unwrap().to_bits(), x.to_bits(), "{s}");
        }
    }
}
