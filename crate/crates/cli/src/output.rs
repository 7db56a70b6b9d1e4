//! Table writing: CSV with a `# key=value;...` metadata line, or the same
//! content as nested JSON. All numeric formatting is locale-independent
//! (Rust's shortest-roundtrip float display, '.' decimal point).

use std::io::Write;
use std::path::PathBuf;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Debug)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Str(String),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => v.to_string(),
            Cell::Str(s) => s.clone(),
        }
    }

    fn json(&self) -> serde_json::Value {
        match self {
            Cell::Int(v) => serde_json::Value::from(*v),
            Cell::Float(v) => serde_json::Value::from(*v),
            Cell::Str(s) => serde_json::Value::from(s.as_str()),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

#[derive(Clone, Debug)]
pub struct Report {
    pub metadata: Vec<(String, String)>,
    pub tables: Vec<Table>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        let metadata = vec![
            ("tool".to_string(), "sphens".to_string()),
            ("version".to_string(), env!("CARGO_PKG_VERSION").to_string()),
            ("command".to_string(), command.to_string()),
        ];
        Report { metadata, tables: Vec::new() }
    }

    pub fn meta(&mut self, key: &str, value: impl ToString) {
        self.metadata.push((key.to_string(), value.to_string()));
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let meta: Vec<String> =
            self.metadata.iter().map(|(k, v)| format!("{k}={v}")).collect();
        out.push_str(&format!("# {}\n", meta.join(";")));
        for (i, table) in self.tables.iter().enumerate() {
            if i > 0 {
                out.push_str(&format!("# table={}\n", table.name));
            }
            out.push_str(&table.columns.join(","));
            out.push('\n');
            for row in &table.rows {
                let cells: Vec<String> = row.iter().map(Cell::csv).collect();
                out.push_str(&cells.join(","));
                out.push('\n');
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        let metadata: serde_json::Map<String, serde_json::Value> = self
            .metadata
            .iter()
            .map(|(k, v)| (k.clone(), serde_json::Value::from(v.as_str())))
            .collect();
        let tables: serde_json::Map<String, serde_json::Value> = self
            .tables
            .iter()
            .map(|t| {
                let rows: Vec<serde_json::Value> = t
                    .rows
                    .iter()
                    .map(|row| serde_json::Value::from(row.iter().map(Cell::json).collect::<Vec<_>>()))
                    .collect();
                (
                    t.name.clone(),
                    serde_json::json!({ "columns": t.columns, "rows": rows }),
                )
            })
            .collect();
        let doc = serde_json::json!({ "metadata": metadata, "tables": tables });
        let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
        s.push('\n');
        s
    }

    pub fn write(&self, format: Format, output: &Option<PathBuf>) -> std::io::Result<()> {
        let body = match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        };
        match output {
            Some(path) => std::fs::write(path, body),
            None => std::io::stdout().write_all(body.as_bytes()),
        }
    }
}
