use clap::ValueEnum;
use serde_json::{json, Map, Value};

use crate::Run;

pub const SCHEMA: u32 = 1;

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Tsv,
    Json,
    Dot,
}

fn config_json(run: &Run) -> Value {
    let b = run.ctx.budgets;
    json!({
        "type": run.ty_text,
        "lattice": run.ctx.lattice,
        "group_budget": b.group,
        "qbg_budget": b.qbg,
        "adm_cap": b.adm_cap,
        "path_cap": b.path_cap,
    })
}

/// `# schema` and `# config` lines; the thread count is left out so that
/// output does not depend on it.
pub fn header(run: &Run, comment: &str) -> String {
    let b = run.ctx.budgets;
    format!(
        "{comment} schema: {SCHEMA}\n{comment} config: type={} lattice={} group_budget={} qbg_budget={} adm_cap={} path_cap={}\n",
        run.ty_text, run.ctx.lattice, b.group, b.qbg, b.adm_cap, b.path_cap
    )
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(cell).collect::<Vec<_>>().join(","),
        other => other.to_string(),
    }
}

/// Ordered rows of named cells.
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Table {
        Table {
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn render(&self, run: &Run, format: Format) -> String {
        match format {
            Format::Json => {
                let rows: Vec<Value> = self
                    .rows
                    .iter()
                    .map(|r| {
                        let m: Map<String, Value> =
                            self.columns.iter().map(|c| c.to_string()).zip(r.iter().cloned()).collect();
                        Value::Object(m)
                    })
                    .collect();
                document(run, json!({ "rows": rows }))
            }
            _ => {
                let mut s = header(run, "#");
                s.push_str(&self.columns.join("\t"));
                s.push('\n');
                for r in &self.rows {
                    s.push_str(&r.iter().map(cell).collect::<Vec<_>>().join("\t"));
                    s.push('\n');
                }
                s
            }
        }
    }
}

/// A JSON document carrying the schema and config alongside `body`'s fields.
pub fn document(run: &Run, body: Value) -> String {
    let mut m = Map::new();
    m.insert("schema".into(), json!(SCHEMA));
    m.insert("config".into(), config_json(run));
    if let Value::Object(fields) = body {
        m.extend(fields);
    }
    let mut s = serde_json::to_string_pretty(&Value::Object(m)).expect("serializable");
    s.push('\n');
    s
}
