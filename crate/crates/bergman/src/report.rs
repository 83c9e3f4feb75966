//! Tables rendered as JSON or CSV. Floats go out with 17 significant digits in CSV
//! and as shortest round-trip numbers in JSON; nothing depends on time or locale.

use serde_json::{json, Map, Value as Json};

#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Str(String),
    Float(f64),
    Int(i64),
    Bool(bool),
    Null,
}

impl From<f64> for Value {
    fn from(x: f64) -> Self {
        Value::Float(x)
    }
}

impl From<&str> for Value {
    fn from(s: &str) -> Self {
        Value::Str(s.to_string())
    }
}

impl From<String> for Value {
    fn from(s: String) -> Self {
        Value::Str(s)
    }
}

impl From<bool> for Value {
    fn from(b: bool) -> Self {
        Value::Bool(b)
    }
}

impl From<usize> for Value {
    fn from(x: usize) -> Self {
        Value::Int(x as i64)
    }
}

impl From<u32> for Value {
    fn from(x: u32) -> Self {
        Value::Int(i64::from(x))
    }
}

impl From<Option<f64>> for Value {
    fn from(x: Option<f64>) -> Self {
        x.map_or(Value::Null, Value::Float)
    }
}

impl Value {
    fn csv(&self) -> String {
        match self {
            Value::Str(s) => s.clone(),
            Value::Float(x) if x.is_finite() => format!("{x:.16e}"),
            Value::Float(x) => format!("{x}"),
            Value::Int(i) => i.to_string(),
            Value::Bool(b) => b.to_string(),
            Value::Null => String::new(),
        }
    }

    fn json(&self) -> Json {
        match self {
            Value::Str(s) => Json::String(s.clone()),
            Value::Float(x) => serde_json::Number::from_f64(*x).map_or(Json::Null, Json::Number),
            Value::Int(i) => json!(i),
            Value::Bool(b) => json!(b),
            Value::Null => Json::Null,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub operation: String,
    pub seed: u64,
    pub params: Vec<(String, Value)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(operation: &str, seed: u64, columns: &[&str]) -> Self {
        Table {
            operation: operation.to_string(),
            seed,
            params: Vec::new(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn param(mut self, name: &str, v: impl Into<Value>) -> Self {
        self.params.push((name.to_string(), v.into()));
        self
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
        }
    }

    /// Every row carries the seed as its last column.
    pub fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        let mut header: Vec<&str> = self.columns.iter().map(String::as_str).collect();
        header.push("seed");
        w.write_record(&header).expect("in-memory write");
        let seed = self.seed.to_string();
        for r in &self.rows {
            let mut rec: Vec<String> = r.iter().map(Value::csv).collect();
            rec.push(seed.clone());
            w.write_record(&rec).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 output")
    }

    pub fn to_json(&self) -> String {
        let mut params = Map::new();
        for (k, v) in &self.params {
            params.insert(k.clone(), v.json());
        }
        let rows: Vec<Json> = self
            .rows
            .iter()
            .map(|r| {
                let mut m = Map::new();
                for (c, v) in self.columns.iter().zip(r) {
                    m.insert(c.clone(), v.json());
                }
                Json::Object(m)
            })
            .collect();
        let doc = json!({
            "operation": self.operation,
            "seed": self.seed,
            "params": params,
            "rows": rows,
        });
        let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_format() {
        let mut t = Table::new("x", 7, &["name", "value", "ok"]);
        t.push(vec!["a,b".into(), 0.1.into(), true.into()]);
        t.push(vec!["c".into(), f64::INFINITY.into(), Value::Null]);
        assert_eq!(t.to_csv(), "name,value,ok,seed\n\"a,b\",1.0000000000000001e-1,true,7\nc,inf,,7\n");
    }

    #[test]
    fn json_format() {
        let mut t = Table::new("x", 7, &["v"]).param("p", 2.0);
        t.push(vec![f64::NAN.into()]);
        let j: Json = serde_json::from_str(&t.to_json()).unwrap();
        assert_eq!(j["seed"], 7);
        assert_eq!(j["params"]["p"], 2.0);
        assert!(j["rows"][0]["v"].is_null());
    }
}
