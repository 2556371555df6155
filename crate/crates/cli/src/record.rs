//! Flat output records rendered as text, json or csv from the same values.

use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Debug, Default)]
pub struct Record {
    fields: Vec<(&'static str, Value)>,
}

impl Record {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn field(mut self, key: &'static str, value: impl Into<Value>) -> Self {
        self.fields.push((key, value.into()));
        self
    }

    pub fn list<T: Into<Value>>(self, key: &'static str, items: impl IntoIterator<Item = T>) -> Self {
        let v: Vec<Value> = items.into_iter().map(Into::into).collect();
        self.field(key, Value::Array(v))
    }

    fn json(&self) -> String {
        let map: Map<String, Value> = self.fields.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
        Value::Object(map).to_string()
    }

    fn header(&self) -> Vec<&'static str> {
        self.fields.iter().map(|(k, _)| *k).collect()
    }

    fn csv_row(&self) -> Vec<String> {
        self.fields.iter().map(|(_, v)| plain(v, ";")).collect()
    }

    fn text(&self) -> String {
        self.fields
            .iter()
            .map(|(k, v)| if v.is_null() { format!("{k}: none") } else { format!("{k}: {}", plain(v, ", ")) })
            .collect::<Vec<_>>()
            .join(", ")
    }
}

/// Scalars without JSON quoting; arrays joined by `sep`.
fn plain(v: &Value, sep: &str) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        Value::Array(items) => {
            let inner: Vec<String> = items.iter().map(|x| plain(x, sep)).collect();
            if sep == ";" {
                inner.join(sep)
            } else {
                format!("{{{}}}", inner.join(sep))
            }
        }
        other => other.to_string(),
    }
}

/// Prints the records; csv gets one header taken from the first record.
pub fn emit(records: &[Record], format: Format) {
    match format {
        Format::Text => records.iter().for_each(|r| println!("{}", r.text())),
        Format::Json => records.iter().for_each(|r| println!("{}", r.json())),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(std::io::stdout());
            if let Some(first) = records.first() {
                w.write_record(first.header()).expect("write to stdout");
            }
            for r in records {
                w.write_record(r.csv_row()).expect("write to stdout");
            }
            w.flush().expect("write to stdout");
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats_agree() {
        let r = Record::new().field("type", "A2").field("k", 5).field("ok", true).list("orders", [1, 2, 3]).field("w", Value::Null);
        assert_eq!(r.json(), r#"{"type":"A2","k":5,"ok":true,"orders":[1,2,3],"w":null}"#);
        assert_eq!(r.header(), ["type", "k", "ok", "orders", "w"]);
        assert_eq!(r.csv_row(), ["A2", "5", "true", "1;2;3", ""]);
        assert_eq!(r.text(), "type: A2, k: 5, ok: true, orders: {1, 2, 3}, w: none");
    }
}
