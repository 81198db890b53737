//! One command result, renderable as JSON, CSV or text.

use serde_json::Value;

use crate::config::Format;

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub json: Value,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub text: String,
    /// False when a checked value disagrees with its expectation.
    pub ok: bool,
}

impl Report {
    pub fn new(json: Value, header: &[&str], rows: Vec<Vec<String>>, text: String) -> Self {
        Report {
            json,
            header: header.iter().map(|h| h.to_string()).collect(),
            rows,
            text,
            ok: true,
        }
    }

    pub fn with_ok(mut self, ok: bool) -> Self {
        self.ok = ok;
        self
    }

    /// Concatenates per-task reports in order; CSV keeps the first header.
    pub fn merge(parts: Vec<Report>) -> Report {
        let ok = parts.iter().all(|r| r.ok);
        let header = parts.first().map(|r| r.header.clone()).unwrap_or_default();
        let mut rows = Vec::new();
        let mut text = String::new();
        let mut json = Vec::new();
        for r in parts {
            rows.extend(r.rows);
            text.push_str(&r.text);
            json.push(r.json);
        }
        Report {
            json: Value::Array(json),
            header,
            rows,
            text,
            ok,
        }
    }

    pub fn render(&self, format: Format) -> anyhow::Result<String> {
        Ok(match format {
            Format::Json => serde_json::to_string_pretty(&self.json)? + "\n",
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.header)?;
                for r in &self.rows {
                    w.write_record(r)?;
                }
                String::from_utf8(w.into_inner()?)?
            }
            Format::Text => self.text.clone(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn csv_quotes_fields() {
        let r = Report::new(
            json!({}),
            &["a", "b"],
            vec![vec!["1".into(), "x, y".into()]],
            String::new(),
        );
        assert_eq!(r.render(Format::Csv).unwrap(), "a,b\n1,\"x, y\"\n");
    }

    #[test]
    fn merge_keeps_order() {
        let a = Report::new(json!(1), &["n"], vec![vec!["1".into()]], "one\n".into());
        let b =
            Report::new(json!(2), &["n"], vec![vec!["2".into()]], "two\n".into()).with_ok(false);
        let m = Report::merge(vec![a, b]);
        assert!(!m.ok);
        assert_eq!(m.text, "one\ntwo\n");
        assert_eq!(m.json, json!([1, 2]));
    }
}
