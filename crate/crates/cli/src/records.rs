//! Machine-readable output: line-delimited JSON records with floats printed
//! at 12 significant digits, so seeded runs are byte-identical.

use std::fmt::Write as _;

#[derive(Debug, Clone)]
pub enum Val {
    S(String),
    I(i64),
    U(u64),
    F(f64),
    B(bool),
}

#[derive(Debug, Clone)]
pub struct Record {
    fields: Vec<(String, Val)>,
}

impl Record {
    pub fn new(kind: &str) -> Self {
        Record {
            fields: vec![("record".into(), Val::S(kind.into()))],
        }
    }

    pub fn s(mut self, key: &str, v: impl Into<String>) -> Self {
        self.fields.push((key.into(), Val::S(v.into())));
        self
    }

    pub fn i(mut self, key: &str, v: i64) -> Self {
        self.fields.push((key.into(), Val::I(v)));
        self
    }

    pub fn u(mut self, key: &str, v: u64) -> Self {
        self.fields.push((key.into(), Val::U(v)));
        self
    }

    pub fn f(mut self, key: &str, v: f64) -> Self {
        self.fields.push((key.into(), Val::F(v)));
        self
    }

    pub fn b(mut self, key: &str, v: bool) -> Self {
        self.fields.push((key.into(), Val::B(v)));
        self
    }

    pub fn opt_f(self, key: &str, v: Option<f64>) -> Self {
        match v {
            Some(x) => self.f(key, x),
            None => self,
        }
    }

    pub fn json_line(&self) -> String {
        let mut out = String::from("{");
        for (i, (k, v)) in self.fields.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            let _ = write!(out, "{}:", json_string(k));
            match v {
                Val::S(s) => out.push_str(&json_string(s)),
                Val::I(n) => {
                    let _ = write!(out, "{n}");
                }
                Val::U(n) => {
                    let _ = write!(out, "{n}");
                }
                Val::F(x) => out.push_str(&fmt_float(*x)),
                Val::B(b) => {
                    let _ = write!(out, "{b}");
                }
            }
        }
        out.push('}');
        out
    }

    pub fn table_block(&self) -> String {
        let width = self
            .fields
            .iter()
            .map(|(k, _)| k.len())
            .max()
            .unwrap_or(0);
        let mut out = String::new();
        for (k, v) in &self.fields {
            let rendered = match v {
                Val::S(s) => s.clone(),
                Val::I(n) => n.to_string(),
                Val::U(n) => n.to_string(),
                Val::F(x) => fmt_float(*x),
                Val::B(b) => b.to_string(),
            };
            let _ = writeln!(out, "  {k:width$}  {rendered}");
        }
        out
    }
}

/// 12 significant digits in scientific notation; valid JSON.
pub fn fmt_float(x: f64) -> String {
    if !x.is_finite() {
        // JSON has no NaN/inf literals; quote them.
        return format!("\"{x}\"");
    }
    format!("{x:.11e}")
}

fn json_string(s: &str) -> String {
    serde_json::to_string(s).expect("strings serialize")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Table,
    Records,
}

pub fn emit(records: &[Record], format: Format) {
    match format {
        Format::Records => {
            for r in records {
                println!("{}", r.json_line());
            }
        }
        Format::Table => {
            for r in records {
                print!("{}", r.table_block());
                println!();
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_have_twelve_significant_digits() {
        assert_eq!(fmt_float(0.7546973993385), "7.54697399339e-1");
        assert_eq!(fmt_float(120.0), "1.20000000000e2");
    }

    #[test]
    fn records_are_valid_json() {
        let r = Record::new("bound").s("name", "goldberg_ft").u("f", 12).f("value", 0.75);
        let line = r.json_line();
        let parsed: serde_json::Value = serde_json::from_str(&line).unwrap();
        assert_eq!(parsed["record"], "bound");
        assert_eq!(parsed["f"], 12);
    }
}
