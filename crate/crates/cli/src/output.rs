use std::fmt::Write as _;

use anyhow::{bail, Result};
use num_rational::BigRational;
use serde_json::{json, Map, Value};

use solenoidal::cyclotomic::Cyclotomic;
use solenoidal::dilation::{rational_to_f64, Coords, TorusPoint};
use solenoidal::laurent::GaussRat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Human,
}

pub struct Table {
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

/// A command's result: a JSON body, an optional table view, and whether a
/// verification inside it failed.
pub struct Report {
    pub body: Value,
    pub table: Option<Table>,
    pub failed: bool,
}

impl Report {
    pub fn new(body: Value) -> Self {
        Report {
            body,
            table: None,
            failed: false,
        }
    }

    pub fn with_table(mut self, table: Table) -> Self {
        self.table = Some(table);
        self
    }

    pub fn failed_if(mut self, failed: bool) -> Self {
        self.failed = failed;
        self
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => Ok(serde_json::to_string_pretty(&self.body)? + "\n"),
            Format::Csv => {
                let Some(table) = &self.table else {
                    bail!("csv output is only available for tabular reports; use --format json or human");
                };
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&table.headers)?;
                for row in &table.rows {
                    w.write_record(row)?;
                }
                Ok(String::from_utf8(w.into_inner()?)?)
            }
            Format::Human => {
                let mut out = String::new();
                human(&self.body, 0, &mut out);
                if let Some(t) = &self.table {
                    out.push('\n');
                    out.push_str(&aligned(t));
                }
                Ok(out)
            }
        }
    }
}

fn human(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match x {
                    Value::Object(_) if !is_number(x) => {
                        let _ = writeln!(out, "{pad}{k}:");
                        human(x, indent + 1, out);
                    }
                    Value::Array(items) if items.iter().any(|i| i.is_object() && !is_number(i)) => {
                        let _ = writeln!(out, "{pad}{k}: {} entries", items.len());
                    }
                    _ => {
                        let _ = writeln!(out, "{pad}{k}: {}", inline(x));
                    }
                }
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", inline(other));
        }
    }
}

fn is_number(v: &Value) -> bool {
    v.get("num").is_some() && v.get("den").is_some()
}

fn inline(v: &Value) -> String {
    match v {
        Value::Object(_) if is_number(v) => format!("{}/{}", str_of(&v["num"]), str_of(&v["den"])),
        Value::Array(items) => format!("[{}]", items.iter().map(inline).collect::<Vec<_>>().join(", ")),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn str_of(v: &Value) -> String {
    v.as_str().map(str::to_owned).unwrap_or_else(|| v.to_string())
}

fn aligned(t: &Table) -> String {
    let mut widths: Vec<usize> = t.headers.iter().map(|h| h.len()).collect();
    for row in &t.rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: Vec<&str>| {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect::<Vec<_>>()
            .join("  ")
    };
    let mut out = line(t.headers.clone()) + "\n";
    for row in &t.rows {
        out += &line(row.iter().map(String::as_str).collect());
        out.push('\n');
    }
    out
}

/// `{value, num, den}`.
pub fn rational(q: &BigRational) -> Value {
    json!({
        "value": rational_to_f64(q),
        "num": q.numer().to_string(),
        "den": q.denom().to_string(),
    })
}

pub fn gauss(g: &GaussRat) -> Value {
    json!({ "re": rational(&g.re), "im": rational(&g.im) })
}

/// Rational values carry `num/den`; other elements of `Q(zeta_M)` carry
/// their float value and the field order `M`.
pub fn cyclotomic(c: &Cyclotomic) -> Value {
    match c.to_rational() {
        Ok(Some(q)) => rational(&q),
        _ => {
            let z = c.to_complex();
            json!({ "value": z.re, "imag": z.im, "field_order": c.order() })
        }
    }
}

pub fn point(t: &TorusPoint) -> Value {
    match t.coords() {
        Coords::Exact(xs) => Value::Array(xs.iter().map(rational).collect()),
        Coords::Float(xs) => json!(xs),
    }
}

pub fn object(pairs: Vec<(&str, Value)>) -> Value {
    let mut m = Map::new();
    for (k, v) in pairs {
        m.insert(k.to_owned(), v);
    }
    Value::Object(m)
}

/// Floats in tables use the shortest round-trip rendering.
pub fn cell(x: f64) -> String {
    format!("{x:e}")
}
