//! CSV and JSON emission with fixed 12-significant-digit numbers.

use std::io::Write;
use std::path::Path;

use serde_json::{Map, Value};

use crate::config::Format;
use crate::error::CliError;
use crate::point::ResultRow;

pub fn fmt_num(x: f64) -> String {
    format!("{x:.11e}")
}

enum Cell {
    Num(f64),
    Int(u64),
    Text(&'static str),
    Null,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(x) => fmt_num(*x),
            Cell::Int(n) => n.to_string(),
            Cell::Text(s) => s.to_string(),
            Cell::Null => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(x) => fmt_num(*x).parse::<f64>().ok().and_then(serde_json::Number::from_f64).into(),
            Cell::Int(n) => (*n).into(),
            Cell::Text(s) => (*s).into(),
            Cell::Null => Value::Null,
        }
    }
}

fn opt(x: Option<f64>) -> Cell {
    x.map_or(Cell::Null, Cell::Num)
}

fn columns(row: &ResultRow) -> Vec<(&'static str, Cell)> {
    let p = &row.params;
    let mut out = vec![
        ("alpha", Cell::Num(p.alpha)),
        ("beta", Cell::Num(p.beta)),
        ("g", Cell::Num(p.g)),
        ("theta", Cell::Num(p.theta)),
        ("phi", Cell::Num(p.phi)),
        ("tau", Cell::Num(p.tau)),
        ("T", Cell::Num(p.t_loss)),
        ("eta", Cell::Num(p.eta)),
        ("m", Cell::Int(p.m.into())),
        ("v", Cell::Int(p.v.into())),
    ];
    out.extend(row.values.iter().map(|(q, v)| (q.name(), opt(*v))));
    if let Some(o) = &row.oracle {
        out.push(("oracle", opt(o.value)));
        out.push(("oracle_cutoff", o.cutoff.map_or(Cell::Null, |k| Cell::Int(k as u64))));
        out.push(("oracle_tail", opt(o.tail)));
    }
    out.push(("status", Cell::Text(row.status.name())));
    out
}

pub fn render(rows: &[ResultRow], format: Format) -> Result<Vec<u8>, CliError> {
    match format {
        Format::Csv => {
            let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
            if let Some(first) = rows.first() {
                w.write_record(columns(first).iter().map(|(k, _)| *k)).map_err(|e| CliError::Io(e.to_string()))?;
            }
            for r in rows {
                w.write_record(columns(r).iter().map(|(_, c)| c.csv())).map_err(|e| CliError::Io(e.to_string()))?;
            }
            w.into_inner().map_err(|e| CliError::Io(e.to_string()))
        }
        Format::Json => {
            let arr: Vec<Value> = rows
                .iter()
                .map(|r| {
                    Value::Object(columns(r).into_iter().map(|(k, c)| (k.to_string(), c.json())).collect::<Map<_, _>>())
                })
                .collect();
            let mut out = serde_json::to_vec_pretty(&arr).map_err(|e| CliError::Io(e.to_string()))?;
            out.push(b'\n');
            Ok(out)
        }
    }
}

pub fn emit(bytes: &[u8], path: Option<&Path>) -> Result<(), CliError> {
    match path {
        Some(path) => std::fs::write(path, bytes).map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(bytes)?;
            out.flush()?;
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::point::{run_point, Quantity};
    use psmetro::Params;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(fmt_num(std::f64::consts::PI), "3.14159265359e0");
        assert_eq!(fmt_num(0.0), "0.00000000000e0");
    }

    #[test]
    fn flagged_cells_are_empty_and_null() {
        let p = Params { alpha: 0.0, beta: 0.0, ..Params::default() };
        let rows = vec![run_point(&p, &[Quantity::DeltaPhi, Quantity::F], None).unwrap()];
        let csv = String::from_utf8(render(&rows, Format::Csv).unwrap()).unwrap();
        let line = csv.lines().nth(1).unwrap();
        assert!(line.ends_with(",infinite"), "{line}");
        assert!(line.contains(",,"));
        let json: Value = serde_json::from_slice(&render(&rows, Format::Json).unwrap()).unwrap();
        assert_eq!(json[0]["delta_phi"], Value::Null);
        assert!(json[0]["F"].is_number());
    }
}
