//! CSV batch processing. Rows are independent; failures become error records.

use std::collections::HashMap;
use std::path::Path;

use clap::ValueEnum;
use ncbeta::dispatch;
use ncbeta::inversion::{invert, InversionProblem};
use ncbeta::{EvalPoint, ShapeParams};
use rayon::prelude::*;

use crate::format::g17;

pub const HEADER: [&str; 8] = ["p", "q", "x", "y", "value", "complement", "method", "err_est"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Op {
    Eval,
    InvertX,
    InvertY,
}

/// One output record. For inversions the solved coordinate is filled in,
/// `value` is B at the root and `err_est` is |B − z|.
#[derive(Debug, Clone, PartialEq)]
pub struct Record {
    p: String,
    q: String,
    x: String,
    y: String,
    outcome: Result<(f64, f64, String, f64), String>,
}

impl Record {
    fn fields(&self) -> [String; 8] {
        let (value, complement, method, err) = match &self.outcome {
            Ok((v, c, m, e)) => (g17(*v), g17(*c), m.clone(), g17(*e)),
            Err(msg) => (String::new(), String::new(), format!("error: {msg}"), String::new()),
        };
        [self.p.clone(), self.q.clone(), self.x.clone(), self.y.clone(), value, complement, method, err]
    }
}

type Row = HashMap<String, String>;

fn num(row: &Row, key: &str) -> Result<f64, String> {
    let raw = row.get(key).map(|s| s.trim()).filter(|s| !s.is_empty()).ok_or_else(|| format!("missing column {key}"))?;
    raw.parse().map_err(|_| format!("{key} = {raw:?} is not a number"))
}

fn process(row: &Row, op: Op, tol: f64) -> Record {
    let cell = |k: &str| row.get(k).map(|s| s.trim().to_string()).unwrap_or_default();
    let mut rec = Record { p: cell("p"), q: cell("q"), x: cell("x"), y: cell("y"), outcome: Err(String::new()) };
    let result = (|| {
        let sp = ShapeParams::new(num(row, "p")?, num(row, "q")?).map_err(|e| e.to_string())?;
        match op {
            Op::Eval => {
                let pt = EvalPoint::new(num(row, "x")?, num(row, "y")?).map_err(|e| e.to_string())?;
                let v = dispatch::evaluate(&sp, &pt, tol).map_err(|e| e.to_string())?;
                Ok((v.b, v.bbar, v.method.to_string(), v.err_est))
            }
            Op::InvertX | Op::InvertY => {
                let z = num(row, "z")?;
                let problem = if op == Op::InvertX {
                    InversionProblem::for_x(sp, num(row, "y")?, z, tol)
                } else {
                    InversionProblem::for_y(sp, num(row, "x")?, z, tol)
                };
                let r = problem.and_then(|p| invert(&p)).map_err(|e| e.to_string())?;
                if op == Op::InvertX {
                    rec.x = g17(r.value);
                } else {
                    rec.y = g17(r.value);
                }
                let b = z + r.residual;
                Ok((b, 1.0 - b, r.seed_path.to_string(), r.residual.abs()))
            }
        }
    })();
    rec.outcome = result;
    rec
}

/// Reads rows keyed by the header names; a row that cannot be read becomes an error record.
fn read_rows(input: &Path) -> Result<Vec<Result<Row, String>>, String> {
    let mut rdr = csv::ReaderBuilder::new()
        .flexible(true)
        .trim(csv::Trim::All)
        .from_path(input)
        .map_err(|e| format!("cannot read {}: {e}", input.display()))?;
    let headers = rdr.headers().map_err(|e| format!("cannot read the header of {}: {e}", input.display()))?.clone();
    Ok(rdr
        .records()
        .map(|r| r.map(|r| headers.iter().map(str::to_string).zip(r.iter().map(str::to_string)).collect()).map_err(|e| e.to_string()))
        .collect())
}

pub fn process_all(rows: &[Result<Row, String>], op: Op, tol: f64) -> Vec<Record> {
    rows.par_iter()
        .map(|r| match r {
            Ok(row) => process(row, op, tol),
            Err(e) => Record { p: String::new(), q: String::new(), x: String::new(), y: String::new(), outcome: Err(e.clone()) },
        })
        .collect()
}

pub fn run(input: &Path, output: &Path, op: Op, tol: f64) -> Result<(), String> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(format!("--tol must be positive and finite, got {tol}"));
    }
    let rows = read_rows(input)?;
    let records = process_all(&rows, op, tol);
    let mut w = csv::Writer::from_path(output).map_err(|e| format!("cannot write {}: {e}", output.display()))?;
    let io = |e: csv::Error| format!("cannot write {}: {e}", output.display());
    w.write_record(HEADER).map_err(io)?;
    for r in &records {
        w.write_record(r.fields()).map_err(io)?;
    }
    w.flush().map_err(|e| format!("cannot write {}: {e}", output.display()))
}
