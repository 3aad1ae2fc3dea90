//! Flat per-spec records shared by `analyze`, `search` and the catalog.

use std::fs::{File, OpenOptions};
use std::io::{self, Write};
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use ringcode_core::{AnalysisReport, ExpectedParams, OrderedDefiningSet, SpecDocument};
use serde::Serialize;
use serde_json::Value as Json;

use crate::predicate::{Fields, Value};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// How many defining-set elements the analyze summary lists.
const SUMMARY_ELEMENTS: usize = 8;

/// One row per spec. Everything here is a pure function of the spec, so
/// re-analyzing reproduces it exactly.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Record {
    pub spec: SpecDocument,
    pub m: usize,
    #[serde(rename = "type")]
    pub kind: String,
    pub side: String,
    pub defining_set_size: u64,
    pub code_size: u64,
    pub enumerator: String,
    pub n: usize,
    pub k: usize,
    pub d: Option<usize>,
    pub num_weights: usize,
    pub wt_min: Option<usize>,
    pub wt_max: Option<usize>,
    pub self_orthogonal: bool,
    pub div4: bool,
    pub minimal: Option<bool>,
    pub ashikhmin_barg: bool,
    pub griesmer_equality: bool,
    pub equidistant: bool,
    pub stated_params: String,
    pub params_match: bool,
    pub closed_form_agrees: bool,
    pub minimality_verdict: Option<bool>,
    pub theta_verdict: Option<bool>,
}

fn format_params(p: &ExpectedParams) -> String {
    let d = if p.twice_d % 2 == 0 {
        (p.twice_d / 2).to_string()
    } else {
        format!("{}/2", p.twice_d)
    };
    format!("[{}, {}, {}]", p.n, p.k, d)
}

impl Record {
    pub fn from_report(report: &AnalysisReport) -> Self {
        let spec = report.spec;
        let gray = &report.gray;
        let right = report.right_verdicts.as_ref();
        Self {
            spec: spec.into(),
            m: spec.m(),
            kind: spec.kind().to_string(),
            side: spec.side().to_string(),
            defining_set_size: report.code.length,
            code_size: report.code.code_size,
            enumerator: report.enumerator.clone(),
            n: gray.n,
            k: gray.k,
            d: gray.d,
            num_weights: gray.num_nonzero_weights,
            wt_min: gray.wt_min,
            wt_max: gray.wt_max,
            self_orthogonal: gray.self_orthogonal,
            div4: gray.all_weights_div4,
            minimal: gray.minimal_exhaustive,
            ashikhmin_barg: gray.ashikhmin_barg,
            griesmer_equality: gray.griesmer_equality,
            equidistant: gray.equidistant,
            stated_params: format_params(&report.params.expected),
            params_match: report.params.all_match(),
            closed_form_agrees: report.closed_form_agrees,
            minimality_verdict: right.map(|r| r.minimality_holds()),
            theta_verdict: right.map(|r| r.theta_holds()),
        }
    }
}

fn int(x: impl TryInto<i64>) -> Value {
    x.try_into().map(Value::Int).unwrap_or(Value::Undefined)
}

fn opt_int(x: Option<usize>) -> Value {
    x.map_or(Value::Undefined, int)
}

impl Fields for Record {
    fn field(&self, name: &str) -> Option<Value> {
        Some(match name {
            "m" => int(self.m),
            "n" => int(self.n),
            "k" => int(self.k),
            "d" => opt_int(self.d),
            "num_weights" => int(self.num_weights),
            "wt_min" => opt_int(self.wt_min),
            "wt_max" => opt_int(self.wt_max),
            "defining_set_size" => int(self.defining_set_size),
            "code_size" => int(self.code_size),
            "type" => Value::Text(self.kind.clone()),
            "side" => Value::Text(self.side.clone()),
            "self_orthogonal" => Value::Bool(self.self_orthogonal),
            "div4" => Value::Bool(self.div4),
            "minimal" => self.minimal.map_or(Value::Undefined, Value::Bool),
            "ashikhmin_barg" => Value::Bool(self.ashikhmin_barg),
            "griesmer_equality" => Value::Bool(self.griesmer_equality),
            "equidistant" => Value::Bool(self.equidistant),
            "params_match" => Value::Bool(self.params_match),
            "closed_form_agrees" => Value::Bool(self.closed_form_agrees),
            "minimality_verdict" => self.minimality_verdict.map_or(Value::Undefined, Value::Bool),
            "theta_verdict" => self.theta_verdict.map_or(Value::Undefined, Value::Bool),
            _ => return None,
        })
    }
}

/// Head of the defining set in canonical order.
#[derive(Debug, Serialize)]
pub struct DefiningSetSummary {
    pub length: usize,
    pub order: &'static str,
    pub first_elements: Vec<String>,
}

impl DefiningSetSummary {
    pub fn new(set: &OrderedDefiningSet) -> Self {
        Self {
            length: set.len(),
            order: "t1 ascending, then t2 ascending",
            first_elements: set.elements().iter().take(SUMMARY_ELEMENTS).map(|v| v.to_string()).collect(),
        }
    }
}

/// Writes records to stdout as JSON lines or CSV.
pub enum Sink<W: Write> {
    Json(W),
    Csv { writer: Box<csv::Writer<W>>, header_written: bool },
}

impl<W: Write> Sink<W> {
    pub fn json(out: W) -> Self {
        Sink::Json(out)
    }

    pub fn csv(out: W) -> Self {
        Sink::Csv { writer: Box::new(csv::Writer::from_writer(out)), header_written: false }
    }

    pub fn write(&mut self, record: &impl Serialize) -> io::Result<()> {
        match self {
            Sink::Json(out) => {
                serde_json::to_writer(&mut *out, record)?;
                writeln!(out)
            }
            Sink::Csv { writer, header_written } => {
                let (header, row) = flatten(record)?;
                if !*header_written {
                    writer.write_record(&header)?;
                    *header_written = true;
                }
                writer.write_record(&row)?;
                Ok(())
            }
        }
    }

    pub fn finish(self) -> io::Result<()> {
        match self {
            Sink::Json(mut out) => out.flush(),
            Sink::Csv { mut writer, .. } => writer.flush(),
        }
    }
}

/// Top-level fields as CSV cells; nested values are kept as compact JSON.
fn flatten(record: &impl Serialize) -> io::Result<(Vec<String>, Vec<String>)> {
    let Json::Object(map) = serde_json::to_value(record)? else {
        return Err(io::Error::new(io::ErrorKind::InvalidData, "record is not an object"));
    };
    let cell = |v: &Json| match v {
        Json::Null => String::new(),
        Json::String(s) => s.clone(),
        other => other.to_string(),
    };
    Ok(map.iter().map(|(k, v)| (k.clone(), cell(v))).unzip())
}

#[derive(Serialize)]
struct CatalogRecord<'a> {
    #[serde(flatten)]
    record: &'a Record,
    version: &'static str,
    timestamp: u64,
}

/// Append-only JSON-lines catalog.
pub struct Catalog {
    file: File,
}

impl Catalog {
    pub fn open(path: &Path) -> io::Result<Self> {
        let file = OpenOptions::new().create(true).append(true).open(path)?;
        Ok(Self { file })
    }

    pub fn append(&mut self, record: &Record) -> io::Result<()> {
        let timestamp = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
        let mut line = serde_json::to_vec(&CatalogRecord { record, version: VERSION, timestamp })?;
        line.push(b'\n');
        self.file.write_all(&line)
    }

    pub fn finish(mut self) -> io::Result<()> {
        self.file.flush()
    }
}
