//! Line-oriented structured-text records: the single on-disk format for all
//! pipeline artifacts.
//!
//! ```text
//! record <kind>
//! key = 1.23456789012345678e0
//! key = [ 1.0e0 2.0e0 ... ]
//! end
//! ```
//!
//! Floats are written with enough digits to round-trip bit-exactly, so
//! emitted records re-parse into identical domain values.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::gapmap::GapVector;
use crate::geometry::{Profile, TorusEmbedding};
use crate::hill::SpectralData;
use crate::inverse::InversionResult;
use crate::periodic::PeriodicFn;

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Scalar(f64),
    Array(Vec<f64>),
}

/// One parsed or to-be-written record: a kind tag plus ordered fields.
#[derive(Debug, Clone, PartialEq)]
pub struct Record {
    pub kind: String,
    pub fields: Vec<(String, Value)>,
}

impl Record {
    pub fn new(kind: &str) -> Record {
        Record { kind: kind.to_string(), fields: Vec::new() }
    }

    pub fn push_scalar(&mut self, key: &str, v: f64) {
        self.fields.push((key.to_string(), Value::Scalar(v)));
    }

    pub fn push_array(&mut self, key: &str, v: &[f64]) {
        self.fields.push((key.to_string(), Value::Array(v.to_vec())));
    }

    pub fn scalar(&self, key: &str) -> Result<f64> {
        match self.value(key)? {
            Value::Scalar(v) => Ok(*v),
            Value::Array(_) => Err(Error::Parse(format!("field '{key}' is an array, expected scalar"))),
        }
    }

    pub fn array(&self, key: &str) -> Result<&[f64]> {
        match self.value(key)? {
            Value::Array(v) => Ok(v),
            Value::Scalar(_) => Err(Error::Parse(format!("field '{key}' is a scalar, expected array"))),
        }
    }

    fn value(&self, key: &str) -> Result<&Value> {
        self.fields
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v)
            .ok_or_else(|| Error::Parse(format!("missing field '{key}' in record '{}'", self.kind)))
    }

    pub fn expect_kind(&self, kind: &str) -> Result<()> {
        if self.kind == kind {
            Ok(())
        } else {
            Err(Error::Parse(format!("expected record '{kind}', found '{}'", self.kind)))
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "record {}", self.kind).unwrap();
        for (k, v) in &self.fields {
            match v {
                Value::Scalar(s) => writeln!(out, "{k} = {s:.17e}").unwrap(),
                Value::Array(a) => {
                    write!(out, "{k} = [").unwrap();
                    for s in a {
                        write!(out, " {s:.17e}").unwrap();
                    }
                    writeln!(out, " ]").unwrap();
                }
            }
        }
        out.push_str("end\n");
        out
    }

    pub fn parse(text: &str) -> Result<Record> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let head = lines.next().ok_or_else(|| Error::Parse("empty record".into()))?;
        let kind = head
            .strip_prefix("record ")
            .ok_or_else(|| Error::Parse(format!("expected 'record <kind>', found '{head}'")))?
            .trim()
            .to_string();
        let mut fields = Vec::new();
        let mut closed = false;
        for line in lines {
            if line == "end" {
                closed = true;
                break;
            }
            let (key, rhs) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected 'key = value', found '{line}'")))?;
            let key = key.trim().to_string();
            let rhs = rhs.trim();
            let value = if let Some(inner) = rhs.strip_prefix('[') {
                let inner = inner
                    .strip_suffix(']')
                    .ok_or_else(|| Error::Parse(format!("unterminated array in field '{key}'")))?;
                let vals = inner
                    .split_whitespace()
                    .map(|t| t.parse::<f64>().map_err(|_| Error::Parse(format!("bad number '{t}' in '{key}'"))))
                    .collect::<Result<Vec<f64>>>()?;
                Value::Array(vals)
            } else {
                Value::Scalar(
                    rhs.parse::<f64>()
                        .map_err(|_| Error::Parse(format!("bad number '{rhs}' in '{key}'")))?,
                )
            };
            fields.push((key, value));
        }
        if !closed {
            return Err(Error::Parse(format!("record '{kind}' missing 'end'")));
        }
        Ok(Record { kind, fields })
    }
}

/// Two-column (or wider) plot data: plain whitespace-separated text rows.
pub fn plot_text(columns: &[&[f64]]) -> String {
    let rows = columns.iter().map(|c| c.len()).min().unwrap_or(0);
    let mut out = String::new();
    for i in 0..rows {
        for (j, col) in columns.iter().enumerate() {
            if j > 0 {
                out.push(' ');
            }
            write!(out, "{:.12e}", col[i]).unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn potential_record(kind: &str, f: &PeriodicFn) -> Record {
    let mut r = Record::new(kind);
    r.push_array("samples", f.samples());
    r
}

pub fn potential_from_record(r: &Record, kind: &str) -> Result<PeriodicFn> {
    r.expect_kind(kind)?;
    PeriodicFn::analyze(r.array("samples")?.to_vec())
}

pub fn spectral_data_record(d: &SpectralData) -> Record {
    let mut r = Record::new("spectral_data");
    r.push_scalar("lambda0", d.lambda0);
    r.push_array("edge_lower", &d.band_edges.iter().map(|e| e.0).collect::<Vec<_>>());
    r.push_array("edge_upper", &d.band_edges.iter().map(|e| e.1).collect::<Vec<_>>());
    r.push_array("dirichlet", &d.dirichlet);
    r.push_array("norming", &d.norming);
    r
}

pub fn spectral_data_from_record(r: &Record) -> Result<SpectralData> {
    r.expect_kind("spectral_data")?;
    let lo = r.array("edge_lower")?;
    let hi = r.array("edge_upper")?;
    if lo.len() != hi.len() {
        return Err(Error::Parse("edge_lower and edge_upper lengths differ".into()));
    }
    Ok(SpectralData {
        lambda0: r.scalar("lambda0")?,
        band_edges: lo.iter().zip(hi).map(|(&a, &b)| (a, b)).collect(),
        dirichlet: r.array("dirichlet")?.to_vec(),
        norming: r.array("norming")?.to_vec(),
    })
}

pub fn gap_vector_record(g: &GapVector) -> Record {
    let mut r = Record::new("gap_vector");
    r.push_array("first", &g.entries.iter().map(|e| e.0).collect::<Vec<_>>());
    r.push_array("second", &g.entries.iter().map(|e| e.1).collect::<Vec<_>>());
    r
}

pub fn gap_vector_from_record(r: &Record) -> Result<GapVector> {
    r.expect_kind("gap_vector")?;
    let a = r.array("first")?;
    let b = r.array("second")?;
    if a.len() != b.len() {
        return Err(Error::Parse("first and second component lengths differ".into()));
    }
    Ok(GapVector { entries: a.iter().zip(b).map(|(&x, &y)| (x, y)).collect() })
}

pub fn inversion_record(res: &InversionResult) -> Record {
    let mut r = Record::new("inversion");
    r.push_scalar("lambda0", res.lambda0);
    r.push_scalar("residual", res.residual);
    r.push_array("q_samples", res.q.samples());
    r.push_array("h_samples", res.h.samples());
    r
}

pub fn inversion_from_record(r: &Record) -> Result<InversionResult> {
    r.expect_kind("inversion")?;
    Ok(InversionResult {
        lambda0: r.scalar("lambda0")?,
        residual: r.scalar("residual")?,
        q: PeriodicFn::analyze(r.array("q_samples")?.to_vec())?,
        h: PeriodicFn::analyze(r.array("h_samples")?.to_vec())?,
    })
}

pub fn embedding_record(emb: &TorusEmbedding) -> Record {
    let mut r = Record::new("embedding");
    r.push_scalar("a", emb.a);
    r.push_array("r_samples", emb.minor_radius.samples());
    r
}

pub fn embedding_from_record(r: &Record) -> Result<TorusEmbedding> {
    r.expect_kind("embedding")?;
    TorusEmbedding::new(r.scalar("a")?, PeriodicFn::analyze(r.array("r_samples")?.to_vec())?)
}

pub fn profile_record(p: &Profile) -> Record {
    let mut r = Record::new("profile");
    r.push_scalar("b", p.b);
    r.push_scalar("r0", p.r0);
    r.push_array("q_samples", p.q.samples());
    r
}

pub fn profile_from_record(r: &Record) -> Result<Profile> {
    r.expect_kind("profile")?;
    Ok(Profile {
        b: r.scalar("b")?,
        r0: r.scalar("r0")?,
        q: PeriodicFn::analyze(r.array("q_samples")?.to_vec())?,
    })
}
