//! The machine-readable form of a quiddity used by JSON, JSONL and CSV
//! output.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generator::Generator;
use crate::matrix::Sign;
use crate::quiddity::Quiddity;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiddityRecord {
    pub size: usize,
    pub coeffs: Vec<i64>,
    pub elements: Vec<String>,
    pub generator: Generator,
    pub sign: Sign,
    pub canonical: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub irreducible: Option<bool>,
}

pub const CSV_HEADER: &str = "size,coeffs,sign,canonical,irreducible";

fn join(v: &[i64]) -> String {
    v.iter().map(i64::to_string).collect::<Vec<_>>().join(";")
}

fn split(s: &str) -> Result<Vec<i64>> {
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(';')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad coefficient {t:?}")))
        })
        .collect()
}

impl QuiddityRecord {
    pub fn new(q: &Quiddity, irreducible: Option<bool>) -> QuiddityRecord {
        QuiddityRecord {
            size: q.len(),
            coeffs: q.coeffs().to_vec(),
            elements: q.elements().iter().map(|e| e.to_string()).collect(),
            generator: *q.generator(),
            sign: q.sign(),
            canonical: q.canonical(),
            irreducible,
        }
    }

    /// Rebuilds and re-verifies the quiddity, checking every derived field.
    pub fn to_quiddity(&self) -> Result<Quiddity> {
        let q = Quiddity::new(self.generator, self.coeffs.clone())?;
        if *self != QuiddityRecord::new(&q, self.irreducible) {
            return Err(Error::Parse(format!(
                "record for {:?} has inconsistent derived fields",
                self.coeffs
            )));
        }
        Ok(q)
    }

    /// `size,coeffs,sign,canonical,irreducible`, tuples joined by `;`.
    pub fn to_csv_row(&self) -> String {
        let irr = match self.irreducible {
            Some(true) => "true",
            Some(false) => "false",
            None => "",
        };
        format!(
            "{},{},{},{},{}",
            self.size,
            join(&self.coeffs),
            self.sign.as_i8(),
            join(&self.canonical),
            irr
        )
    }

    pub fn from_csv_row(row: &str, generator: Generator) -> Result<QuiddityRecord> {
        let cols: Vec<&str> = row.split(',').collect();
        if cols.len() != 5 {
            return Err(Error::Parse(format!(
                "expected 5 CSV columns, got {}",
                cols.len()
            )));
        }
        let irreducible = match cols[4] {
            "" => None,
            "true" => Some(true),
            "false" => Some(false),
            other => return Err(Error::Parse(format!("bad irreducible flag {other:?}"))),
        };
        let q = Quiddity::new(generator, split(cols[1])?)?;
        let rec = QuiddityRecord::new(&q, irreducible);
        let size: usize = cols[0]
            .parse()
            .map_err(|_| Error::Parse("bad size".into()))?;
        if size != rec.size
            || cols[2] != rec.sign.as_i8().to_string()
            || split(cols[3])? != rec.canonical
        {
            return Err(Error::Parse(
                "CSV row has inconsistent derived fields".into(),
            ));
        }
        Ok(rec)
    }
}
