//! Parsing of tuple arguments.
//!
//! A tuple is given as one of
//! - a JSON array of integer coefficients, `[1,1,1,1]`;
//! - a JSON array of element strings, `["sqrt(2)","2*sqrt(2)"]`;
//! - a parenthesized list, `(1,1,1,1)`, read like the integer array;
//! - a JSON object in the record format, with `generator` and `elements`
//!   and/or `coeffs` keys, as printed by the other subcommands.
//!
//! The argument `-` reads the tuple from standard input and `@path` reads
//! it from a file.

use std::fs;
use std::io::Read;

use anyhow::{Context, Result};
use quiddity::{Generator, RingElem};
use serde_json::Value;

use crate::report::usage;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TupleInput {
    pub gen: Generator,
    pub coeffs: Vec<i64>,
}

/// Reads a tuple argument. `fallback` is the generator used when neither
/// `gen` nor the tuple itself names one.
pub fn read_tuple(
    arg: &str,
    gen: Option<Generator>,
    fallback: Option<Generator>,
    stdin: &mut dyn Read,
) -> Result<TupleInput> {
    let text = if arg == "-" {
        let mut s = String::new();
        stdin
            .read_to_string(&mut s)
            .context("reading tuple from stdin")?;
        s
    } else if let Some(path) = arg.strip_prefix('@') {
        fs::read_to_string(path).with_context(|| format!("reading tuple from {path}"))?
    } else {
        arg.to_string()
    };
    parse_tuple(&text, gen, fallback)
}

pub fn parse_tuple(
    text: &str,
    gen: Option<Generator>,
    fallback: Option<Generator>,
) -> Result<TupleInput> {
    let trimmed = text.trim();
    let json = match trimmed.strip_prefix('(').and_then(|t| t.strip_suffix(')')) {
        Some(inner) => format!("[{inner}]"),
        None => trimmed.to_string(),
    };
    let value: Value =
        serde_json::from_str(&json).map_err(|e| usage(format!("tuple is not valid JSON: {e}")))?;
    match value {
        Value::Array(items) => {
            let gen = gen
                .or(fallback)
                .ok_or_else(|| usage("--gen is required when the tuple is a plain list"))?;
            let coeffs = items_to_coeffs(&items, &gen)?;
            Ok(TupleInput { gen, coeffs })
        }
        Value::Object(map) => {
            let embedded = match map.get("generator") {
                Some(g) => Some(
                    serde_json::from_value::<Generator>(g.clone())
                        .map_err(|e| usage(format!("bad generator descriptor: {e}")))?,
                ),
                None => None,
            };
            let gen = match (embedded, gen) {
                (Some(a), Some(b)) if a != b => {
                    return Err(usage(format!("tuple is over {a} but --gen says {b}")));
                }
                (Some(a), _) | (None, Some(a)) => a,
                (None, None) => fallback
                    .ok_or_else(|| usage("tuple object has no generator and --gen is missing"))?,
            };
            let from_coeffs = match map.get("coeffs") {
                Some(Value::Array(items)) => Some(items_to_coeffs(items, &Generator::integers())?),
                Some(_) => return Err(usage("`coeffs` must be an array")),
                None => None,
            };
            let from_elements = match map.get("elements") {
                Some(Value::Array(items)) => Some(items_to_coeffs(items, &gen)?),
                Some(_) => return Err(usage("`elements` must be an array")),
                None => None,
            };
            let coeffs = match (from_coeffs, from_elements) {
                (Some(c), Some(e)) if c != e => {
                    return Err(usage("`coeffs` and `elements` disagree"));
                }
                (Some(c), _) | (None, Some(c)) => c,
                (None, None) => return Err(usage("tuple object needs `coeffs` or `elements`")),
            };
            Ok(TupleInput { gen, coeffs })
        }
        _ => Err(usage("tuple must be a JSON array or object")),
    }
}

fn items_to_coeffs(items: &[Value], gen: &Generator) -> Result<Vec<i64>> {
    items.iter().map(|item| item_to_coeff(item, gen)).collect()
}

fn item_to_coeff(item: &Value, gen: &Generator) -> Result<i64> {
    match item {
        Value::Number(n) => n
            .as_i64()
            .ok_or_else(|| usage(format!("coefficient {n} is not a 64-bit integer"))),
        Value::String(s) => {
            let elem: RingElem = s
                .parse()
                .map_err(|e| usage(format!("element {s:?}: {e}")))?;
            gen.coefficient(&elem)
                .map_err(|e| usage(format!("element {s:?}: {e}")))?
                .ok_or_else(|| usage(format!("element {s:?} is not in the subgroup {gen}")))
        }
        other => Err(usage(format!("unexpected tuple entry {other}"))),
    }
}
