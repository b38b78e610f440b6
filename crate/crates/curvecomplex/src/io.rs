//! File formats: surfaces, curves, covers, reports.
//!
//! Surface file (JSON): `{"polygons": [["a","b","A","B"]], "boundary": ["c"]}`
//! where an uppercase first letter means the reversed occurrence of the
//! lowercase label. Curve file: `{"surface": "<path or inline>", "word": "abAB"}`
//! or `{"word": ["a","b","A","B"]}` for multi-character labels, or
//! `{"crossing_sequence": [["m1",1],["m2",-1]]}`.

use crate::error::CliError;
use crate::surface::{Scheme, Side};
use crate::word::{Letter, Word};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

#[derive(Debug, Serialize, Deserialize)]
pub struct SurfaceFile {
    pub polygons: Vec<Vec<String>>,
    #[serde(default)]
    pub boundary: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CurveFile {
    #[serde(default)]
    pub surface: Option<String>,
    #[serde(default)]
    pub word: Option<serde_json::Value>,
    #[serde(default)]
    pub crossing_sequence: Option<Vec<(String, i8)>>,
}

/// Split a side token: `"a"` is the + occurrence, `"A"` the - occurrence.
/// Multi-character labels use the case of the first character.
fn parse_token(tok: &str) -> Result<(String, bool), CliError> {
    let mut chars = tok.chars();
    let first = chars.next().ok_or_else(|| CliError::Parse("empty side token".into()))?;
    if first.is_uppercase() {
        let mut label = first.to_lowercase().collect::<String>();
        label.push_str(chars.as_str());
        Ok((label, false))
    } else {
        Ok((tok.to_string(), true))
    }
}

pub fn scheme_from_file(f: &SurfaceFile) -> Result<Scheme, CliError> {
    let mut labels: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut polygons = Vec::new();
    for poly in &f.polygons {
        let mut sides = Vec::new();
        for tok in poly {
            let (label, positive) = parse_token(tok)?;
            let id = *index.entry(label.clone()).or_insert_with(|| {
                labels.push(label.clone());
                labels.len() - 1
            });
            sides.push(Side::new(id, positive));
        }
        polygons.push(sides);
    }
    let mut boundary = Vec::new();
    for b in &f.boundary {
        let (label, _) = parse_token(b)?;
        let id = index
            .get(&label)
            .copied()
            .ok_or_else(|| CliError::Parse(format!("boundary label {label} not used")))?;
        boundary.push(id);
    }
    Scheme::new_oriented(labels, polygons, &boundary).map_err(|e| CliError::Parse(e.to_string()))
}

pub fn scheme_from_json(s: &str) -> Result<Scheme, CliError> {
    let f: SurfaceFile = serde_json::from_str(s).map_err(|e| CliError::Parse(e.to_string()))?;
    scheme_from_file(&f)
}

pub fn scheme_to_file(s: &Scheme) -> SurfaceFile {
    let polygons = s
        .polygons
        .iter()
        .map(|poly| {
            poly.iter()
                .map(|side| {
                    let label = s.label(side.edge);
                    if side.positive {
                        label.to_string()
                    } else {
                        let mut c = label.chars();
                        let first = c.next().unwrap();
                        let mut out: String = first.to_uppercase().collect();
                        out.push_str(c.as_str());
                        out
                    }
                })
                .collect()
        })
        .collect();
    let boundary = s.boundary_edges().iter().map(|&e| s.label(e).to_string()).collect();
    SurfaceFile { polygons, boundary }
}

/// Parse a word against a scheme. A plain string is split into
/// single-character tokens; an array gives one token per letter.
pub fn word_from_value(scheme: &Scheme, v: &serde_json::Value) -> Result<Word, CliError> {
    let tokens: Vec<String> = match v {
        serde_json::Value::String(s) => s.chars().map(|c| c.to_string()).collect(),
        serde_json::Value::Array(a) => a
            .iter()
            .map(|x| {
                x.as_str()
                    .map(|s| s.to_string())
                    .ok_or_else(|| CliError::Parse("word array must hold strings".into()))
            })
            .collect::<Result<_, _>>()?,
        _ => return Err(CliError::Parse("word must be a string or array".into())),
    };
    let mut w = Vec::new();
    for tok in &tokens {
        let (label, positive) = parse_token(tok)?;
        let id = scheme
            .edge_id(&label)
            .ok_or_else(|| CliError::Parse(format!("unknown generator {label}")))?;
        w.push(Letter::new(id, !positive));
    }
    Ok(w)
}

pub fn word_from_str(scheme: &Scheme, s: &str) -> Result<Word, CliError> {
    word_from_value(scheme, &serde_json::Value::String(s.to_string()))
}

pub fn word_to_string(scheme: &Scheme, w: &[Letter]) -> String {
    let single = w.iter().all(|l| scheme.label(l.gen).chars().count() == 1);
    let fmt = |l: &Letter| {
        let label = scheme.label(l.gen);
        if l.inv {
            let mut c = label.chars();
            let first = c.next().unwrap();
            let mut out: String = first.to_uppercase().collect();
            out.push_str(c.as_str());
            out
        } else {
            label.to_string()
        }
    };
    if single {
        w.iter().map(fmt).collect()
    } else {
        w.iter().map(|l| fmt(l)).collect::<Vec<_>>().join(" ")
    }
}
