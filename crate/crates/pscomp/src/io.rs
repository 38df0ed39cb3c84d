//! File formats: composition files (canonical JSON or plain text) and
//! string files (one binary string per line).

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::compositions::{CompositionError, CompositionMultiset, CompositionPair};
use crate::strings::{BitString, StringMultiset, StringsError};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error(transparent)]
    Composition(#[from] CompositionError),
    #[error(transparent)]
    Strings(#[from] StringsError),
    #[error("input is empty")]
    Empty,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

/// On-disk composition file: the pair list plus optional parameter
/// assertions checked against the inferred values.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct CompositionFile {
    pairs: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    h: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    wbar: Option<usize>,
}

/// Parses a composition file, auto-detecting JSON (`{`-led) vs text,
/// validates it, and applies any assertion fields.
pub fn parse_composition(input: &str) -> Result<CompositionMultiset, IoError> {
    let trimmed = input.trim_start();
    if trimmed.is_empty() {
        return Err(IoError::Empty);
    }
    if trimmed.starts_with('{') {
        let file: CompositionFile = serde_json::from_str(input)?;
        let pairs: Vec<CompositionPair> = file
            .pairs
            .iter()
            .map(|&(z, o)| CompositionPair::new(z, o))
            .collect();
        let m = CompositionMultiset::from_pairs(&pairs)?;
        m.check_assertions(file.n, file.h, file.wbar)?;
        Ok(m)
    } else {
        let mut pairs = Vec::new();
        for (idx, raw) in input.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut fields = line.split_whitespace();
            let parse = |field: Option<&str>| -> Result<usize, IoError> {
                field
                    .ok_or(())
                    .and_then(|f| f.parse().map_err(|_| ()))
                    .map_err(|_| IoError::Line {
                        line: idx + 1,
                        message: format!("expected 'zeros ones', got {raw:?}"),
                    })
            };
            let zeros = parse(fields.next())?;
            let ones = parse(fields.next())?;
            if fields.next().is_some() {
                return Err(IoError::Line {
                    line: idx + 1,
                    message: format!("expected 'zeros ones', got {raw:?}"),
                });
            }
            pairs.push(CompositionPair::new(zeros, ones));
        }
        if pairs.is_empty() {
            return Err(IoError::Empty);
        }
        Ok(CompositionMultiset::from_pairs(&pairs)?)
    }
}

/// Canonical JSON: pairs sorted by (length, ones), compact, no assertion
/// fields. Byte-identical for equal multisets.
pub fn composition_to_json(m: &CompositionMultiset) -> String {
    let file = CompositionFile {
        pairs: m.pairs().iter().map(|p| (p.zeros, p.ones)).collect(),
        n: None,
        h: None,
        wbar: None,
    };
    serde_json::to_string(&file).expect("composition files serialize")
}

/// Text form: one `zeros ones` pair per line, canonical order.
pub fn composition_to_text(m: &CompositionMultiset) -> String {
    let mut out = String::new();
    for p in m.pairs() {
        out.push_str(&format!("{} {}\n", p.zeros, p.ones));
    }
    out
}

/// Parses one binary string per line; `#` starts a comment.
pub fn parse_strings(input: &str) -> Result<StringMultiset, IoError> {
    let mut strings: Vec<BitString> = Vec::new();
    for (idx, raw) in input.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let s: BitString = line.parse().map_err(|e: StringsError| IoError::Line {
            line: idx + 1,
            message: e.to_string(),
        })?;
        strings.push(s);
    }
    if strings.is_empty() {
        return Err(IoError::Empty);
    }
    Ok(StringMultiset::new(strings)?)
}

pub fn strings_to_text(u: &StringMultiset) -> String {
    let mut out = String::new();
    for s in u.iter() {
        out.push_str(&s.to_string());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ms(strings: &[&str]) -> StringMultiset {
        StringMultiset::new(strings.iter().map(|s| s.parse().unwrap()).collect()).unwrap()
    }

    #[test]
    fn json_roundtrip_is_canonical() {
        let m = CompositionMultiset::compose(&ms(&["011101"]));
        let json = composition_to_json(&m);
        let parsed = parse_composition(&json).unwrap();
        assert_eq!(parsed, m);
        assert_eq!(composition_to_json(&parsed), json);
    }

    #[test]
    fn text_roundtrip_with_comments() {
        let m = CompositionMultiset::compose(&ms(&["0101", "0110"]));
        let text = format!("# compositions\n{}", composition_to_text(&m));
        let parsed = parse_composition(&text).unwrap();
        assert_eq!(parsed, m);
    }

    #[test]
    fn assertions_are_checked() {
        let m = CompositionMultiset::compose(&ms(&["11"]));
        let pairs: Vec<(usize, usize)> = m.pairs().iter().map(|p| (p.zeros, p.ones)).collect();
        let good = serde_json::json!({ "pairs": pairs, "n": 2, "h": 1, "wbar": 2 }).to_string();
        assert!(parse_composition(&good).is_ok());
        let bad = serde_json::json!({ "pairs": pairs, "h": 3 }).to_string();
        assert!(matches!(
            parse_composition(&bad),
            Err(IoError::Composition(CompositionError::AssertionMismatch { .. }))
        ));
    }

    #[test]
    fn strings_file_parsing() {
        let u = parse_strings("011101 # a string\n\n101110\n").unwrap();
        assert_eq!(u, ms(&["011101", "101110"]));
        assert!(parse_strings("01\n011\n").is_err());
        assert!(parse_strings("# nothing\n").is_err());
        assert!(parse_strings("01x1\n").is_err());
    }

    #[test]
    fn malformed_text_reports_line() {
        let err = parse_composition("1 0\nbogus\n").unwrap_err();
        assert!(matches!(err, IoError::Line { line: 2, .. }));
    }
}
