//! Text format for permutation groups:
//!
//! ```text
//! # Alt(5)
//! degree: 5
//! gen: (0 1 2 3 4)
//! gen: (0 1 2)
//! ```
//!
//! Points are 0-based, `()` is the identity, `#` starts a comment.

use crate::error::Error;
use crate::perm::{parse_cycles, Perm};
use crate::permgroup::PermGroup;

/// Degree and generators as written, before any group is built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupFile {
    pub degree: usize,
    pub generators: Vec<Perm>,
}

impl GroupFile {
    pub fn into_group(self) -> Result<PermGroup, Error> {
        PermGroup::from_generators(self.degree, self.generators)
    }
}

fn syntax(line: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        message: message.into(),
    }
}

pub fn parse(text: &str) -> Result<GroupFile, Error> {
    let mut degree = None;
    let mut generators = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content
            .split_once(':')
            .ok_or_else(|| syntax(line, format!("expected `key: value`, found {content:?}")))?;
        match key.trim() {
            "degree" => {
                if degree.is_some() {
                    return Err(syntax(line, "duplicate degree"));
                }
                let n: usize = value
                    .trim()
                    .parse()
                    .map_err(|_| syntax(line, format!("bad degree {:?}", value.trim())))?;
                if n == 0 {
                    return Err(syntax(line, "degree must be positive"));
                }
                degree = Some(n);
            }
            "gen" => {
                let n = degree.ok_or_else(|| syntax(line, "gen before degree"))?;
                let perm = parse_cycles(n, value).map_err(|e| syntax(line, e.to_string()))?;
                generators.push(perm);
            }
            other => return Err(syntax(line, format!("unknown key {other:?}"))),
        }
    }
    let degree = degree.ok_or_else(|| syntax(text.lines().count().max(1), "missing degree"))?;
    Ok(GroupFile { degree, generators })
}

pub fn parse_group(text: &str) -> Result<PermGroup, Error> {
    parse(text)?.into_group()
}

/// Inverse of [`parse`]; the identity is written as `()`.
pub fn emit(degree: usize, generators: &[Perm]) -> String {
    let mut out = format!("degree: {degree}\n");
    for g in generators {
        out.push_str(&format!("gen: {g}\n"));
    }
    out
}

pub fn emit_group(g: &PermGroup) -> String {
    emit(g.degree(), g.generators())
}
