//! Set files.
//!
//! Text form: first line `N <ambient>`, then one element per line in
//! increasing order. Lines starting with `#` and blank lines are ignored.
//! JSON form: `{"ambient": N, "elements": [...]}`. Readers sniff the format
//! from the first non-blank character.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::{Error, IntegerSet, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SetFormat {
    Text,
    Json,
}

impl SetFormat {
    /// `.json` selects JSON, anything else the text form.
    pub fn for_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("json") => SetFormat::Json,
            _ => SetFormat::Text,
        }
    }
}

pub fn to_text(set: &IntegerSet) -> String {
    let mut out = format!("N {}\n", set.ambient());
    for x in set.elements() {
        writeln!(out, "{x}").unwrap();
    }
    out
}

pub fn to_json(set: &IntegerSet) -> String {
    serde_json::to_string(set).expect("IntegerSet serializes")
}

pub fn parse_text(input: &str) -> Result<IntegerSet> {
    let mut lines = input
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("missing `N <ambient>` header".into()))?;
    let ambient = header
        .strip_prefix('N')
        .map(str::trim)
        .and_then(|n| n.parse::<i64>().ok())
        .ok_or_else(|| Error::Parse(format!("bad header line {header:?}")))?;
    let elements = lines
        .map(|l| {
            l.parse::<i64>()
                .map_err(|_| Error::Parse(format!("bad element line {l:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    IntegerSet::new(ambient, elements)
}

pub fn parse(input: &str) -> Result<IntegerSet> {
    if input.trim_start().starts_with('{') {
        Ok(serde_json::from_str(input)?)
    } else {
        parse_text(input)
    }
}

pub fn read_set(path: &Path) -> Result<IntegerSet> {
    parse(&fs::read_to_string(path)?)
}

pub fn write_set(path: &Path, set: &IntegerSet, format: SetFormat) -> Result<()> {
    let body = match format {
        SetFormat::Text => to_text(set),
        SetFormat::Json => to_json(set) + "\n",
    };
    fs::write(path, body)?;
    Ok(())
}
