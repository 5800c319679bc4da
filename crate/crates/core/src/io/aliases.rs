//! Alias files (`a = b = c` per line) and epic-to-goal mapping files.

use super::quote::{quote_if_needed, take_label};
use super::ArtifactError;
use crate::linker::AliasTable;

/// Each non-comment line declares one equivalence class; `=` or `≡` separate
/// labels and the last label is the canonical spelling.
pub fn parse_aliases(text: &str) -> Result<AliasTable, ArtifactError> {
    let text = text.strip_prefix('\u{feff}').unwrap_or(text);
    let mut builder = AliasTable::builder();
    for (i, raw) in text.lines().enumerate() {
        let err = |reason: String| ArtifactError::parse(i + 1, reason);
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut labels = Vec::new();
        let mut rest = line;
        loop {
            let (label, tail) = take_label(rest, &['=', '≡']).map_err(err)?;
            if label.trim().is_empty() {
                return Err(err("empty label".into()));
            }
            labels.push(label);
            let tail = tail.trim_start();
            if tail.is_empty() || tail.starts_with('#') {
                break;
            }
            rest = tail
                .strip_prefix('=')
                .or_else(|| tail.strip_prefix('≡'))
                .ok_or_else(|| err("expected `=` between labels".into()))?;
        }
        if labels.len() < 2 {
            return Err(err("an alias line needs at least two labels separated by `=`".into()));
        }
        builder.declare(labels);
    }
    Ok(builder.build())
}

/// One line per class, members in sorted order ending with the canonical label.
pub fn emit_aliases(table: &AliasTable) -> String {
    let mut out = String::new();
    for class in table.classes() {
        let mut members: Vec<_> = class.members.iter().filter(|m| **m != class.canonical).collect();
        members.push(&class.canonical);
        let line: Vec<_> = members.iter().map(|m| quote_if_needed(m.as_str())).collect();
        out.push_str(&line.join(" = "));
        out.push('\n');
    }
    out
}

/// Parses `Epic name -> goal id or label` lines.
pub fn parse_epic_nodes(text: &str) -> Result<Vec<(String, String)>, ArtifactError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (epic, node) =
            line.split_once("->").ok_or_else(|| ArtifactError::parse(i + 1, "expected `epic -> goal`"))?;
        let (epic, node) = (epic.trim(), node.trim());
        if epic.is_empty() || node.is_empty() {
            return Err(ArtifactError::parse(i + 1, "empty epic or goal"));
        }
        out.push((epic.to_string(), node.to_string()));
    }
    Ok(out)
}
