//! User story statements and the tabular story file.

use std::collections::{BTreeSet, HashMap};
use std::sync::LazyLock;

use regex::Regex;

use super::{ArtifactError, SourceLocation, UserStory};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StoryParts {
    pub role: String,
    pub want: String,
    pub purpose: Option<String>,
}

static PREFIX: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"(?is)^\s*as\s+an?\s+(.*)$").unwrap());
static STATEMENT: LazyLock<Regex> = LazyLock::new(|| {
    Regex::new(r"(?is)^\s*as\s+an?\s+(.+?)\s*,?\s+i\s+want\s+(.+?)(?:\s*,?\s+so\s+that\s+(.+?))?\s*$").unwrap()
});

/// Parses `As a(n) <role>, I want <want>[,] [so that <purpose>]`.
///
/// Keywords are case-insensitive. The first `so that` ends the want clause.
pub fn parse_story_text(line: &str) -> Result<StoryParts, ArtifactError> {
    let snippet = |s: &str| s.trim().chars().take(40).collect::<String>();
    let Some(prefix) = PREFIX.captures(line) else {
        return Err(ArtifactError::TemplateMismatch { reason: "missing `As a`", segment: snippet(line) });
    };
    let Some(caps) = STATEMENT.captures(line) else {
        let tail = prefix.get(1).map_or("", |m| m.as_str());
        return Err(ArtifactError::TemplateMismatch { reason: "missing `I want`", segment: snippet(tail) });
    };
    let get = |i| caps.get(i).map(|m: regex::Match<'_>| m.as_str().trim().to_string());
    let role = get(1).unwrap_or_default();
    let want = get(2).unwrap_or_default();
    if role.is_empty() || role.contains(',') {
        return Err(ArtifactError::TemplateMismatch { reason: "malformed role", segment: snippet(&role) });
    }
    Ok(StoryParts { role, want, purpose: get(3).filter(|p| !p.is_empty()) })
}

fn split_list(cell: Option<&str>) -> Vec<String> {
    cell.map(|c| c.split(';').map(str::trim).filter(|s| !s.is_empty()).map(String::from).collect()).unwrap_or_default()
}

/// Reads a delimiter-separated story table with a header row.
///
/// Columns (case-insensitive): `id`, either `statement` or `role`/`want`/`purpose`,
/// and optional `epic`, `links`, `qualities`, `emotions` (`;`-separated lists).
/// A non-empty `statement` cell takes precedence over the split columns.
pub fn parse_stories_table(text: &str, file: &str) -> Result<Vec<UserStory>, ArtifactError> {
    let mut reader = csv::ReaderBuilder::new().has_headers(true).trim(csv::Trim::All).from_reader(text.as_bytes());
    let headers = reader.headers().map_err(|e| ArtifactError::parse(csv_line(&e), e.to_string()))?.clone();
    let col: HashMap<String, usize> = headers.iter().enumerate().map(|(i, h)| (h.trim().to_lowercase(), i)).collect();
    if headers.iter().all(|h| h.trim().is_empty()) {
        return Err(ArtifactError::parse(1, "missing header row"));
    }
    if !col.contains_key("id") {
        return Err(ArtifactError::parse(1, "missing `id` column"));
    }
    if !col.contains_key("statement") && !(col.contains_key("role") && col.contains_key("want")) {
        return Err(ArtifactError::parse(1, "need a `statement` column or `role` and `want` columns"));
    }

    let mut stories = Vec::new();
    let mut ids = BTreeSet::new();
    for record in reader.records() {
        let record = record.map_err(|e| ArtifactError::parse(csv_line(&e), e.to_string()))?;
        let line = record.position().map_or(0, |p| p.line()) as usize;
        let cell = |name: &str| col.get(name).and_then(|&i| record.get(i)).filter(|c| !c.is_empty());
        let row_err = |reason: String| ArtifactError::parse(line, reason);

        let id = cell("id").ok_or_else(|| row_err("empty story id".into()))?.to_string();
        let parts = match cell("statement") {
            Some(statement) => parse_story_text(statement).map_err(|e| row_err(e.to_string()))?,
            None => StoryParts {
                role: cell("role").ok_or_else(|| row_err("empty role".into()))?.to_string(),
                want: cell("want").ok_or_else(|| row_err("empty want".into()))?.to_string(),
                purpose: cell("purpose").map(String::from),
            },
        };
        if !ids.insert(id.clone()) {
            return Err(ArtifactError::DuplicateStoryId(id));
        }
        stories.push(UserStory {
            id,
            role_phrase: parts.role,
            want: parts.want,
            purpose: parts.purpose,
            epic: cell("epic").map(String::from),
            declared_links: split_list(cell("links")),
            declared_qualities: split_list(cell("qualities")),
            declared_emotions: split_list(cell("emotions")),
            location: Some(SourceLocation { file: file.to_string(), line: line as u64 }),
        });
    }
    Ok(stories)
}

fn csv_line(e: &csv::Error) -> usize {
    e.position().map_or(1, |p| p.line() as usize)
}

/// Writes stories with split `role`/`want`/`purpose` columns.
pub fn emit_stories_table(stories: &[UserStory]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["id", "role", "want", "purpose", "epic", "links", "qualities", "emotions"])
        .expect("in-memory write");
    for s in stories {
        w.write_record([
            s.id.as_str(),
            &s.role_phrase,
            &s.want,
            s.purpose.as_deref().unwrap_or(""),
            s.epic.as_deref().unwrap_or(""),
            &s.declared_links.join(";"),
            &s.declared_qualities.join(";"),
            &s.declared_emotions.join(";"),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is UTF-8")
}
