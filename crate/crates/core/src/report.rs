//! Diagnostics, reports, and their text and JSON renderings.

use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::checks::CheckId;
use crate::io::{emit_aliases, emit_model_json, emit_persona, emit_stories_table, ArtifactBundle, SourceLocation};

pub const REPORT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
    Advice,
}

impl Severity {
    pub fn as_str(self) -> &'static str {
        match self {
            Severity::Error => "error",
            Severity::Warning => "warning",
            Severity::Advice => "advice",
        }
    }
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SubjectKind {
    Role,
    Persona,
    Story,
    Epic,
    Goal,
}

impl fmt::Display for SubjectKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SubjectKind::Role => "role",
            SubjectKind::Persona => "persona",
            SubjectKind::Story => "story",
            SubjectKind::Epic => "epic",
            SubjectKind::Goal => "goal",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub code: CheckId,
    pub severity: Severity,
    pub subject_kind: SubjectKind,
    pub subject_id: String,
    pub message: String,
    #[serde(default)]
    pub related: Option<String>,
    #[serde(default)]
    pub location: Option<SourceLocation>,
}

impl Diagnostic {
    pub fn new(
        code: CheckId,
        subject_kind: SubjectKind,
        subject_id: impl Into<String>,
        message: impl Into<String>,
    ) -> Self {
        Self {
            code,
            severity: code.default_severity(),
            subject_kind,
            subject_id: subject_id.into(),
            message: message.into(),
            related: None,
            location: None,
        }
    }

    pub fn related(mut self, label: impl Into<String>) -> Self {
        self.related = Some(label.into());
        self
    }

    pub fn at(mut self, location: Option<&SourceLocation>) -> Self {
        self.location = location.cloned();
        self
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub errors: usize,
    pub warnings: usize,
    pub advisories: usize,
}

impl Counts {
    pub fn tally(diagnostics: &[Diagnostic]) -> Self {
        let mut c = Counts::default();
        for d in diagnostics {
            match d.severity {
                Severity::Error => c.errors += 1,
                Severity::Warning => c.warnings += 1,
                Severity::Advice => c.advisories += 1,
            }
        }
        c
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    diagnostics: Vec<Diagnostic>,
    counts: Counts,
    fingerprint: String,
}

impl Report {
    /// Orders diagnostics by check code, keeping the given order within a code.
    pub fn new(mut diagnostics: Vec<Diagnostic>, fingerprint: impl Into<String>) -> Self {
        diagnostics.sort_by_key(|d| d.code);
        let counts = Counts::tally(&diagnostics);
        Self { diagnostics, counts, fingerprint: fingerprint.into() }
    }

    pub fn diagnostics(&self) -> &[Diagnostic] {
        &self.diagnostics
    }

    pub fn counts(&self) -> Counts {
        self.counts
    }

    pub fn fingerprint(&self) -> &str {
        &self.fingerprint
    }

    pub fn is_empty(&self) -> bool {
        self.diagnostics.is_empty()
    }

    pub fn with_code(&self, code: CheckId) -> impl Iterator<Item = &Diagnostic> {
        self.diagnostics.iter().filter(move |d| d.code == code)
    }
}

/// Content hash of everything a run reads.
pub fn bundle_fingerprint(bundle: &ArtifactBundle) -> String {
    let mut h = Sha256::new();
    h.update(emit_model_json(&bundle.model));
    for p in &bundle.personas {
        h.update(b"\x00persona\x00");
        h.update(emit_persona(p));
    }
    h.update(b"\x00stories\x00");
    h.update(emit_stories_table(&bundle.stories));
    h.update(b"\x00aliases\x00");
    h.update(emit_aliases(&bundle.aliases));
    for e in &bundle.epics {
        if let Some(node) = &e.declared_node {
            h.update(format!("\x00epic\x00{}\x00{}", e.name, node));
        }
    }
    hex::encode(h.finalize())
}

pub fn render_text(report: &Report) -> String {
    let mut out = String::new();
    for d in &report.diagnostics {
        let _ = write!(out, "{} {} {} {}: {}", d.severity, d.code, d.subject_kind, d.subject_id, d.message);
        if let Some(loc) = &d.location {
            let _ = write!(out, " [{loc}]");
        }
        out.push('\n');
    }
    let c = report.counts;
    let status = if c.errors + c.warnings == 0 { "OK" } else { "FAIL" };
    let _ = writeln!(out, "{status}: {} errors, {} warnings, {} advisories", c.errors, c.warnings, c.advisories);
    out
}

#[derive(Serialize, Deserialize)]
struct ReportDoc {
    version: u32,
    fingerprint: String,
    diagnostics: Vec<Diagnostic>,
    counts: Counts,
}

pub fn render_json(report: &Report) -> String {
    let doc = ReportDoc {
        version: REPORT_VERSION,
        fingerprint: report.fingerprint.clone(),
        diagnostics: report.diagnostics.clone(),
        counts: report.counts,
    };
    let mut out = serde_json::to_string_pretty(&doc).expect("report serializes");
    out.push('\n');
    out
}

/// Reads a document produced by [`render_json`]. Counts are recomputed.
pub fn parse_report_json(text: &str) -> Result<Report, serde_json::Error> {
    let doc: ReportDoc = serde_json::from_str(text)?;
    Ok(Report::new(doc.diagnostics, doc.fingerprint))
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum ExitPolicy {
    /// Errors and warnings fail the run.
    #[default]
    Strict,
    /// Only errors fail the run.
    Lenient,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATIONS: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

pub fn exit_code(report: &Report) -> i32 {
    exit_code_with(report, ExitPolicy::Strict)
}

pub fn exit_code_with(report: &Report, policy: ExitPolicy) -> i32 {
    let failing = match policy {
        ExitPolicy::Strict => report.counts.errors + report.counts.warnings,
        ExitPolicy::Lenient => report.counts.errors,
    };
    if failing == 0 {
        EXIT_OK
    } else {
        EXIT_VIOLATIONS
    }
}
