//! The consistency checks and the driver that runs them.

mod rules;

pub use rules::{
    check_cp1, check_cp2, check_cp3, check_cp4, check_cp5, check_goal_coverage, check_goal_vocabulary,
    check_purpose_alignment, resolve_goal_ref,
};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::io::ArtifactBundle;
use crate::linker::{link_story_lenient, StoryLinks};
use crate::model::GoalKind;
use crate::report::{bundle_fingerprint, Diagnostic, Report, Severity, SubjectKind};

/// Check codes, in report order. `Config` carries bundle-level problems such
/// as ambiguous labels and is always enabled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "&'static str", try_from = "String")]
pub enum CheckId {
    Config,
    Cp1,
    Cp2,
    Cp3,
    Cp4,
    Cp5,
    Cp6,
    Cp7,
    Cp8,
    Cp9,
    AdvPurpose,
}

impl CheckId {
    pub const ALL: [CheckId; 11] = [
        CheckId::Config,
        CheckId::Cp1,
        CheckId::Cp2,
        CheckId::Cp3,
        CheckId::Cp4,
        CheckId::Cp5,
        CheckId::Cp6,
        CheckId::Cp7,
        CheckId::Cp8,
        CheckId::Cp9,
        CheckId::AdvPurpose,
    ];

    pub fn code(self) -> &'static str {
        match self {
            CheckId::Config => "CONFIG",
            CheckId::Cp1 => "CP1",
            CheckId::Cp2 => "CP2",
            CheckId::Cp3 => "CP3",
            CheckId::Cp4 => "CP4",
            CheckId::Cp5 => "CP5",
            CheckId::Cp6 => "CP6",
            CheckId::Cp7 => "CP7",
            CheckId::Cp8 => "CP8",
            CheckId::Cp9 => "CP9",
            CheckId::AdvPurpose => "ADV-PURPOSE",
        }
    }

    /// Dangling references are errors, coverage gaps are warnings.
    pub fn default_severity(self) -> Severity {
        match self {
            CheckId::Config | CheckId::Cp2 | CheckId::Cp4 | CheckId::Cp7 | CheckId::Cp9 => Severity::Error,
            CheckId::Cp1 | CheckId::Cp3 | CheckId::Cp5 | CheckId::Cp6 | CheckId::Cp8 => Severity::Warning,
            CheckId::AdvPurpose => Severity::Advice,
        }
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl From<CheckId> for &'static str {
    fn from(id: CheckId) -> Self {
        id.code()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown check `{0}`")]
pub struct UnknownCheck(pub String);

impl FromStr for CheckId {
    type Err = UnknownCheck;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        CheckId::ALL.into_iter().find(|c| c.code().eq_ignore_ascii_case(s)).ok_or_else(|| UnknownCheck(s.to_string()))
    }
}

impl TryFrom<String> for CheckId {
    type Error = UnknownCheck;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

/// How an epic's intended goal is determined for the grouping check.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum EpicMode {
    /// Use only goals declared in an epic mapping; otherwise require the
    /// epic's links to share a non-root subtree.
    #[default]
    Declared,
    /// Additionally treat a functional goal whose label matches the epic
    /// name as the declared goal.
    ByName,
}

impl FromStr for EpicMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "declared" => Ok(EpicMode::Declared),
            "by-name" => Ok(EpicMode::ByName),
            other => Err(format!("unknown epic mode `{other}` (expected `declared` or `by-name`)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckConfig {
    pub severity_overrides: BTreeMap<CheckId, Severity>,
    pub enabled: BTreeSet<CheckId>,
    pub epic_mode: EpicMode,
}

impl Default for CheckConfig {
    fn default() -> Self {
        Self {
            severity_overrides: BTreeMap::new(),
            enabled: CheckId::ALL.into_iter().collect(),
            epic_mode: EpicMode::Declared,
        }
    }
}

impl CheckConfig {
    pub fn severity(&self, id: CheckId) -> Severity {
        if id == CheckId::AdvPurpose {
            return Severity::Advice;
        }
        self.severity_overrides.get(&id).copied().unwrap_or_else(|| id.default_severity())
    }

    pub fn disable(mut self, id: CheckId) -> Self {
        if id != CheckId::Config {
            self.enabled.remove(&id);
        }
        self
    }

    pub fn is_enabled(&self, id: CheckId) -> bool {
        id == CheckId::Config || self.enabled.contains(&id)
    }
}

/// Resolves declared links for every story, in story order.
pub fn link_all(bundle: &ArtifactBundle) -> Vec<StoryLinks> {
    bundle.stories.iter().map(|s| link_story_lenient(s, &bundle.model, &bundle.aliases)).collect()
}

/// Runs every enabled check.
///
/// Ambiguous labels do not abort the run; each becomes a `CONFIG` error and
/// the entry is left out of the story's links.
pub fn run_all(bundle: &ArtifactBundle, config: &CheckConfig) -> Report {
    let links = link_all(bundle);
    let mut diagnostics = Vec::new();
    for id in CheckId::ALL {
        if config.is_enabled(id) {
            diagnostics.extend(run_check(id, bundle, &links, config.epic_mode));
        }
    }
    for d in &mut diagnostics {
        d.severity = config.severity(d.code);
    }
    Report::new(diagnostics, bundle_fingerprint(bundle))
}

/// One check's diagnostics at default severity.
pub fn run_check(id: CheckId, bundle: &ArtifactBundle, links: &[StoryLinks], epic_mode: EpicMode) -> Vec<Diagnostic> {
    let ArtifactBundle { model, personas, stories, epics, aliases } = bundle;
    match id {
        CheckId::Config => config_diagnostics(bundle, links),
        CheckId::Cp1 => check_cp1(model, personas, aliases),
        CheckId::Cp2 => check_cp2(model, personas, stories, aliases),
        CheckId::Cp3 => check_cp3(model, epics, stories, links, aliases, epic_mode),
        CheckId::Cp4 => check_cp4(stories, links),
        CheckId::Cp5 => check_cp5(model, links),
        CheckId::Cp6 => check_goal_coverage(model, links, GoalKind::Quality),
        CheckId::Cp7 => check_goal_vocabulary(stories, links, GoalKind::Quality),
        CheckId::Cp8 => check_goal_coverage(model, links, GoalKind::Emotional),
        CheckId::Cp9 => check_goal_vocabulary(stories, links, GoalKind::Emotional),
        CheckId::AdvPurpose => check_purpose_alignment(model, stories, aliases),
    }
}

fn config_diagnostics(bundle: &ArtifactBundle, links: &[StoryLinks]) -> Vec<Diagnostic> {
    bundle
        .stories
        .iter()
        .zip(links)
        .flat_map(|(story, l)| {
            l.ambiguous.iter().map(move |(kind, label)| {
                Diagnostic::new(
                    CheckId::Config,
                    SubjectKind::Story,
                    &story.id,
                    format!("{kind} label \"{label}\" matches more than one model goal"),
                )
                .related(label.as_str())
                .at(story.location.as_ref())
            })
        })
        .collect()
}
