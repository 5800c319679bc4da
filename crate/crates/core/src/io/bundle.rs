use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::ArtifactError;
use crate::linker::{normalize_label, AliasTable};
use crate::model::MotivationalModel;

/// Epic that collects stories without an epic column value. Never checked for grouping.
pub const UNASSIGNED_EPIC: &str = "(unassigned)";

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SourceLocation {
    pub file: String,
    pub line: u64,
}

impl fmt::Display for SourceLocation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.file, self.line)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Persona {
    pub id: String,
    pub name: String,
    pub role: String,
    pub description: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct UserStory {
    pub id: String,
    pub role_phrase: String,
    pub want: String,
    pub purpose: Option<String>,
    pub epic: Option<String>,
    /// Functional goal ids or labels.
    pub declared_links: Vec<String>,
    pub declared_qualities: Vec<String>,
    pub declared_emotions: Vec<String>,
    pub location: Option<SourceLocation>,
}

impl UserStory {
    /// `As a <role>, I want <want>[ so that <purpose>]`.
    pub fn statement(&self) -> String {
        let mut s = format!("As a {}, I want {}", self.role_phrase, self.want);
        if let Some(p) = &self.purpose {
            s.push_str(" so that ");
            s.push_str(p);
        }
        s
    }

    pub fn epic_name(&self) -> &str {
        self.epic.as_deref().unwrap_or(UNASSIGNED_EPIC)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Epic {
    pub name: String,
    /// Story ids in source order.
    pub stories: Vec<String>,
    /// Functional goal id or label the epic is meant to reflect.
    pub declared_node: Option<String>,
}

impl Epic {
    pub fn is_unassigned(&self) -> bool {
        self.name == UNASSIGNED_EPIC
    }
}

/// Everything one consistency run looks at.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArtifactBundle {
    pub model: MotivationalModel,
    pub personas: Vec<Persona>,
    pub stories: Vec<UserStory>,
    pub epics: Vec<Epic>,
    pub aliases: AliasTable,
}

impl ArtifactBundle {
    /// Builds a bundle, grouping stories into epics by their epic column.
    ///
    /// Epic names are grouped after label normalization; the first spelling
    /// seen names the epic. `epic_nodes` maps epic names to declared goals.
    pub fn assemble(
        model: MotivationalModel,
        personas: Vec<Persona>,
        stories: Vec<UserStory>,
        aliases: AliasTable,
        epic_nodes: &[(String, String)],
    ) -> Result<Self, ArtifactError> {
        let epics = group_epics(&stories);
        let mut bundle = Self { model, personas, stories, epics, aliases };
        for (name, node) in epic_nodes {
            let key = normalize_label(name);
            let epic = bundle
                .epics
                .iter_mut()
                .find(|e| normalize_label(&e.name) == key)
                .ok_or_else(|| ArtifactError::UnknownEpic(name.clone()))?;
            epic.declared_node = Some(node.clone());
        }
        bundle.validate()?;
        Ok(bundle)
    }

    pub fn validate(&self) -> Result<(), ArtifactError> {
        let mut seen = BTreeSet::new();
        for p in &self.personas {
            if !seen.insert(p.id.as_str()) {
                return Err(ArtifactError::DuplicatePersonaId(p.id.clone()));
            }
        }
        let mut story_ids = BTreeSet::new();
        for s in &self.stories {
            if !story_ids.insert(s.id.as_str()) {
                return Err(ArtifactError::DuplicateStoryId(s.id.clone()));
            }
        }
        let mut placed = BTreeSet::new();
        for e in &self.epics {
            for s in &e.stories {
                if !story_ids.contains(s.as_str()) {
                    return Err(ArtifactError::UnknownStory { epic: e.name.clone(), story: s.clone() });
                }
                if !placed.insert(s.as_str()) {
                    return Err(ArtifactError::StoryInMultipleEpics(s.clone()));
                }
            }
        }
        Ok(())
    }

    pub fn story(&self, id: &str) -> Option<&UserStory> {
        self.stories.iter().find(|s| s.id == id)
    }
}

pub fn group_epics(stories: &[UserStory]) -> Vec<Epic> {
    let mut order: Vec<Epic> = Vec::new();
    let mut index = BTreeMap::new();
    for s in stories {
        let name = s.epic_name();
        let key = normalize_label(name);
        let slot = *index.entry(key).or_insert_with(|| {
            order.push(Epic { name: name.to_string(), stories: Vec::new(), declared_node: None });
            order.len() - 1
        });
        order[slot].stories.push(s.id.clone());
    }
    order
}
