//! Skeleton generation in both directions: model to personas and stories,
//! and stories plus epics to a draft model.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::io::{Epic, Persona, UserStory, UNASSIGNED_EPIC};
use crate::linker::normalize_label;
use crate::model::{build_model, GoalId, GoalTree, ModelError, ModelParts, MotivationalModel};

pub const DRAFT_ROOT_LABEL: &str = "Project goal (draft)";
pub const PLACEHOLDER_NAME: &str = "TODO";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScaffoldError {
    #[error("the model has no roles to use as the story role")]
    ModelHasNoRoles,
    #[error("no stories to build a model from")]
    NoStories,
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// One persona skeleton per model role.
pub fn scaffold_personas(model: &MotivationalModel) -> Vec<Persona> {
    model
        .roles()
        .iter()
        .enumerate()
        .map(|(i, role)| Persona {
            id: format!("persona-{:02}", i + 1),
            name: PLACEHOLDER_NAME.to_string(),
            role: role.clone(),
            description: format!(
                "TODO: describe an archetypical {role}: background, goals, frustrations, and how they would use the system."
            ),
        })
        .collect()
}

/// One story skeleton per leaf goal, linked to the leaf by id.
///
/// The story wants the leaf, its purpose is the parent goal, and its epic is
/// named after the top-level goal above the leaf. Top-level goals that share
/// a label get their id appended so each epic maps to one subtree.
pub fn scaffold_stories(model: &MotivationalModel) -> Result<Vec<UserStory>, ScaffoldError> {
    let role = model.roles().first().ok_or(ScaffoldError::ModelHasNoRoles)?;
    let epic_name = epic_names(model);
    Ok(model
        .leaf_goals()
        .into_iter()
        .enumerate()
        .map(|(i, leaf)| {
            let branch = model.top_level_ancestor(leaf).unwrap_or(model.root());
            UserStory {
                id: format!("US-{:02}", i + 1),
                role_phrase: role.clone(),
                want: model.label(leaf).trim().to_string(),
                purpose: model.parent(leaf).map(|p| model.label(p).trim().to_string()),
                epic: Some(epic_name[branch].clone()),
                declared_links: vec![leaf.to_string()],
                ..UserStory::default()
            }
        })
        .collect())
}

fn epic_names(model: &MotivationalModel) -> BTreeMap<GoalId, String> {
    let root = model.root();
    let branches: Vec<&GoalId> = match model.node(root) {
        Some(n) if !n.children.is_empty() => n.children.iter().collect(),
        _ => vec![root],
    };
    let mut seen: BTreeMap<_, usize> = BTreeMap::new();
    for b in &branches {
        *seen.entry(normalize_label(model.label(b))).or_default() += 1;
    }
    branches
        .into_iter()
        .map(|b| {
            let label = model.label(b).trim();
            let name = if seen[&normalize_label(label)] > 1 { format!("{label} ({b})") } else { label.to_string() };
            (b.clone(), name)
        })
        .collect()
}

/// A draft model and the source stories relinked to their new leaves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DraftModel {
    pub model: MotivationalModel,
    pub stories: Vec<UserStory>,
}

/// Builds a draft model: one child of the root per epic, one leaf per story.
///
/// Stories missing from `epics` go under the unassigned epic. Roles are the
/// stories' role phrases (a persona name stands for that persona's role)
/// followed by persona roles; qualities and emotions are every label the
/// stories declare. Duplicates are dropped after normalization, keeping the
/// first spelling.
pub fn induce_model(stories: &[UserStory], epics: &[Epic], personas: &[Persona]) -> Result<DraftModel, ScaffoldError> {
    if stories.is_empty() {
        return Err(ScaffoldError::NoStories);
    }
    let mut groups: Vec<(String, Vec<usize>)> = Vec::new();
    let mut placed = BTreeSet::new();
    let position = |id: &str| stories.iter().position(|s| s.id == id);
    for epic in epics {
        let members: Vec<usize> =
            epic.stories.iter().filter_map(|id| position(id)).filter(|i| placed.insert(*i)).collect();
        if !members.is_empty() {
            groups.push((epic.name.clone(), members));
        }
    }
    let loose: Vec<usize> = (0..stories.len()).filter(|i| !placed.contains(i)).collect();
    if !loose.is_empty() {
        match groups.iter_mut().find(|(name, _)| name == UNASSIGNED_EPIC) {
            Some((_, members)) => members.extend(loose),
            None => groups.push((UNASSIGNED_EPIC.to_string(), loose)),
        }
    }

    let mut tree = GoalTree::new(DRAFT_ROOT_LABEL).with_id("draft-root");
    let mut leaf_of = vec![String::new(); stories.len()];
    let mut counter = 0;
    for (e, (name, members)) in groups.iter().enumerate() {
        let mut node = GoalTree::new(name.clone()).with_id(format!("epic-{:02}", e + 1));
        for &i in members {
            counter += 1;
            let id = format!("story-{counter:03}");
            let want = stories[i].want.trim();
            node = node.child(GoalTree::new(if want.is_empty() { "(empty)" } else { want }).with_id(&id));
            leaf_of[i] = id;
        }
        tree = tree.child(node);
    }

    let mut parts = ModelParts::from_tree(tree)?;
    let persona_role = |phrase: &str| {
        personas.iter().find(|p| normalize_label(&p.name) == normalize_label(phrase)).map(|p| p.role.clone())
    };
    parts.roles = dedupe(
        stories
            .iter()
            .map(|s| persona_role(&s.role_phrase).unwrap_or_else(|| s.role_phrase.clone()))
            .chain(personas.iter().map(|p| p.role.clone())),
    );
    parts.qualities = dedupe(stories.iter().flat_map(|s| s.declared_qualities.iter().cloned()));
    parts.emotions = dedupe(stories.iter().flat_map(|s| s.declared_emotions.iter().cloned()));
    let model = build_model(parts)?;

    let stories =
        stories.iter().zip(leaf_of).map(|(s, leaf)| UserStory { declared_links: vec![leaf], ..s.clone() }).collect();
    Ok(DraftModel { model, stories })
}

fn dedupe(labels: impl Iterator<Item = String>) -> Vec<String> {
    let mut seen = BTreeSet::new();
    labels.map(|l| l.trim().to_string()).filter(|l| !l.is_empty() && seen.insert(normalize_label(l))).collect()
}
