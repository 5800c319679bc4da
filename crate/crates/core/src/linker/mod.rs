//! Binding stories to model elements.
//!
//! Checks consume only links the story author declared. Token-overlap
//! matching in [`suggest_links`] is a remediation aid and never satisfies a
//! check on its own.

mod alias;
mod label;

pub use alias::{resolve_alias, AliasClass, AliasTable, AliasTableBuilder};
pub use label::{content_tokens, normalize_label, tokens, NormalizedLabel, PURPOSE_STOP_WORDS, STOP_WORDS};

use serde::Serialize;

use crate::io::UserStory;
use crate::model::{GoalId, GoalKind, GoalMatch, ModelError, MotivationalModel};

/// Declared links of one story, resolved against a model.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct StoryLinks {
    pub story: String,
    /// Functional goals, deduplicated, in declaration order.
    pub functional: Vec<GoalId>,
    /// Model quality labels (model spelling).
    pub qualities: Vec<String>,
    /// Model emotion labels (model spelling).
    pub emotions: Vec<String>,
    /// Declared entries that matched nothing, in declaration order.
    pub unresolved: Vec<(GoalKind, NormalizedLabel)>,
    /// Declared entries that matched more than one model element.
    pub ambiguous: Vec<(GoalKind, NormalizedLabel)>,
}

impl StoryLinks {
    pub fn unresolved_of(&self, kind: GoalKind) -> impl Iterator<Item = &NormalizedLabel> {
        self.unresolved.iter().filter(move |(k, _)| *k == kind).map(|(_, l)| l)
    }
}

/// Resolves every declared entry of `story`, failing on the first ambiguous one.
pub fn link_story(
    story: &UserStory,
    model: &MotivationalModel,
    aliases: &AliasTable,
) -> Result<StoryLinks, ModelError> {
    let links = link_story_lenient(story, model, aliases);
    match links.ambiguous.first() {
        Some((kind, label)) => Err(ModelError::AmbiguousLabel { kind: *kind, label: label.to_string() }),
        None => Ok(links),
    }
}

/// Like [`link_story`] but records ambiguous entries instead of failing.
pub fn link_story_lenient(story: &UserStory, model: &MotivationalModel, aliases: &AliasTable) -> StoryLinks {
    let mut links = StoryLinks { story: story.id.clone(), ..StoryLinks::default() };

    for entry in story.declared_links.iter().map(|e| e.trim()).filter(|e| !e.is_empty()) {
        if let Some(node) = model.node_by_str(entry) {
            push_unique(&mut links.functional, node.id.clone());
            continue;
        }
        let label = normalize_label(entry);
        match model.find_goal(GoalKind::Functional, &label, aliases) {
            Ok(Some(GoalMatch::Node(id))) => push_unique(&mut links.functional, id),
            Ok(_) => links.unresolved.push((GoalKind::Functional, label)),
            Err(_) => links.ambiguous.push((GoalKind::Functional, label)),
        }
    }

    for (kind, declared) in
        [(GoalKind::Quality, &story.declared_qualities), (GoalKind::Emotional, &story.declared_emotions)]
    {
        for entry in declared.iter().map(|e| e.trim()).filter(|e| !e.is_empty()) {
            let label = normalize_label(entry);
            match model.find_goal(kind, &label, aliases) {
                Ok(Some(GoalMatch::Label(l))) => {
                    let target = if kind == GoalKind::Quality { &mut links.qualities } else { &mut links.emotions };
                    push_unique(target, l);
                }
                Ok(_) => links.unresolved.push((kind, label)),
                Err(_) => links.ambiguous.push((kind, label)),
            }
        }
    }
    links
}

fn push_unique<T: PartialEq>(v: &mut Vec<T>, x: T) {
    if !v.contains(&x) {
        v.push(x);
    }
}

/// Ranks functional goals by how much of their label the story text covers.
///
/// Score is `|story tokens ∩ label tokens| / |label tokens|`, taking the best
/// spelling in the label's alias class. Ties keep pre-order.
pub fn suggest_links(
    story: &UserStory,
    model: &MotivationalModel,
    aliases: &AliasTable,
    k: usize,
) -> Vec<(GoalId, f64)> {
    let mut story_tokens = tokens(&story.want);
    if let Some(p) = &story.purpose {
        story_tokens.extend(tokens(p));
    }
    let mut scored: Vec<(GoalId, f64)> = model
        .preorder()
        .iter()
        .map(|id| {
            let canonical = aliases.canonical(model.label(id));
            let mut spellings = aliases.variants(&canonical);
            spellings.push(normalize_label(model.label(id)));
            let score = spellings
                .iter()
                .map(|s| {
                    let label_tokens = tokens(s.as_str());
                    if label_tokens.is_empty() {
                        0.0
                    } else {
                        label_tokens.intersection(&story_tokens).count() as f64 / label_tokens.len() as f64
                    }
                })
                .fold(0.0, f64::max);
            (id.clone(), score)
        })
        .collect();
    scored.sort_by(|a, b| b.1.total_cmp(&a.1));
    scored.truncate(k);
    scored
}
