use std::collections::BTreeSet;

use super::{CheckId, EpicMode};
use crate::io::{Epic, Persona, UserStory};
use crate::linker::{content_tokens, normalize_label, AliasTable, NormalizedLabel, StoryLinks};
use crate::model::{GoalId, GoalKind, GoalMatch, ModelError, MotivationalModel};
use crate::report::{Diagnostic, SubjectKind};

fn model_roles(model: &MotivationalModel, aliases: &AliasTable) -> BTreeSet<NormalizedLabel> {
    model.roles().iter().map(|r| aliases.canonical(r)).collect()
}

/// Every model role has at least one persona.
pub fn check_cp1(model: &MotivationalModel, personas: &[Persona], aliases: &AliasTable) -> Vec<Diagnostic> {
    let covered: BTreeSet<_> = personas.iter().map(|p| aliases.canonical(&p.role)).collect();
    model
        .roles()
        .iter()
        .filter(|role| !covered.contains(&aliases.canonical(role)))
        .map(|role| Diagnostic::new(CheckId::Cp1, SubjectKind::Role, role, format!("no persona for role \"{role}\"")))
        .collect()
}

/// Every persona, and every story's role phrase, names a model role.
///
/// A role phrase that is a persona's name stands for that persona's role.
pub fn check_cp2(
    model: &MotivationalModel,
    personas: &[Persona],
    stories: &[UserStory],
    aliases: &AliasTable,
) -> Vec<Diagnostic> {
    let roles = model_roles(model, aliases);
    let mut out: Vec<Diagnostic> = personas
        .iter()
        .filter(|p| !roles.contains(&aliases.canonical(&p.role)))
        .map(|p| {
            Diagnostic::new(
                CheckId::Cp2,
                SubjectKind::Persona,
                &p.id,
                format!("persona role \"{}\" is not a role in the model", p.role),
            )
            .related(&p.role)
        })
        .collect();
    for story in stories {
        let phrase = aliases.canonical(&story.role_phrase);
        if roles.contains(&phrase) {
            continue;
        }
        let via_persona = personas
            .iter()
            .filter(|p| normalize_label(&p.name) == normalize_label(&story.role_phrase))
            .any(|p| roles.contains(&aliases.canonical(&p.role)));
        if !via_persona {
            out.push(
                Diagnostic::new(
                    CheckId::Cp2,
                    SubjectKind::Story,
                    &story.id,
                    format!("story role \"{}\" is not a role in the model", story.role_phrase),
                )
                .related(&story.role_phrase)
                .at(story.location.as_ref()),
            );
        }
    }
    out
}

/// Resolves a goal reference: exact id first, then unique label.
/// Fails when the label is ambiguous.
pub fn resolve_goal_ref(
    model: &MotivationalModel,
    entry: &str,
    aliases: &AliasTable,
) -> Result<Option<GoalId>, ModelError> {
    let entry = entry.trim();
    if let Some(node) = model.node_by_str(entry) {
        return Ok(Some(node.id.clone()));
    }
    match model.find_goal(GoalKind::Functional, &normalize_label(entry), aliases) {
        Ok(Some(GoalMatch::Node(id))) => Ok(Some(id)),
        Ok(_) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Each epic's stories stay within one part of the goal tree.
///
/// With a declared goal, every story must link inside that goal's subtree.
/// Otherwise the lowest common ancestor of the epic's links must not be the
/// root while the links fall in more than one top-level subtree. The
/// unassigned epic is skipped.
pub fn check_cp3(
    model: &MotivationalModel,
    epics: &[Epic],
    stories: &[UserStory],
    links: &[StoryLinks],
    aliases: &AliasTable,
    mode: EpicMode,
) -> Vec<Diagnostic> {
    let links_of = |story_id: &str| stories.iter().position(|s| s.id == story_id).map(|i| (&stories[i], &links[i]));
    let mut out = Vec::new();
    for epic in epics.iter().filter(|e| !e.is_unassigned()) {
        let declared = match (&epic.declared_node, mode) {
            (Some(node), _) => match resolve_goal_ref(model, node, aliases) {
                Ok(Some(id)) => Some(id),
                _ => {
                    out.push(
                        Diagnostic::new(
                            CheckId::Cp3,
                            SubjectKind::Epic,
                            &epic.name,
                            format!(
                                "declared goal \"{node}\" of epic \"{}\" does not name a single goal in the model",
                                epic.name
                            ),
                        )
                        .related(node),
                    );
                    continue;
                }
            },
            (None, EpicMode::ByName) => resolve_goal_ref(model, &epic.name, aliases).ok().flatten(),
            (None, EpicMode::Declared) => None,
        };

        if let Some(goal) = declared {
            let scope = model.subtree_of(&goal).expect("resolved goal exists");
            for (story, l) in epic.stories.iter().filter_map(|s| links_of(s)) {
                let outside: Vec<_> = l.functional.iter().filter(|g| !scope.contains(*g)).collect();
                if !outside.is_empty() {
                    let names: Vec<_> = outside.iter().map(|g| format!("\"{}\"", model.label(g))).collect();
                    out.push(
                        Diagnostic::new(
                            CheckId::Cp3,
                            SubjectKind::Story,
                            &story.id,
                            format!(
                                "story in epic \"{}\" links {} outside goal \"{}\"",
                                epic.name,
                                names.join(", "),
                                model.label(&goal)
                            ),
                        )
                        .related(model.label(&goal))
                        .at(story.location.as_ref()),
                    );
                }
            }
            continue;
        }

        let linked: BTreeSet<&GoalId> =
            epic.stories.iter().filter_map(|s| links_of(s)).flat_map(|(_, l)| l.functional.iter()).collect();
        if linked.is_empty() {
            continue;
        }
        let lca = model.lowest_common_ancestor(linked.iter().copied()).expect("linked goals exist");
        let branches: BTreeSet<Option<&GoalId>> = linked.iter().map(|g| model.top_level_ancestor(g)).collect();
        if lca == *model.root() && branches.len() > 1 {
            let names: Vec<_> =
                branches.iter().map(|b| format!("\"{}\"", model.label((*b).unwrap_or(model.root())))).collect();
            out.push(Diagnostic::new(
                CheckId::Cp3,
                SubjectKind::Epic,
                &epic.name,
                format!(
                    "stories of epic \"{}\" spread over {} top-level goals ({}); no single subtree reflects the epic",
                    epic.name,
                    branches.len(),
                    names.join(", ")
                ),
            ));
        }
    }
    out
}

/// Every story links to at least one functional goal.
pub fn check_cp4(stories: &[UserStory], links: &[StoryLinks]) -> Vec<Diagnostic> {
    stories
        .iter()
        .zip(links)
        .filter(|(_, l)| l.functional.is_empty())
        .map(|(story, l)| {
            let unresolved: Vec<_> = l.unresolved_of(GoalKind::Functional).map(|u| format!("\"{u}\"")).collect();
            let message = if unresolved.is_empty() {
                "story relates to no goal in the model".to_string()
            } else {
                format!("story relates to no goal in the model (unmatched: {})", unresolved.join(", "))
            };
            Diagnostic::new(CheckId::Cp4, SubjectKind::Story, &story.id, message).at(story.location.as_ref())
        })
        .collect()
}

/// Every leaf goal is linked directly by at least one story.
pub fn check_cp5(model: &MotivationalModel, links: &[StoryLinks]) -> Vec<Diagnostic> {
    let covered: BTreeSet<&GoalId> = links.iter().flat_map(|l| l.functional.iter()).collect();
    model
        .leaf_goals()
        .into_iter()
        .filter(|leaf| !covered.contains(leaf))
        .map(|leaf| {
            Diagnostic::new(
                CheckId::Cp5,
                SubjectKind::Goal,
                leaf.as_str(),
                format!("no user story for leaf goal \"{}\"", model.label(leaf)),
            )
            .related(model.label(leaf))
        })
        .collect()
}

/// Every quality (or emotional) goal is declared by at least one story.
pub fn check_goal_coverage(model: &MotivationalModel, links: &[StoryLinks], kind: GoalKind) -> Vec<Diagnostic> {
    let (code, covered): (_, BTreeSet<&String>) = match kind {
        GoalKind::Quality => (CheckId::Cp6, links.iter().flat_map(|l| l.qualities.iter()).collect()),
        GoalKind::Emotional => (CheckId::Cp8, links.iter().flat_map(|l| l.emotions.iter()).collect()),
        _ => return Vec::new(),
    };
    model
        .labels(kind)
        .iter()
        .filter(|g| !covered.contains(g))
        .map(|g| {
            Diagnostic::new(code, SubjectKind::Goal, g, format!("no user story for {kind} goal \"{g}\"")).related(g)
        })
        .collect()
}

/// Every quality (or emotional) label a story declares exists in the model.
pub fn check_goal_vocabulary(stories: &[UserStory], links: &[StoryLinks], kind: GoalKind) -> Vec<Diagnostic> {
    let code = match kind {
        GoalKind::Quality => CheckId::Cp7,
        GoalKind::Emotional => CheckId::Cp9,
        _ => return Vec::new(),
    };
    stories
        .iter()
        .zip(links)
        .flat_map(|(story, l)| {
            l.unresolved_of(kind).map(move |label| {
                Diagnostic::new(
                    code,
                    SubjectKind::Story,
                    &story.id,
                    format!("{kind} goal \"{label}\" is not in the model"),
                )
                .related(label.as_str())
                .at(story.location.as_ref())
            })
        })
        .collect()
}

/// Advisory: a story's purpose clause shares no content word with any
/// functional, quality or emotional goal (or an alias of one).
pub fn check_purpose_alignment(
    model: &MotivationalModel,
    stories: &[UserStory],
    aliases: &AliasTable,
) -> Vec<Diagnostic> {
    let labels = model
        .preorder()
        .iter()
        .map(|id| model.label(id))
        .chain(model.qualities().iter().map(String::as_str))
        .chain(model.emotions().iter().map(String::as_str));
    let mut vocabulary = BTreeSet::new();
    for label in labels {
        vocabulary.extend(content_tokens(label));
        for variant in aliases.variants(&aliases.canonical(label)) {
            vocabulary.extend(content_tokens(variant.as_str()));
        }
    }
    stories
        .iter()
        .filter_map(|story| {
            let purpose = story.purpose.as_ref()?;
            if content_tokens(purpose).is_disjoint(&vocabulary) {
                Some(
                    Diagnostic::new(
                        CheckId::AdvPurpose,
                        SubjectKind::Story,
                        &story.id,
                        format!("purpose \"{purpose}\" matches no goal in the model; consider adding one"),
                    )
                    .at(story.location.as_ref()),
                )
            } else {
                None
            }
        })
        .collect()
}
