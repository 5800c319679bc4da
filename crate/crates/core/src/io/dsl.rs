//! Line-oriented model format (`.mm`).
//!
//! ```text
//! # comment
//! goal root: Create an extension to the MM tool
//!   goal: Provide version control
//!     goal: View the current versions
//! roles: Student, Software Developer
//! qualities: Reliable, "Fast, really"
//! emotions: Confident
//! concerns: Unstable
//! ```
//!
//! Goals nest by two spaces per level. The id between `goal` and `:` is
//! optional; missing ids become `G<n>` by pre-order position. Labels that
//! contain `#`, `,`, `:` or quotes, or that carry outer whitespace, are
//! written as JSON string literals.

use std::fmt::Write as _;

use super::quote::{emit_label_list, parse_label_list, quote_if_needed, take_label};
use super::ArtifactError;
use crate::model::{build_model, GoalId, GoalNode, ModelParts, MotivationalModel};

struct PendingGoal {
    id: Option<String>,
    label: String,
    children: Vec<usize>,
}

pub fn parse_model_dsl(text: &str) -> Result<MotivationalModel, ArtifactError> {
    let text = text.strip_prefix('\u{feff}').unwrap_or(text);
    let mut goals: Vec<PendingGoal> = Vec::new();
    // (depth, goal index) of the current ancestor chain
    let mut stack: Vec<(usize, usize)> = Vec::new();
    let mut parts = ModelParts::default();

    for (i, raw) in text.split('\n').enumerate() {
        let line_no = i + 1;
        let err = |reason: String| ArtifactError::parse(line_no, reason);
        let line = raw.strip_suffix('\r').unwrap_or(raw);
        let content = line.trim_start_matches(' ');
        let indent = line.len() - content.len();
        if content.trim().is_empty() || content.starts_with('#') {
            continue;
        }
        if content.starts_with(char::is_whitespace) {
            return Err(err("indentation must use spaces".into()));
        }
        if indent % 2 != 0 {
            return Err(err(format!("indentation of {indent} spaces is not a multiple of 2")));
        }
        let depth = indent / 2;

        let (keyword, rest) = split_keyword(content).ok_or_else(|| err("expected `keyword:`".into()))?;
        match keyword {
            "roles" | "qualities" | "emotions" | "concerns" => {
                if depth != 0 {
                    return Err(err(format!("`{keyword}:` must not be indented")));
                }
                let labels = parse_label_list(rest).map_err(err)?;
                let target = match keyword {
                    "roles" => &mut parts.roles,
                    "qualities" => &mut parts.qualities,
                    "emotions" => &mut parts.emotions,
                    _ => &mut parts.concerns,
                };
                target.extend(labels);
            }
            kw if kw == "goal" || kw.starts_with("goal ") => {
                let id = kw["goal".len()..].trim();
                let id = if id.is_empty() {
                    None
                } else if GoalId::is_valid(id) {
                    Some(id.to_string())
                } else {
                    return Err(err(format!("invalid goal id `{id}`")));
                };
                let (label, tail) = take_label(rest, &[]).map_err(err)?;
                if !tail.trim().is_empty() && !tail.trim_start().starts_with('#') {
                    return Err(err("unexpected text after label".into()));
                }
                if label.trim().is_empty() {
                    return Err(err("empty goal label".into()));
                }

                if goals.is_empty() {
                    if depth != 0 {
                        return Err(err("root goal must not be indented".into()));
                    }
                } else if depth == 0 {
                    return Err(err("a model has exactly one root goal".into()));
                }
                while stack.last().is_some_and(|&(d, _)| d >= depth) {
                    stack.pop();
                }
                let idx = goals.len();
                match stack.last() {
                    Some(&(d, parent)) if d + 1 == depth => goals[parent].children.push(idx),
                    Some(_) => return Err(err("goal is indented more than one level below its parent".into())),
                    None if depth == 0 => {}
                    None => unreachable!("non-root goal without ancestors"),
                }
                goals.push(PendingGoal { id, label, children: Vec::new() });
                stack.push((depth, idx));
            }
            other => return Err(err(format!("unknown keyword `{other}`"))),
        }
    }

    if goals.is_empty() {
        return Err(ArtifactError::parse(1, "no goal found"));
    }
    // Lines arrive in pre-order, so a goal's index is its pre-order position.
    let ids = goals
        .iter()
        .enumerate()
        .map(|(i, g)| GoalId::new(g.id.clone().unwrap_or_else(|| format!("G{}", i + 1))))
        .collect::<Result<Vec<_>, _>>()?;
    parts.root = Some(ids[0].clone());
    parts.nodes = goals
        .into_iter()
        .enumerate()
        .map(|(i, g)| GoalNode {
            id: ids[i].clone(),
            label: g.label,
            children: g.children.into_iter().map(|c| ids[c].clone()).collect(),
        })
        .collect();
    Ok(build_model(parts)?)
}

/// Splits `keyword[ id]: rest`; the keyword part never contains `:`, `"` or `#`.
fn split_keyword(content: &str) -> Option<(&str, &str)> {
    let colon = content.find(':')?;
    let kw = content[..colon].trim_end();
    if kw.is_empty() || kw.contains(['"', '#']) {
        return None;
    }
    Some((kw, &content[colon + 1..]))
}

pub fn emit_model_dsl(model: &MotivationalModel) -> String {
    let mut out = String::new();
    for id in model.preorder() {
        let depth = model.depth(id).unwrap_or(0);
        let _ = writeln!(out, "{}goal {}: {}", "  ".repeat(depth), id, quote_if_needed(model.label(id)));
    }
    for (key, labels) in [
        ("roles", model.roles()),
        ("qualities", model.qualities()),
        ("emotions", model.emotions()),
        ("concerns", model.concerns()),
    ] {
        if !labels.is_empty() {
            let _ = writeln!(out, "{key}: {}", emit_label_list(labels));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::ModelError;

    const FIG1: &str = "\
# extension project
goal root: Create an extension to the MM tool
  goal: Provide version control
    goal: View the current versions
    goal: Add a new version
  goal: Add color to the shape
  goal: Coordinate with other extensions
roles: Student, Software Developer, Product Manager
qualities: Reliable, Easy to use, Understandable, Helpful
concerns: Unstable
";

    #[test]
    fn parses_fig1() {
        let m = parse_model_dsl(FIG1).unwrap();
        assert_eq!(m.node_count(), 6);
        assert_eq!(m.roles().len(), 3);
        assert_eq!(m.qualities().len(), 4);
        assert_eq!(m.concerns().len(), 1);
        assert_eq!(m.root().as_str(), "root");
        assert_eq!(m.label(&GoalId::new("G4").unwrap()), "Add a new version");
        assert_eq!(m.leaf_goals().len(), 4);
    }

    #[test]
    fn single_goal() {
        let m = parse_model_dsl("goal: X").unwrap();
        assert_eq!(m.node_count(), 1);
        assert_eq!(m.root().as_str(), "G1");
    }

    #[test]
    fn crlf_accepted() {
        let m = parse_model_dsl(&FIG1.replace('\n', "\r\n")).unwrap();
        assert_eq!(m, parse_model_dsl(FIG1).unwrap());
    }

    #[test]
    fn odd_indentation_rejected() {
        let e = parse_model_dsl("goal: X\n   goal: Y\n").unwrap_err();
        assert!(matches!(e, ArtifactError::Parse { line: 2, .. }), "{e:?}");
    }

    #[test]
    fn grammar_errors() {
        for (text, line) in [
            ("", 1),
            ("# only a comment\n", 1),
            ("goal: X\ngoal: Y\n", 2),
            ("goal: X\n    goal: Y\n", 2),
            ("  goal: X\n", 1),
            ("goal: X\n\tgoal: Y\n", 2),
            ("goal: X\n  roles: a\n", 2),
            ("goal: X\nfoo: bar\n", 2),
            ("goal: \n", 1),
            ("goal bad id: X\n", 1),
            ("goal: X\nroles: a,,b\n", 2),
            ("just text\n", 1),
        ] {
            match parse_model_dsl(text) {
                Err(ArtifactError::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?} gave {other:?}"),
            }
        }
    }

    #[test]
    fn model_errors_surface() {
        assert_eq!(
            parse_model_dsl("goal a: X\n  goal a: Y\n"),
            Err(ArtifactError::Model(ModelError::DuplicateId("a".into())))
        );
        assert!(matches!(
            parse_model_dsl("goal: X\nroles: A, a\n"),
            Err(ArtifactError::Model(ModelError::DuplicateLabelInSet { .. }))
        ));
    }

    #[test]
    fn colon_labels_round_trip() {
        let m = parse_model_dsl("goal: \"Phase: one\"\n  goal: Sub # trailing comment\n").unwrap();
        assert_eq!(m.label(m.root()), "Phase: one");
        let text = emit_model_dsl(&m);
        assert!(text.contains("\"Phase: one\""));
        assert_eq!(parse_model_dsl(&text).unwrap(), m);
    }

    #[test]
    fn emission_is_canonical() {
        let m = parse_model_dsl(FIG1).unwrap();
        let text = emit_model_dsl(&m);
        assert_eq!(text, emit_model_dsl(&parse_model_dsl(&text).unwrap()));
        assert!(text.starts_with("goal root: Create an extension to the MM tool\n  goal G2: Provide version control\n"));
    }
}
