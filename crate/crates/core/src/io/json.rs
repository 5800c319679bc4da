//! Model interchange format (`.mm.json`).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::ArtifactError;
use crate::model::{build_model, GoalId, GoalNode, ModelParts, MotivationalModel};

#[derive(Serialize, Deserialize)]
struct ModelDoc {
    root: String,
    nodes: BTreeMap<String, NodeDoc>,
    #[serde(default)]
    roles: Vec<String>,
    #[serde(default)]
    qualities: Vec<String>,
    #[serde(default)]
    emotions: Vec<String>,
    #[serde(default)]
    concerns: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct NodeDoc {
    label: String,
    #[serde(default)]
    children: Vec<String>,
}

/// Unknown fields are ignored.
pub fn parse_model_json(text: &str) -> Result<MotivationalModel, ArtifactError> {
    let doc: ModelDoc = serde_json::from_str(text).map_err(|e| ArtifactError::parse(e.line().max(1), e.to_string()))?;
    let mut nodes = Vec::with_capacity(doc.nodes.len());
    for (id, node) in doc.nodes {
        nodes.push(GoalNode {
            id: GoalId::new(id)?,
            label: node.label,
            children: node.children.into_iter().map(GoalId::new).collect::<Result<_, _>>()?,
        });
    }
    Ok(build_model(ModelParts {
        root: Some(GoalId::new(doc.root)?),
        nodes,
        roles: doc.roles,
        qualities: doc.qualities,
        emotions: doc.emotions,
        concerns: doc.concerns,
    })?)
}

/// Pretty-printed with two-space indentation; node keys sorted by id.
pub fn emit_model_json(model: &MotivationalModel) -> String {
    let doc = ModelDoc {
        root: model.root().to_string(),
        nodes: model
            .nodes()
            .iter()
            .map(|(id, n)| {
                (
                    id.to_string(),
                    NodeDoc { label: n.label.clone(), children: n.children.iter().map(|c| c.to_string()).collect() },
                )
            })
            .collect(),
        roles: model.roles().to_vec(),
        qualities: model.qualities().to_vec(),
        emotions: model.emotions().to_vec(),
        concerns: model.concerns().to_vec(),
    };
    let mut out = serde_json::to_string_pretty(&doc).expect("model document serializes");
    out.push('\n');
    out
}
