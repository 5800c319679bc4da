//! Motivational model: a tree of functional goals plus model-wide role,
//! quality, emotion and concern labels.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linker::{normalize_label, AliasTable, NormalizedLabel};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("goal tree is empty")]
    EmptyTree,
    #[error("duplicate goal id `{0}`")]
    DuplicateId(String),
    #[error("invalid goal id `{0}` (expected letters, digits, `_`, `-` or `.`)")]
    InvalidId(String),
    #[error("empty label in {0}")]
    EmptyLabel(String),
    #[error("duplicate label `{label}` in {set}")]
    DuplicateLabelInSet { set: &'static str, label: String },
    #[error("cycle detected through goal `{0}`")]
    CycleDetected(String),
    #[error("goal `{0}` has more than one parent")]
    MultipleParents(String),
    #[error("goal `{0}` is not reachable from the root")]
    Unreachable(String),
    #[error("unknown goal `{0}`")]
    UnknownNode(String),
    #[error("label `{label}` matches more than one {kind} goal")]
    AmbiguousLabel { kind: GoalKind, label: String },
}

/// Identifier of a functional goal.
///
/// Restricted to ASCII letters, digits, `_`, `-` and `.` so ids can be
/// written unquoted in every artifact format.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct GoalId(String);

impl GoalId {
    pub fn new(id: impl Into<String>) -> Result<Self, ModelError> {
        let id = id.into();
        if Self::is_valid(&id) {
            Ok(Self(id))
        } else {
            Err(ModelError::InvalidId(id))
        }
    }

    pub fn is_valid(id: &str) -> bool {
        !id.is_empty() && id.chars().all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '-' | '.'))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl TryFrom<String> for GoalId {
    type Error = ModelError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        Self::new(s)
    }
}

impl From<GoalId> for String {
    fn from(id: GoalId) -> Self {
        id.0
    }
}

impl fmt::Display for GoalId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoalNode {
    pub id: GoalId,
    pub label: String,
    pub children: Vec<GoalId>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GoalKind {
    Functional,
    Quality,
    Emotional,
    Concern,
}

impl fmt::Display for GoalKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GoalKind::Functional => "functional",
            GoalKind::Quality => "quality",
            GoalKind::Emotional => "emotional",
            GoalKind::Concern => "concern",
        })
    }
}

/// Nested goal description; ids are optional and filled in by [`GoalTree::into_nodes`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoalTree {
    pub id: Option<String>,
    pub label: String,
    pub children: Vec<GoalTree>,
}

impl GoalTree {
    pub fn new(label: impl Into<String>) -> Self {
        Self { id: None, label: label.into(), children: Vec::new() }
    }

    pub fn with_id(mut self, id: impl Into<String>) -> Self {
        self.id = Some(id.into());
        self
    }

    pub fn child(mut self, child: GoalTree) -> Self {
        self.children.push(child);
        self
    }

    /// Flattens the tree in pre-order. Nodes without an id get `G<n>`, where
    /// `n` is their 1-based pre-order position.
    pub fn into_nodes(self) -> Result<(GoalId, Vec<GoalNode>), ModelError> {
        fn walk(tree: GoalTree, counter: &mut usize, out: &mut Vec<GoalNode>) -> Result<GoalId, ModelError> {
            *counter += 1;
            let id = GoalId::new(tree.id.unwrap_or_else(|| format!("G{counter}")))?;
            let slot = out.len();
            out.push(GoalNode { id: id.clone(), label: tree.label, children: Vec::new() });
            let mut children = Vec::with_capacity(tree.children.len());
            for c in tree.children {
                children.push(walk(c, counter, out)?);
            }
            out[slot].children = children;
            Ok(id)
        }
        let mut nodes = Vec::new();
        let root = walk(self, &mut 0, &mut nodes)?;
        Ok((root, nodes))
    }
}

/// Raw parts accepted by [`build_model`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ModelParts {
    pub root: Option<GoalId>,
    pub nodes: Vec<GoalNode>,
    pub roles: Vec<String>,
    pub qualities: Vec<String>,
    pub emotions: Vec<String>,
    pub concerns: Vec<String>,
}

impl ModelParts {
    pub fn from_tree(tree: GoalTree) -> Result<Self, ModelError> {
        let (root, nodes) = tree.into_nodes()?;
        Ok(Self { root: Some(root), nodes, ..Self::default() })
    }
}

/// Result of [`MotivationalModel::find_goal`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GoalMatch {
    Node(GoalId),
    /// Model-wide label (role-less quality, emotion or concern), original spelling.
    Label(String),
}

/// Immutable, validated motivational model.
#[derive(Debug, Clone)]
pub struct MotivationalModel {
    root: GoalId,
    nodes: BTreeMap<GoalId, GoalNode>,
    roles: Vec<String>,
    qualities: Vec<String>,
    emotions: Vec<String>,
    concerns: Vec<String>,
    parent: HashMap<GoalId, GoalId>,
    depth: HashMap<GoalId, usize>,
    preorder: Vec<GoalId>,
}

impl PartialEq for MotivationalModel {
    fn eq(&self, other: &Self) -> bool {
        self.root == other.root
            && self.nodes == other.nodes
            && self.roles == other.roles
            && self.qualities == other.qualities
            && self.emotions == other.emotions
            && self.concerns == other.concerns
    }
}

impl Eq for MotivationalModel {}

pub fn build_model(parts: ModelParts) -> Result<MotivationalModel, ModelError> {
    let root = parts.root.ok_or(ModelError::EmptyTree)?;
    if parts.nodes.is_empty() {
        return Err(ModelError::EmptyTree);
    }

    let mut nodes = BTreeMap::new();
    for node in parts.nodes {
        if node.label.trim().is_empty() {
            return Err(ModelError::EmptyLabel(format!("goal `{}`", node.id)));
        }
        if nodes.contains_key(&node.id) {
            return Err(ModelError::DuplicateId(node.id.0));
        }
        nodes.insert(node.id.clone(), node);
    }
    if !nodes.contains_key(&root) {
        return Err(ModelError::UnknownNode(root.0));
    }

    let mut parent = HashMap::new();
    for node in nodes.values() {
        for child in &node.children {
            if !nodes.contains_key(child) {
                return Err(ModelError::UnknownNode(child.0.clone()));
            }
            if *child == root || *child == node.id {
                return Err(ModelError::CycleDetected(child.0.clone()));
            }
            if parent.insert(child.clone(), node.id.clone()).is_some() {
                return Err(ModelError::MultipleParents(child.0.clone()));
            }
        }
    }

    // Every non-root node now has exactly one parent; anything unreachable
    // from the root either has no parent or sits on a cycle.
    let mut depth = HashMap::new();
    let mut preorder = Vec::with_capacity(nodes.len());
    let mut stack = vec![(root.clone(), 0usize)];
    while let Some((id, d)) = stack.pop() {
        depth.insert(id.clone(), d);
        preorder.push(id.clone());
        for child in nodes[&id].children.iter().rev() {
            stack.push((child.clone(), d + 1));
        }
    }
    if let Some(stray) = nodes.keys().find(|id| !depth.contains_key(*id)) {
        return Err(if parent.contains_key(stray) {
            ModelError::CycleDetected(stray.0.clone())
        } else {
            ModelError::Unreachable(stray.0.clone())
        });
    }

    let roles = check_label_set("roles", parts.roles)?;
    let qualities = check_label_set("qualities", parts.qualities)?;
    let emotions = check_label_set("emotions", parts.emotions)?;
    let concerns = check_label_set("concerns", parts.concerns)?;

    Ok(MotivationalModel { root, nodes, roles, qualities, emotions, concerns, parent, depth, preorder })
}

fn check_label_set(set: &'static str, labels: Vec<String>) -> Result<Vec<String>, ModelError> {
    let mut seen = BTreeSet::new();
    for label in &labels {
        if label.trim().is_empty() {
            return Err(ModelError::EmptyLabel(set.to_string()));
        }
        if !seen.insert(normalize_label(label)) {
            return Err(ModelError::DuplicateLabelInSet { set, label: label.clone() });
        }
    }
    Ok(labels)
}

impl MotivationalModel {
    pub fn root(&self) -> &GoalId {
        &self.root
    }

    pub fn node(&self, id: &GoalId) -> Option<&GoalNode> {
        self.nodes.get(id)
    }

    pub fn node_by_str(&self, id: &str) -> Option<&GoalNode> {
        GoalId::new(id).ok().and_then(|id| self.nodes.get(&id))
    }

    pub fn label(&self, id: &GoalId) -> &str {
        &self.nodes[id].label
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Nodes keyed by id.
    pub fn nodes(&self) -> &BTreeMap<GoalId, GoalNode> {
        &self.nodes
    }

    /// Node ids in depth-first pre-order.
    pub fn preorder(&self) -> &[GoalId] {
        &self.preorder
    }

    pub fn roles(&self) -> &[String] {
        &self.roles
    }

    pub fn qualities(&self) -> &[String] {
        &self.qualities
    }

    pub fn emotions(&self) -> &[String] {
        &self.emotions
    }

    pub fn concerns(&self) -> &[String] {
        &self.concerns
    }

    /// Model-wide labels of the given kind. Functional goals live in the tree.
    pub fn labels(&self, kind: GoalKind) -> &[String] {
        match kind {
            GoalKind::Functional => &[],
            GoalKind::Quality => &self.qualities,
            GoalKind::Emotional => &self.emotions,
            GoalKind::Concern => &self.concerns,
        }
    }

    pub fn parent(&self, id: &GoalId) -> Option<&GoalId> {
        self.parent.get(id)
    }

    pub fn depth(&self, id: &GoalId) -> Option<usize> {
        self.depth.get(id).copied()
    }

    pub fn is_leaf(&self, id: &GoalId) -> bool {
        self.nodes.get(id).is_some_and(|n| n.children.is_empty())
    }

    /// Leaves in depth-first pre-order.
    pub fn leaf_goals(&self) -> Vec<&GoalId> {
        self.preorder.iter().filter(|id| self.is_leaf(id)).collect()
    }

    pub fn subtree_of(&self, id: &GoalId) -> Result<BTreeSet<GoalId>, ModelError> {
        if !self.nodes.contains_key(id) {
            return Err(ModelError::UnknownNode(id.0.clone()));
        }
        let mut out = BTreeSet::new();
        let mut stack = vec![id];
        while let Some(n) = stack.pop() {
            out.insert(n.clone());
            stack.extend(self.nodes[n].children.iter());
        }
        Ok(out)
    }

    /// Child of the root whose subtree holds `id`; `None` for the root itself.
    pub fn top_level_ancestor(&self, id: &GoalId) -> Option<&GoalId> {
        let mut cur = self.nodes.get_key_value(id)?.0;
        loop {
            let p = self.parent.get(cur)?;
            if *p == self.root {
                return Some(cur);
            }
            cur = p;
        }
    }

    /// Deepest node whose subtree contains every id in `ids`.
    pub fn lowest_common_ancestor<'a, I>(&self, ids: I) -> Result<GoalId, ModelError>
    where
        I: IntoIterator<Item = &'a GoalId>,
    {
        let mut acc: Option<GoalId> = None;
        for id in ids {
            if !self.nodes.contains_key(id) {
                return Err(ModelError::UnknownNode(id.0.clone()));
            }
            acc = Some(match acc {
                None => id.clone(),
                Some(a) => self.lca_pair(&a, id),
            });
        }
        acc.ok_or(ModelError::EmptyTree)
    }

    fn lca_pair(&self, a: &GoalId, b: &GoalId) -> GoalId {
        let (mut a, mut b) = (a, b);
        let (mut da, mut db) = (self.depth[a], self.depth[b]);
        while da > db {
            a = &self.parent[a];
            da -= 1;
        }
        while db > da {
            b = &self.parent[b];
            db -= 1;
        }
        while a != b {
            a = &self.parent[a];
            b = &self.parent[b];
        }
        a.clone()
    }

    /// Looks up a goal of `kind` whose normalized, alias-resolved label equals
    /// the resolved query.
    pub fn find_goal(
        &self,
        kind: GoalKind,
        label: &NormalizedLabel,
        aliases: &AliasTable,
    ) -> Result<Option<GoalMatch>, ModelError> {
        let want = aliases.resolve(label);
        let ambiguous = || ModelError::AmbiguousLabel { kind, label: label.to_string() };
        match kind {
            GoalKind::Functional => {
                let mut hits = self.preorder.iter().filter(|id| aliases.canonical(&self.nodes[*id].label) == want);
                let first = hits.next();
                if hits.next().is_some() {
                    return Err(ambiguous());
                }
                Ok(first.map(|id| GoalMatch::Node(id.clone())))
            }
            _ => {
                let mut hits = self.labels(kind).iter().filter(|l| aliases.canonical(l) == want);
                let first = hits.next();
                if hits.next().is_some() {
                    return Err(ambiguous());
                }
                Ok(first.map(|l| GoalMatch::Label(l.clone())))
            }
        }
    }

    /// Returns a copy with the concern list cleared.
    pub fn without_concerns(&self) -> Self {
        Self { concerns: Vec::new(), ..self.clone() }
    }

    /// Decomposes back into [`ModelParts`] with nodes in pre-order.
    pub fn to_parts(&self) -> ModelParts {
        ModelParts {
            root: Some(self.root.clone()),
            nodes: self.preorder.iter().map(|id| self.nodes[id].clone()).collect(),
            roles: self.roles.clone(),
            qualities: self.qualities.clone(),
            emotions: self.emotions.clone(),
            concerns: self.concerns.clone(),
        }
    }
}
