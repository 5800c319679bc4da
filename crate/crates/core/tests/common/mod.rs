//! Random artifact generators and a brute-force reference for every check.
//!
//! The reference re-derives everything from raw inputs: its own label
//! normalization, alias closure by fixpoint iteration, ancestor chains from
//! the child lists, and set enumeration for each predicate.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use mmlint::io::{ArtifactBundle, UNASSIGNED_EPIC};
use mmlint::linker::{AliasTable, PURPOSE_STOP_WORDS, STOP_WORDS};
use mmlint::model::{build_model, GoalId, GoalNode, ModelParts, MotivationalModel};
use mmlint::{CheckId, EpicMode, Persona, SubjectKind, UserStory};
use rand::seq::IndexedRandom;
use rand::Rng;

pub const GOAL_WORDS: &[&str] =
    &["Alpha", "alpha.", "Beta", "Gamma", "Delta", "Track progress", "Add version", "Colour shapes"];
pub const ROLE_WORDS: &[&str] = &["Student", "student!", "Developer", "Manager", "user", "Client", "Tutor"];
pub const QUALITY_WORDS: &[&str] = &["Reliable", "Fast", "Secure", "Easy to use", "Helpful"];
pub const EMOTION_WORDS: &[&str] = &["Calm", "Happy", "Confident", "Engaged", "Safe"];
pub const CONCERN_WORDS: &[&str] = &["Unstable", "Slow", "Calm", "Lost"];
pub const PERSONA_NAMES: &[&str] = &["Priya", "Tom", "Alex", "user"];
pub const FREE_WORDS: &[&str] =
    &["progress", "track", "the", "with", "model", "alpha", "gamma", "fast", "calm", "report", "so", "version"];

pub struct Generated {
    pub bundle: ArtifactBundle,
    pub alias_lines: Vec<Vec<String>>,
    pub epic_nodes: Vec<(String, String)>,
    pub mode: EpicMode,
}

fn pick<'a, R: Rng>(rng: &mut R, words: &'a [&'a str]) -> &'a str {
    words.choose(rng).unwrap()
}

/// Up to `max` labels, distinct after normalization.
fn distinct_labels<R: Rng>(rng: &mut R, words: &[&str], max: usize) -> Vec<String> {
    let n = rng.random_range(0..=max);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for _ in 0..n {
        let w = pick(rng, words);
        if seen.insert(ref_normalize(w)) {
            out.push(w.to_string());
        }
    }
    out
}

pub fn random_model<R: Rng>(rng: &mut R, max_nodes: usize, need_role: bool) -> MotivationalModel {
    let n = rng.random_range(1..=max_nodes);
    let mut nodes: Vec<GoalNode> = (0..n)
        .map(|i| GoalNode {
            id: GoalId::new(format!("n{i}")).unwrap(),
            label: pick(rng, GOAL_WORDS).to_string(),
            children: vec![],
        })
        .collect();
    for child in 1..n {
        let parent = rng.random_range(0..child);
        let id = nodes[child].id.clone();
        nodes[parent].children.push(id);
    }
    let mut roles = distinct_labels(rng, ROLE_WORDS, 6);
    if need_role && roles.is_empty() {
        roles.push("Student".into());
    }
    build_model(ModelParts {
        root: Some(GoalId::new("n0").unwrap()),
        nodes,
        roles,
        qualities: distinct_labels(rng, QUALITY_WORDS, 4),
        emotions: distinct_labels(rng, EMOTION_WORDS, 4),
        concerns: distinct_labels(rng, CONCERN_WORDS, 3),
    })
    .unwrap()
}

fn words<R: Rng>(rng: &mut R, n: std::ops::RangeInclusive<usize>) -> String {
    let k = rng.random_range(n);
    (0..k).map(|_| pick(rng, FREE_WORDS)).collect::<Vec<_>>().join(" ")
}

pub fn random_stories<R: Rng>(rng: &mut R, model: &MotivationalModel, max: usize) -> Vec<UserStory> {
    let n = rng.random_range(0..=max);
    let ids: Vec<String> = model.nodes().keys().map(|k| k.to_string()).collect();
    (0..n)
        .map(|i| {
            let mut link_pool: Vec<String> = ids.clone();
            link_pool.extend(GOAL_WORDS.iter().map(|s| s.to_string()));
            link_pool.push("Export to PDF".into());
            let links = (0..rng.random_range(0..=2)).map(|_| link_pool.choose(rng).unwrap().clone()).collect();
            let qualities = (0..rng.random_range(0..=2))
                .map(|_| pick(rng, &["Reliable", "fast!", "Secure", "Ease of use", "Unstable", "Slow"]).to_string())
                .collect();
            let emotions = (0..rng.random_range(0..=2))
                .map(|_| pick(rng, &["Calm", "happy", "Lost", "Unstable", "Frustrated", "Safe"]).to_string())
                .collect();
            let role = if rng.random_bool(0.25) { pick(rng, PERSONA_NAMES) } else { pick(rng, ROLE_WORDS) };
            UserStory {
                id: format!("S{i}"),
                role_phrase: role.to_string(),
                want: format!("to {}", words(rng, 1..=3)),
                purpose: rng.random_bool(0.7).then(|| words(rng, 1..=4)).filter(|p| !p.is_empty()),
                epic: [None, Some("E1"), Some("E2"), Some("Alpha"), Some("Gamma")]
                    .choose(rng)
                    .unwrap()
                    .map(String::from),
                declared_links: links,
                declared_qualities: qualities,
                declared_emotions: emotions,
                location: None,
            }
        })
        .collect()
}

pub fn random_personas<R: Rng>(rng: &mut R, max: usize) -> Vec<Persona> {
    (0..rng.random_range(0..=max))
        .map(|i| Persona {
            id: format!("p{i}"),
            name: pick(rng, PERSONA_NAMES).to_string(),
            role: pick(rng, ROLE_WORDS).to_string(),
            description: String::new(),
        })
        .collect()
}

pub fn random_bundle<R: Rng>(rng: &mut R) -> Generated {
    let model = random_model(rng, 8, false);
    let stories = random_stories(rng, &model, 10);
    let personas = random_personas(rng, 4);
    let mut pool: Vec<&str> = GOAL_WORDS.to_vec();
    pool.extend(ROLE_WORDS);
    pool.extend(QUALITY_WORDS);
    pool.extend(["Ease of use", "fast!", "Frustrated", "Unstable", "Calm", "Happy"]);
    let alias_lines: Vec<Vec<String>> = (0..rng.random_range(0..=3))
        .map(|_| (0..rng.random_range(2..=3)).map(|_| pick(rng, &pool).to_string()).collect())
        .collect();
    let mut builder = AliasTable::builder();
    for line in &alias_lines {
        builder.declare(line);
    }
    let mut epic_nodes = Vec::new();
    let epic_names: BTreeSet<String> = stories.iter().filter_map(|s| s.epic.clone()).collect();
    if rng.random_bool(0.3) {
        if let Some(name) = epic_names.iter().collect::<Vec<_>>().choose(rng) {
            let mut refs: Vec<String> = model.nodes().keys().map(|k| k.to_string()).collect();
            refs.push(pick(rng, GOAL_WORDS).to_string());
            refs.push("nowhere".into());
            epic_nodes.push(((*name).clone(), refs.choose(rng).unwrap().clone()));
        }
    }
    let mode = if rng.random_bool(0.5) { EpicMode::Declared } else { EpicMode::ByName };
    let bundle = ArtifactBundle::assemble(model, personas, stories, builder.build(), &epic_nodes).unwrap();
    Generated { bundle, alias_lines, epic_nodes, mode }
}

// ---------------------------------------------------------------------------
// Reference implementation

pub fn ref_normalize(s: &str) -> String {
    let lower: String = s.chars().flat_map(char::to_lowercase).collect();
    let collapsed = lower.split_whitespace().collect::<Vec<_>>().join(" ");
    collapsed.trim_matches(|c: char| !c.is_alphanumeric()).to_string()
}

/// Equivalence over normalized labels, closed by fixpoint iteration.
pub struct RefAliases {
    pairs: Vec<(String, String)>,
    labels: BTreeSet<String>,
}

impl RefAliases {
    pub fn new(lines: &[Vec<String>]) -> Self {
        let mut pairs = Vec::new();
        let mut labels = BTreeSet::new();
        for line in lines {
            for w in line.windows(2) {
                pairs.push((ref_normalize(&w[0]), ref_normalize(&w[1])));
            }
            labels.extend(line.iter().map(|l| ref_normalize(l)));
        }
        Self { pairs, labels }
    }

    pub fn class(&self, x: &str) -> BTreeSet<String> {
        let mut reach = BTreeSet::from([ref_normalize(x)]);
        loop {
            let before = reach.len();
            for (a, b) in &self.pairs {
                if reach.contains(a) || reach.contains(b) {
                    reach.insert(a.clone());
                    reach.insert(b.clone());
                }
            }
            if reach.len() == before {
                return reach;
            }
        }
    }

    pub fn same(&self, a: &str, b: &str) -> bool {
        self.class(a).contains(&ref_normalize(b))
    }

    pub fn variants(&self, x: &str) -> BTreeSet<String> {
        self.class(x)
    }
}

#[derive(Default)]
pub struct RefLinks {
    pub functional: BTreeSet<String>,
    pub qualities: BTreeSet<String>,
    pub emotions: BTreeSet<String>,
    pub unresolved_quality: usize,
    pub unresolved_emotion: usize,
    pub ambiguous: usize,
}

pub type Finding = (CheckId, SubjectKind, String);

pub struct Reference<'a> {
    pub model: &'a MotivationalModel,
    pub personas: &'a [Persona],
    pub stories: &'a [UserStory],
    pub aliases: RefAliases,
    pub epic_nodes: &'a [(String, String)],
    pub mode: EpicMode,
    parent: BTreeMap<String, String>,
}

impl<'a> Reference<'a> {
    pub fn new(g: &'a Generated) -> Self {
        let b = &g.bundle;
        let mut parent = BTreeMap::new();
        for node in b.model.nodes().values() {
            for c in &node.children {
                parent.insert(c.to_string(), node.id.to_string());
            }
        }
        Self {
            model: &b.model,
            personas: &b.personas,
            stories: &b.stories,
            aliases: RefAliases::new(&g.alias_lines),
            epic_nodes: &g.epic_nodes,
            mode: g.mode,
            parent,
        }
    }

    fn root(&self) -> String {
        self.model.nodes().keys().find(|k| !self.parent.contains_key(k.as_str())).unwrap().to_string()
    }

    fn ancestors(&self, id: &str) -> Vec<String> {
        let mut out = vec![id.to_string()];
        while let Some(p) = self.parent.get(out.last().unwrap()) {
            out.push(p.clone());
        }
        out
    }

    fn label_of(&self, id: &str) -> &str {
        &self.model.node_by_str(id).unwrap().label
    }

    /// Candidate nodes for a goal reference: exact id, else every node whose label is equivalent.
    fn goal_candidates(&self, entry: &str) -> Vec<String> {
        let entry = entry.trim();
        if self.model.nodes().keys().any(|k| k.as_str() == entry) {
            return vec![entry.to_string()];
        }
        self.model.nodes().values().filter(|n| self.aliases.same(&n.label, entry)).map(|n| n.id.to_string()).collect()
    }

    pub fn links(&self, s: &UserStory) -> RefLinks {
        let mut l = RefLinks::default();
        for e in s.declared_links.iter().filter(|e| !e.trim().is_empty()) {
            match self.goal_candidates(e).as_slice() {
                [one] => {
                    l.functional.insert(one.clone());
                }
                [] => {}
                _ => l.ambiguous += 1,
            }
        }
        for (entries, set, resolved, unresolved) in [
            (&s.declared_qualities, self.model.qualities(), &mut l.qualities, &mut l.unresolved_quality),
            (&s.declared_emotions, self.model.emotions(), &mut l.emotions, &mut l.unresolved_emotion),
        ] {
            for e in entries.iter().filter(|e| !e.trim().is_empty()) {
                let hits: Vec<&String> = set.iter().filter(|g| self.aliases.same(g, e)).collect();
                match hits.as_slice() {
                    [one] => {
                        resolved.insert((*one).clone());
                    }
                    [] => *unresolved += 1,
                    _ => l.ambiguous += 1,
                }
            }
        }
        l
    }

    fn is_role(&self, label: &str) -> bool {
        self.model.roles().iter().any(|r| self.aliases.same(r, label))
    }

    fn content_words(text: &str) -> BTreeSet<String> {
        text.split(|c: char| !c.is_alphanumeric())
            .filter(|t| !t.is_empty())
            .map(|t| t.to_lowercase())
            .filter(|t| !STOP_WORDS.contains(&t.as_str()) && !PURPOSE_STOP_WORDS.contains(&t.as_str()))
            .collect()
    }

    /// Expected findings for one check.
    pub fn expected(&self, id: CheckId) -> Vec<Finding> {
        let links: Vec<RefLinks> = self.stories.iter().map(|s| self.links(s)).collect();
        let story = |i: usize| self.stories[i].id.clone();
        let mut out = Vec::new();
        match id {
            CheckId::Config => {
                for (i, l) in links.iter().enumerate() {
                    for _ in 0..l.ambiguous {
                        out.push((id, SubjectKind::Story, story(i)));
                    }
                }
            }
            CheckId::Cp1 => {
                for r in self.model.roles() {
                    if !self.personas.iter().any(|p| self.aliases.same(&p.role, r)) {
                        out.push((id, SubjectKind::Role, r.clone()));
                    }
                }
            }
            CheckId::Cp2 => {
                for p in self.personas {
                    if !self.is_role(&p.role) {
                        out.push((id, SubjectKind::Persona, p.id.clone()));
                    }
                }
                for s in self.stories {
                    let via_persona = self
                        .personas
                        .iter()
                        .any(|p| ref_normalize(&p.name) == ref_normalize(&s.role_phrase) && self.is_role(&p.role));
                    if !self.is_role(&s.role_phrase) && !via_persona {
                        out.push((id, SubjectKind::Story, s.id.clone()));
                    }
                }
            }
            CheckId::Cp3 => {
                let mut epics: Vec<(String, Vec<usize>)> = Vec::new();
                for (i, s) in self.stories.iter().enumerate() {
                    let name = s.epic.clone().unwrap_or_else(|| UNASSIGNED_EPIC.to_string());
                    match epics.iter_mut().find(|(n, _)| ref_normalize(n) == ref_normalize(&name)) {
                        Some((_, members)) => members.push(i),
                        None => epics.push((name, vec![i])),
                    }
                }
                let root = self.root();
                for (name, members) in epics.iter().filter(|(n, _)| n != UNASSIGNED_EPIC) {
                    let explicit = self
                        .epic_nodes
                        .iter()
                        .find(|(e, _)| ref_normalize(e) == ref_normalize(name))
                        .map(|(_, n)| n.clone());
                    let declared = match (&explicit, self.mode) {
                        (Some(r), _) => match self.goal_candidates(r).as_slice() {
                            [one] => Some(one.clone()),
                            _ => {
                                out.push((id, SubjectKind::Epic, name.clone()));
                                continue;
                            }
                        },
                        (None, EpicMode::ByName) => match self.goal_candidates(name).as_slice() {
                            [one] => Some(one.clone()),
                            _ => None,
                        },
                        (None, EpicMode::Declared) => None,
                    };
                    if let Some(d) = declared {
                        for &i in members {
                            if links[i].functional.iter().any(|n| !self.ancestors(n).contains(&d)) {
                                out.push((id, SubjectKind::Story, story(i)));
                            }
                        }
                        continue;
                    }
                    let linked: BTreeSet<&String> = members.iter().flat_map(|&i| links[i].functional.iter()).collect();
                    if linked.is_empty() {
                        continue;
                    }
                    let mut common: Option<BTreeSet<String>> = None;
                    for n in &linked {
                        let a: BTreeSet<String> = self.ancestors(n).into_iter().collect();
                        common = Some(match common {
                            None => a,
                            Some(c) => c.intersection(&a).cloned().collect(),
                        });
                    }
                    let lca = common.unwrap().into_iter().max_by_key(|n| self.ancestors(n).len()).unwrap();
                    let branches: BTreeSet<Option<String>> = linked
                        .iter()
                        .map(|n| self.ancestors(n).into_iter().find(|a| self.parent.get(a) == Some(&root)))
                        .collect();
                    if lca == root && branches.len() > 1 {
                        out.push((id, SubjectKind::Epic, name.clone()));
                    }
                }
            }
            CheckId::Cp4 => {
                for (i, l) in links.iter().enumerate() {
                    if l.functional.is_empty() {
                        out.push((id, SubjectKind::Story, story(i)));
                    }
                }
            }
            CheckId::Cp5 => {
                for node in self.model.nodes().values().filter(|n| n.children.is_empty()) {
                    if !links.iter().any(|l| l.functional.contains(node.id.as_str())) {
                        out.push((id, SubjectKind::Goal, node.id.to_string()));
                    }
                }
            }
            CheckId::Cp6 | CheckId::Cp8 => {
                type Pick = fn(&RefLinks) -> &BTreeSet<String>;
                let (set, pick): (&[String], Pick) = if id == CheckId::Cp6 {
                    (self.model.qualities(), |l| &l.qualities)
                } else {
                    (self.model.emotions(), |l| &l.emotions)
                };
                for g in set {
                    if !links.iter().any(|l| pick(l).contains(g)) {
                        out.push((id, SubjectKind::Goal, g.clone()));
                    }
                }
            }
            CheckId::Cp7 | CheckId::Cp9 => {
                for (i, l) in links.iter().enumerate() {
                    let n = if id == CheckId::Cp7 { l.unresolved_quality } else { l.unresolved_emotion };
                    for _ in 0..n {
                        out.push((id, SubjectKind::Story, story(i)));
                    }
                }
            }
            CheckId::AdvPurpose => {
                let mut vocabulary = BTreeSet::new();
                let labels = self
                    .model
                    .nodes()
                    .values()
                    .map(|n| n.label.clone())
                    .chain(self.model.qualities().iter().cloned())
                    .chain(self.model.emotions().iter().cloned());
                for label in labels {
                    vocabulary.extend(Self::content_words(&label));
                    for v in self.aliases.variants(&label) {
                        vocabulary.extend(Self::content_words(&v));
                    }
                }
                for s in self.stories {
                    if let Some(p) = &s.purpose {
                        if Self::content_words(p).is_disjoint(&vocabulary) {
                            out.push((id, SubjectKind::Story, s.id.clone()));
                        }
                    }
                }
            }
        }
        out.sort();
        out
    }

    pub fn sanity_label(&self, id: &str) -> &str {
        self.label_of(id)
    }
}

pub fn findings(diags: &[mmlint::Diagnostic], id: CheckId) -> Vec<Finding> {
    let mut v: Vec<Finding> =
        diags.iter().filter(|d| d.code == id).map(|d| (d.code, d.subject_kind, d.subject_id.clone())).collect();
    v.sort();
    v
}
