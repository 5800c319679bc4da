//! Label equivalence classes.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::label::{normalize_label, NormalizedLabel};

/// Disjoint-set forest with union by rank and path halving.
#[derive(Debug, Clone, Default)]
struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    fn push(&mut self) -> usize {
        let id = self.parent.len();
        self.parent.push(id);
        self.rank.push(0);
        id
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns the surviving root.
    fn union(&mut self, a: usize, b: usize) -> usize {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return ra;
        }
        let (hi, lo) = if self.rank[ra] >= self.rank[rb] { (ra, rb) } else { (rb, ra) };
        self.parent[lo] = hi;
        if self.rank[ra] == self.rank[rb] {
            self.rank[hi] += 1;
        }
        hi
    }
}

/// One equivalence class of label spellings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AliasClass {
    pub canonical: NormalizedLabel,
    /// Sorted; includes `canonical`.
    pub members: Vec<NormalizedLabel>,
}

/// Accumulates declared equivalences before freezing them into an [`AliasTable`].
///
/// Within a declaration the last label names the canonical spelling
/// (`variant = canonical`). When a declaration joins two existing classes the
/// class holding the last label keeps its canonical representative.
#[derive(Debug, Clone, Default)]
pub struct AliasTableBuilder {
    uf: UnionFind,
    index: HashMap<NormalizedLabel, usize>,
    labels: Vec<NormalizedLabel>,
    canonical: Vec<usize>,
}

impl AliasTableBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    fn intern(&mut self, label: NormalizedLabel) -> usize {
        if let Some(&id) = self.index.get(&label) {
            return id;
        }
        let id = self.uf.push();
        self.canonical.push(id);
        self.index.insert(label.clone(), id);
        self.labels.push(label);
        id
    }

    /// Declares all `labels` equivalent. Labels are normalized first.
    pub fn declare<I, S>(&mut self, labels: I) -> &mut Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let ids: Vec<usize> = labels.into_iter().map(|s| normalize_label(s.as_ref())).map(|l| self.intern(l)).collect();
        let Some(&last) = ids.last() else {
            return self;
        };
        for &id in &ids[..ids.len() - 1] {
            let keep = {
                let root = self.uf.find(last);
                self.canonical[root]
            };
            let root = self.uf.union(id, last);
            self.canonical[root] = keep;
        }
        self
    }

    pub fn build(mut self) -> AliasTable {
        let mut groups: BTreeMap<usize, Vec<NormalizedLabel>> = BTreeMap::new();
        for id in 0..self.labels.len() {
            let root = self.uf.find(id);
            groups.entry(root).or_default().push(self.labels[id].clone());
        }
        let mut resolve = HashMap::new();
        let mut classes: Vec<AliasClass> = groups
            .into_iter()
            .filter(|(_, members)| members.len() > 1)
            .map(|(root, mut members)| {
                members.sort();
                let canonical = self.labels[self.canonical[root]].clone();
                for m in &members {
                    resolve.insert(m.clone(), canonical.clone());
                }
                AliasClass { canonical, members }
            })
            .collect();
        classes.sort_by(|a, b| a.canonical.cmp(&b.canonical));
        AliasTable { classes, resolve }
    }
}

/// Partition of labels into equivalence classes, each with a canonical spelling.
#[derive(Debug, Clone, Default)]
pub struct AliasTable {
    classes: Vec<AliasClass>,
    resolve: HashMap<NormalizedLabel, NormalizedLabel>,
}

impl PartialEq for AliasTable {
    fn eq(&self, other: &Self) -> bool {
        self.classes == other.classes
    }
}

impl Eq for AliasTable {}

impl AliasTable {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn builder() -> AliasTableBuilder {
        AliasTableBuilder::new()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Classes sorted by canonical label; singleton classes are omitted.
    pub fn classes(&self) -> &[AliasClass] {
        &self.classes
    }

    /// Canonical representative of `label`'s class, or `label` itself.
    pub fn resolve(&self, label: &NormalizedLabel) -> NormalizedLabel {
        self.resolve.get(label).cloned().unwrap_or_else(|| label.clone())
    }

    /// Normalizes then resolves.
    pub fn canonical(&self, text: &str) -> NormalizedLabel {
        self.resolve(&normalize_label(text))
    }

    /// Every spelling equivalent to `label`, including itself.
    pub fn variants(&self, label: &NormalizedLabel) -> Vec<NormalizedLabel> {
        let canonical = self.resolve(label);
        match self.classes.iter().find(|c| c.canonical == canonical) {
            Some(class) => class.members.clone(),
            None => vec![label.clone()],
        }
    }
}

pub fn resolve_alias(table: &AliasTable, label: &NormalizedLabel) -> NormalizedLabel {
    table.resolve(label)
}
