//! Label normalization and tokenization.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Canonical comparison form of a label.
///
/// Case-folded, trimmed, internal whitespace collapsed to single spaces and
/// leading/trailing punctuation removed. Construct with [`normalize_label`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NormalizedLabel(String);

impl NormalizedLabel {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for NormalizedLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl AsRef<str> for NormalizedLabel {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

pub fn normalize_label(text: &str) -> NormalizedLabel {
    let lowered = text.to_lowercase();
    let collapsed = lowered.split_whitespace().collect::<Vec<_>>().join(" ");
    let trimmed = collapsed.trim_matches(|c: char| !c.is_alphanumeric());
    NormalizedLabel(trimmed.to_string())
}

/// Words ignored when comparing story text against goal labels.
pub const STOP_WORDS: &[&str] = &["a", "an", "the", "to", "of", "i", "so", "that", "want", "as"];

/// Additional function words ignored by the purpose-alignment check.
///
/// Purpose clauses are free prose ("so that I can ... with the goals") and
/// would otherwise match goal labels on connectives alone.
pub const PURPOSE_STOP_WORDS: &[&str] = &[
    "and", "or", "but", "in", "on", "at", "by", "for", "with", "from", "into", "over", "about", "can", "could", "will",
    "would", "should", "may", "might", "must", "be", "is", "are", "was", "were", "am", "been", "it", "its", "me", "my",
    "we", "our", "us", "you", "your", "they", "their", "them", "he", "she", "his", "her", "this", "these", "those",
    "what", "which", "how", "when", "where", "who", "all", "any", "some", "more", "much", "very", "do", "does", "have",
    "has", "get", "ve", "ll", "s", "m", "t", "d", "re",
];

/// Lower-cased alphanumeric runs of `text`, minus [`STOP_WORDS`].
pub fn tokens(text: &str) -> BTreeSet<String> {
    raw_tokens(text).filter(|t| !STOP_WORDS.contains(&t.as_str())).collect()
}

/// Like [`tokens`] but also drops [`PURPOSE_STOP_WORDS`].
pub fn content_tokens(text: &str) -> BTreeSet<String> {
    raw_tokens(text)
        .filter(|t| !STOP_WORDS.contains(&t.as_str()) && !PURPOSE_STOP_WORDS.contains(&t.as_str()))
        .collect()
}

fn raw_tokens(text: &str) -> impl Iterator<Item = String> + '_ {
    text.split(|c: char| !c.is_alphanumeric()).filter(|t| !t.is_empty()).map(str::to_lowercase)
}
