//! Reading and writing artifact files.
//!
//! | artifact        | reader                   | writer                 |
//! |-----------------|--------------------------|------------------------|
//! | model (`.mm`)   | [`parse_model_dsl`]      | [`emit_model_dsl`]     |
//! | model (`.json`) | [`parse_model_json`]     | [`emit_model_json`]    |
//! | stories (`.csv`)| [`parse_stories_table`]  | [`emit_stories_table`] |
//! | persona         | [`parse_persona`]        | [`emit_persona`]       |
//! | aliases         | [`parse_aliases`]        | [`emit_aliases`]       |
//! | epic mapping    | [`parse_epic_nodes`]     |                        |

mod aliases;
mod bundle;
mod dsl;
mod json;
mod persona;
mod quote;
mod stories;

pub use aliases::{emit_aliases, parse_aliases, parse_epic_nodes};
pub use bundle::{group_epics, ArtifactBundle, Epic, Persona, SourceLocation, UserStory, UNASSIGNED_EPIC};
pub use dsl::{emit_model_dsl, parse_model_dsl};
pub use json::{emit_model_json, parse_model_json};
pub use persona::{emit_persona, parse_persona};
pub use stories::{emit_stories_table, parse_stories_table, parse_story_text, StoryParts};

use thiserror::Error;

use crate::model::ModelError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArtifactError {
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("story does not follow `As a <role>, I want <goal> [so that <purpose>]`: {reason} near `{segment}`")]
    TemplateMismatch { reason: &'static str, segment: String },
    #[error("missing field `{0}`")]
    MissingField(&'static str),
    #[error("duplicate story id `{0}`")]
    DuplicateStoryId(String),
    #[error("duplicate persona id `{0}`")]
    DuplicatePersonaId(String),
    #[error("epic `{epic}` lists unknown story `{story}`")]
    UnknownStory { epic: String, story: String },
    #[error("story `{0}` belongs to more than one epic")]
    StoryInMultipleEpics(String),
    #[error("epic mapping names unknown epic `{0}`")]
    UnknownEpic(String),
}

impl ArtifactError {
    pub(crate) fn parse(line: usize, reason: impl Into<String>) -> Self {
        Self::Parse { line, reason: reason.into() }
    }
}

/// Decodes file bytes, dropping a leading byte-order mark.
pub fn decode_text(bytes: &[u8]) -> Result<&str, ArtifactError> {
    let text = std::str::from_utf8(bytes).map_err(|e| {
        let line = bytes[..e.valid_up_to()].iter().filter(|&&b| b == b'\n').count() + 1;
        ArtifactError::parse(line, "invalid UTF-8")
    })?;
    Ok(text.strip_prefix('\u{feff}').unwrap_or(text))
}
