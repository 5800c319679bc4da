//! Consistency linter for motivational models, personas, and user stories.
//!
//! A motivational model is a tree of functional ("do") goals plus model-wide
//! roles, quality ("be") goals, emotional ("feel") goals and concerns. The
//! [`checks`] module cross-validates such a model against personas and user
//! stories; [`scaffold`] generates artifacts in either direction.

pub mod checks;
pub mod cli;
pub mod fixture;
pub mod io;
pub mod linker;
pub mod model;
pub mod report;
pub mod scaffold;

pub use checks::{run_all, CheckConfig, CheckId, EpicMode};
pub use io::{ArtifactBundle, ArtifactError, Epic, Persona, UserStory};
pub use linker::{AliasTable, NormalizedLabel, StoryLinks};
pub use model::{build_model, GoalId, GoalKind, GoalNode, GoalTree, ModelError, ModelParts, MotivationalModel};
pub use report::{Diagnostic, Report, Severity, SubjectKind};
