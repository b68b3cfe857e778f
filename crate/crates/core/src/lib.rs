//! Referring-expression generation.
//!
//! Given a knowledge base of entities, a context set and an intended
//! referent, this crate chooses the semantic content of a description that
//! picks the referent out: minimally ([`describe::full_brevity`]), greedily
//! ([`describe::greedy_heuristic`]) or by a genre's preferred attributes
//! ([`describe::incremental`]). [`goals::plan_description`] folds extra
//! Convey goals into the same description, and [`hearer`] interprets
//! descriptions from the other side.

pub mod compare;
pub mod describe;
pub mod description;
mod error;
pub mod genre;
pub mod goals;
pub mod hearer;
pub mod kb;

pub use description::Description;
pub use error::{Error, Result};
pub use genre::GenreProfile;
pub use goals::{GoalAgenda, Strategy};
pub use kb::{AttributeValue, ContextSet, Entity, KnowledgeBase};
