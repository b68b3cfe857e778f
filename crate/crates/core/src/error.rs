use std::fmt;

use crate::kb::AttributeValue;

/// Errors produced by every layer of the engine.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("duplicate entity id `{0}`")]
    DuplicateEntity(String),
    #[error("entity `{entity}` declares attribute `{attribute}` more than once")]
    DuplicateAttribute { entity: String, attribute: String },
    #[error("{0} must be non-empty")]
    Empty(&'static str),
    #[error("unknown entity `{0}`")]
    UnknownEntity(String),
    #[error("context set must contain at least one entity")]
    EmptyContext,
    #[error("referent `{0}` is not a member of the context set")]
    ReferentNotInContext(String),
    #[error("no distinguishing description exists for `{0}` in this context")]
    NoDistinguishingDescription(String),
    #[error("referent has {properties} properties, more than the oracle limit of {limit}")]
    InstanceTooLarge { properties: usize, limit: usize },
    #[error("invalid description: {0}")]
    InvalidDescription(String),
    #[error("invalid genre profile: {0}")]
    InvalidGenre(String),
    #[error("unknown strategy `{0}` (expected full-brevity, greedy or incremental)")]
    UnknownStrategy(String),
    #[error("invalid goal agenda: {0}")]
    InvalidAgenda(String),
    #[error("quality violation: {}", PayloadList(.0))]
    QualityViolation(Vec<AttributeValue>),
    #[error("description does not pick out `{0}` uniquely")]
    NotDistinguishing(String),
    #[error("self-monitoring rejected the planned description for `{referent}`: hearer resolved {resolved:?}")]
    VerificationFailure {
        referent: String,
        resolved: Vec<String>,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

struct PayloadList<'a>(&'a [AttributeValue]);

impl fmt::Display for PayloadList<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, item) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{item} is not true of the referent")?;
        }
        Ok(())
    }
}
