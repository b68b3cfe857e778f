//! Hearer-side interpretation: which entities a description picks out, and
//! what each descriptor appears to be doing there.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::description::Description;
use crate::error::{Error, Result};
use crate::kb::{self, AttributeValue, ContextSet, KnowledgeBase};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    UniqueReferent,
    Ambiguous,
    NoReferent,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::UniqueReferent => "UniqueReferent",
            Self::Ambiguous => "Ambiguous",
            Self::NoReferent => "NoReferent",
        })
    }
}

/// The part a single descriptor plays in identification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DescriptorRole {
    /// Dropping it makes the description ambiguous.
    Necessary,
    /// Droppable, but it does rule out some context entity.
    RedundantIdentificational,
    /// Rules out nothing; it must be there for some other purpose.
    Surplus,
}

impl fmt::Display for DescriptorRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Necessary => "Necessary",
            Self::RedundantIdentificational => "RedundantIdentificational",
            Self::Surplus => "Surplus",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InterpretationReport {
    pub resolved: BTreeSet<String>,
    pub outcome: Outcome,
    /// Empty unless a referent was supplied and resolution was unique.
    #[serde(serialize_with = "keys_as_strings")]
    pub classifications: BTreeMap<AttributeValue, DescriptorRole>,
}

fn keys_as_strings<S: serde::Serializer>(
    map: &BTreeMap<AttributeValue, DescriptorRole>,
    serializer: S,
) -> std::result::Result<S::Ok, S::Error> {
    serializer.collect_map(map.iter().map(|(k, v)| (k.to_string(), v)))
}

impl InterpretationReport {
    pub fn is_unique(&self, referent: &str) -> bool {
        self.outcome == Outcome::UniqueReferent && self.resolved.contains(referent)
    }
}

pub fn resolve(
    description: &Description,
    context: &ContextSet,
    kb: &KnowledgeBase,
) -> Result<InterpretationReport> {
    let resolved = kb::satisfiers(description, context, kb)?;
    let outcome = match resolved.len() {
        0 => Outcome::NoReferent,
        1 => Outcome::UniqueReferent,
        _ => Outcome::Ambiguous,
    };
    Ok(InterpretationReport {
        resolved,
        outcome,
        classifications: BTreeMap::new(),
    })
}

/// Classifies every item by single-item removal. Requires that the
/// description already resolves to exactly `referent`.
pub fn attribute_purposes(
    description: &Description,
    referent: &str,
    context: &ContextSet,
    kb: &KnowledgeBase,
) -> Result<BTreeMap<AttributeValue, DescriptorRole>> {
    if !resolve(description, context, kb)?.is_unique(referent) {
        return Err(Error::NotDistinguishing(referent.to_owned()));
    }
    let mut roles = BTreeMap::new();
    for (index, item) in description.iter().enumerate() {
        let role = if !resolve(&description.without(index), context, kb)?.is_unique(referent) {
            DescriptorRole::Necessary
        } else if kb::rules_out(item, context.members(), kb)?.is_empty() {
            DescriptorRole::Surplus
        } else {
            DescriptorRole::RedundantIdentificational
        };
        roles.insert(item.clone(), role);
    }
    Ok(roles)
}

/// Resolution plus, when `referent` is given and picked out uniquely, the
/// per-item classification.
pub fn interpret(
    description: &Description,
    context: &ContextSet,
    kb: &KnowledgeBase,
    referent: Option<&str>,
) -> Result<InterpretationReport> {
    let mut report = resolve(description, context, kb)?;
    if let Some(referent) = referent {
        report.classifications = attribute_purposes(description, referent, context, kb)?;
    }
    Ok(report)
}
