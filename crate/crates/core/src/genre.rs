//! Genre profiles and implicature-risk analysis.
//!
//! A genre is reduced to the ordered list of attributes its speakers
//! conventionally use for identification-only reference. Anything outside
//! that list is liable to be read as carrying some further purpose.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::describe::TYPE_ATTRIBUTE;
use crate::description::Description;
use crate::error::{Error, Result};
use crate::kb::{self, AttributeValue, ContextSet, KnowledgeBase};

const CASUAL_JSON: &str = include_str!("../data/genres/casual.json");
const INVENTORY_JSON: &str = include_str!("../data/genres/inventory.json");

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GenreProfile {
    name: String,
    preferred_attributes: Vec<String>,
}

impl GenreProfile {
    pub fn new<I, S>(name: impl Into<String>, preferred_attributes: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let name = name.into();
        if name.is_empty() {
            return Err(Error::InvalidGenre("name must be non-empty".into()));
        }
        let preferred_attributes: Vec<String> =
            preferred_attributes.into_iter().map(Into::into).collect();
        let mut seen = BTreeSet::new();
        for attribute in &preferred_attributes {
            if attribute.is_empty() {
                return Err(Error::InvalidGenre(
                    "attribute names must be non-empty".into(),
                ));
            }
            if !seen.insert(attribute.as_str()) {
                return Err(Error::InvalidGenre(format!(
                    "attribute `{attribute}` listed twice"
                )));
            }
        }
        Ok(Self {
            name,
            preferred_attributes,
        })
    }

    /// `{ "name": "...", "preferred_attributes": ["...", ...] }`
    pub fn from_json(source: &str) -> Result<Self> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Doc {
            name: String,
            preferred_attributes: Vec<String>,
        }
        let doc: Doc = serde_json::from_str(source).map_err(kb::parse_error)?;
        Self::new(doc.name, doc.preferred_attributes)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("genre always serializes");
        s.push('\n');
        s
    }

    /// Type, colour, size. Illustrative, not corpus-derived.
    pub fn casual() -> Self {
        Self::from_json(CASUAL_JSON).expect("bundled genre is valid")
    }

    /// Type, manufacturer, colour. Illustrative, not corpus-derived.
    pub fn inventory() -> Self {
        Self::from_json(INVENTORY_JSON).expect("bundled genre is valid")
    }

    pub fn builtin(name: &str) -> Option<Self> {
        match name {
            "casual" => Some(Self::casual()),
            "inventory" => Some(Self::inventory()),
            _ => None,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn preferred_attributes(&self) -> &[String] {
        &self.preferred_attributes
    }

    pub fn prefers(&self, attribute: &str) -> bool {
        self.preferred_attributes.iter().any(|a| a == attribute)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WarningReason {
    /// The attribute is not one the genre uses for identification.
    NotGenrePreferred,
    /// The item rules out nothing and could be dropped without loss.
    SurplusToIdentification,
}

impl fmt::Display for WarningReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::NotGenrePreferred => "attribute not identification-preferred in genre",
            Self::SurplusToIdentification => "surplus to identification",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ImplicatureWarning {
    pub item: AttributeValue,
    pub reason: WarningReason,
}

impl ImplicatureWarning {
    /// Human-readable line naming the genre where relevant.
    pub fn render(&self, genre: &GenreProfile) -> String {
        match self.reason {
            WarningReason::NotGenrePreferred => {
                format!("{}: {} {}", self.item, self.reason, genre.name())
            }
            WarningReason::SurplusToIdentification => format!("{}: {}", self.item, self.reason),
        }
    }
}

/// Flags descriptors a hearer in `genre` might read as doing more than
/// identifying `referent`. Advisory only: the description is not modified.
///
/// An item is surplus when dropping it keeps the description distinguishing
/// and it rules out no context entity. A `type` item is exempt while other
/// items are present, since it is the head noun they modify.
pub fn implicature_risk(
    description: &Description,
    referent: &str,
    context: &ContextSet,
    kb: &KnowledgeBase,
    genre: &GenreProfile,
) -> Result<Vec<ImplicatureWarning>> {
    kb.get(referent)?;
    let is_unique = |d: &Description| -> Result<bool> {
        let s = kb::satisfiers(d, context, kb)?;
        Ok(s.len() == 1 && s.contains(referent))
    };
    if !is_unique(description)? {
        return Err(Error::NotDistinguishing(referent.to_owned()));
    }

    let mut warnings = Vec::new();
    for (index, item) in description.iter().enumerate() {
        if !genre.prefers(&item.attribute) {
            warnings.push(ImplicatureWarning {
                item: item.clone(),
                reason: WarningReason::NotGenrePreferred,
            });
        }
        // the head noun carrying other descriptors is never read as extra content
        if item.attribute == TYPE_ATTRIBUTE && description.len() > 1 {
            continue;
        }
        let removable = is_unique(&description.without(index))?;
        if removable && kb::rules_out(item, context.members(), kb)?.is_empty() {
            warnings.push(ImplicatureWarning {
                item: item.clone(),
                reason: WarningReason::SurplusToIdentification,
            });
        }
    }
    Ok(warnings)
}
