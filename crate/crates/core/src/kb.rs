//! Knowledge base of entities, context sets, and the two primitive queries
//! every content-determination strategy is built from.
//!
//! Properties are single-valued attribute/value pairs compared by exact,
//! case-sensitive string equality. The knowledge base is closed-world: an
//! entity lacking an attribute satisfies no value of it.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::marker::PhantomData;
use std::str::FromStr;

use serde::de::{Deserializer, MapAccess, Visitor};
use serde::{Deserialize, Serialize};

use crate::description::Description;
use crate::error::{Error, Result};

/// One property `⟨attribute, value⟩` of an entity.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct AttributeValue {
    pub attribute: String,
    pub value: String,
}

impl AttributeValue {
    pub fn new(attribute: impl Into<String>, value: impl Into<String>) -> Result<Self> {
        let attribute = attribute.into();
        let value = value.into();
        if attribute.is_empty() {
            return Err(Error::Empty("attribute name"));
        }
        if value.is_empty() {
            return Err(Error::Empty("attribute value"));
        }
        Ok(Self { attribute, value })
    }
}

impl fmt::Display for AttributeValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}={}", self.attribute, self.value)
    }
}

/// Parses `attr=value`. Surrounding whitespace on either side is trimmed.
impl FromStr for AttributeValue {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (attribute, value) = s.split_once('=').ok_or_else(|| {
            Error::InvalidDescription(format!("`{s}` is not of the form attr=value"))
        })?;
        let (attribute, value) = (attribute.trim(), value.trim());
        if attribute.is_empty() || value.is_empty() {
            return Err(Error::InvalidDescription(format!(
                "`{s}` has an empty attribute or value"
            )));
        }
        Self::new(attribute, value)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entity {
    id: String,
    properties: BTreeMap<String, String>,
}

impl Entity {
    /// Builds an entity, rejecting a second value for an attribute already present.
    pub fn new<I, A, V>(id: impl Into<String>, properties: I) -> Result<Self>
    where
        I: IntoIterator<Item = (A, V)>,
        A: Into<String>,
        V: Into<String>,
    {
        let id = id.into();
        if id.is_empty() {
            return Err(Error::Empty("entity id"));
        }
        let mut map = BTreeMap::new();
        for (attribute, value) in properties {
            let property = AttributeValue::new(attribute, value)?;
            if map.contains_key(&property.attribute) {
                return Err(Error::DuplicateAttribute {
                    entity: id,
                    attribute: property.attribute,
                });
            }
            map.insert(property.attribute, property.value);
        }
        Ok(Self {
            id,
            properties: map,
        })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn value_of(&self, attribute: &str) -> Option<&str> {
        self.properties.get(attribute).map(String::as_str)
    }

    pub fn has(&self, property: &AttributeValue) -> bool {
        self.value_of(&property.attribute) == Some(property.value.as_str())
    }

    /// The entity's properties in `(attribute, value)` order.
    pub fn properties(&self) -> impl Iterator<Item = AttributeValue> + '_ {
        self.properties.iter().map(|(a, v)| AttributeValue {
            attribute: a.clone(),
            value: v.clone(),
        })
    }

    pub fn property_count(&self) -> usize {
        self.properties.len()
    }
}

/// Immutable set of entities keyed by id.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct KnowledgeBase {
    entities: BTreeMap<String, Entity>,
}

impl KnowledgeBase {
    pub fn from_entities(entities: impl IntoIterator<Item = Entity>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for entity in entities {
            if map.contains_key(&entity.id) {
                return Err(Error::DuplicateEntity(entity.id));
            }
            map.insert(entity.id.clone(), entity);
        }
        Ok(Self { entities: map })
    }

    /// Loads a knowledge base from its JSON document form:
    ///
    /// ```json
    /// { "entities": { "pen1": { "type": "pen", "colour": "red" } } }
    /// ```
    ///
    /// Duplicate keys are detected rather than silently overwritten.
    pub fn from_json(source: &str) -> Result<Self> {
        let doc: KbDocument = serde_json::from_str(source).map_err(parse_error)?;
        let entities = doc
            .entities
            .0
            .into_iter()
            .map(|(id, props)| Entity::new(id, props.0))
            .collect::<Result<Vec<_>>>()?;
        Self::from_entities(entities)
    }

    /// Canonical JSON form: keys sorted, two-space indent, trailing newline.
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Out<'a> {
            entities: BTreeMap<&'a str, &'a BTreeMap<String, String>>,
        }
        let out = Out {
            entities: self
                .entities
                .iter()
                .map(|(id, e)| (id.as_str(), &e.properties))
                .collect(),
        };
        let mut s = serde_json::to_string_pretty(&out).expect("string maps always serialize");
        s.push('\n');
        s
    }

    pub fn get(&self, id: &str) -> Result<&Entity> {
        self.entities
            .get(id)
            .ok_or_else(|| Error::UnknownEntity(id.to_owned()))
    }

    pub fn contains(&self, id: &str) -> bool {
        self.entities.contains_key(id)
    }

    pub fn len(&self) -> usize {
        self.entities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entities.is_empty()
    }

    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.entities.keys().map(String::as_str)
    }

    pub fn entities(&self) -> impl Iterator<Item = &Entity> {
        self.entities.values()
    }
}

/// The set of entities a referent must be distinguished from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContextSet {
    members: BTreeSet<String>,
}

impl ContextSet {
    pub fn new<I, S>(ids: I, kb: &KnowledgeBase) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let members: BTreeSet<String> = ids.into_iter().map(Into::into).collect();
        if members.is_empty() {
            return Err(Error::EmptyContext);
        }
        if let Some(missing) = members.iter().find(|id| !kb.contains(id)) {
            return Err(Error::UnknownEntity(missing.clone()));
        }
        Ok(Self { members })
    }

    /// Every entity in the knowledge base.
    pub fn all(kb: &KnowledgeBase) -> Result<Self> {
        Self::new(kb.ids(), kb)
    }

    pub fn members(&self) -> &BTreeSet<String> {
        &self.members
    }

    pub fn contains(&self, id: &str) -> bool {
        self.members.contains(id)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub(crate) fn require_member(&self, referent: &str) -> Result<()> {
        if self.contains(referent) {
            Ok(())
        } else {
            Err(Error::ReferentNotInContext(referent.to_owned()))
        }
    }

    pub(crate) fn resolve<'kb>(&self, kb: &'kb KnowledgeBase) -> Result<Vec<&'kb Entity>> {
        self.members.iter().map(|id| kb.get(id)).collect()
    }
}

/// Context members possessing every property of `description`.
pub fn satisfiers(
    description: &Description,
    context: &ContextSet,
    kb: &KnowledgeBase,
) -> Result<BTreeSet<String>> {
    Ok(context
        .resolve(kb)?
        .into_iter()
        .filter(|e| description.iter().all(|p| e.has(p)))
        .map(|e| e.id.clone())
        .collect())
}

/// Members of `remaining` for which `property` does not hold.
pub fn rules_out(
    property: &AttributeValue,
    remaining: &BTreeSet<String>,
    kb: &KnowledgeBase,
) -> Result<BTreeSet<String>> {
    let mut out = BTreeSet::new();
    for id in remaining {
        if !kb.get(id)?.has(property) {
            out.insert(id.clone());
        }
    }
    Ok(out)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct KbDocument {
    entities: EntryList<EntryList<String>>,
}

/// A JSON object read as an ordered list of entries, keeping duplicate keys.
pub(crate) struct EntryList<V>(pub(crate) Vec<(String, V)>);

impl<'de, V: Deserialize<'de>> Deserialize<'de> for EntryList<V> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct EntryVisitor<V>(PhantomData<V>);

        impl<'de, V: Deserialize<'de>> Visitor<'de> for EntryVisitor<V> {
            type Value = EntryList<V>;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a JSON object")
            }

            fn visit_map<A: MapAccess<'de>>(
                self,
                mut map: A,
            ) -> std::result::Result<Self::Value, A::Error> {
                let mut entries = Vec::with_capacity(map.size_hint().unwrap_or(0));
                while let Some(entry) = map.next_entry::<String, V>()? {
                    entries.push(entry);
                }
                Ok(EntryList(entries))
            }
        }

        deserializer.deserialize_map(EntryVisitor(PhantomData))
    }
}

pub(crate) fn parse_error(err: serde_json::Error) -> Error {
    Error::Parse {
        line: err.line(),
        column: err.column(),
        message: err.to_string(),
    }
}
