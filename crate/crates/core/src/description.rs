use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::kb::AttributeValue;

/// The semantic content of a referring expression.
///
/// Items are kept in inclusion order. Satisfaction never depends on that
/// order, but traces and attribution reports do. At most one value per
/// attribute may appear.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Description {
    items: Vec<AttributeValue>,
}

impl Description {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_items(items: impl IntoIterator<Item = AttributeValue>) -> Result<Self> {
        let mut description = Self::empty();
        for item in items {
            description.push(item)?;
        }
        Ok(description)
    }

    /// Appends `item`, rejecting a repeated attribute.
    pub fn push(&mut self, item: AttributeValue) -> Result<()> {
        if let Some(existing) = self.items.iter().find(|p| p.attribute == item.attribute) {
            return Err(Error::InvalidDescription(if *existing == item {
                format!("`{item}` appears twice")
            } else {
                format!("attribute `{}` has two values", item.attribute)
            }));
        }
        self.items.push(item);
        Ok(())
    }

    pub fn items(&self) -> &[AttributeValue] {
        &self.items
    }

    pub fn iter(&self) -> std::slice::Iter<'_, AttributeValue> {
        self.items.iter()
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn contains(&self, item: &AttributeValue) -> bool {
        self.items.contains(item)
    }

    pub fn has_attribute(&self, attribute: &str) -> bool {
        self.items.iter().any(|p| p.attribute == attribute)
    }

    /// A copy without the item at `index`.
    pub fn without(&self, index: usize) -> Self {
        let mut items = self.items.clone();
        items.remove(index);
        Self { items }
    }

    /// Items in `(attribute, value)` order.
    pub fn sorted(&self) -> Vec<&AttributeValue> {
        let mut items: Vec<_> = self.items.iter().collect();
        items.sort();
        items
    }
}

impl<'a> IntoIterator for &'a Description {
    type Item = &'a AttributeValue;
    type IntoIter = std::slice::Iter<'a, AttributeValue>;

    fn into_iter(self) -> Self::IntoIter {
        self.items.iter()
    }
}

/// Sorted `attr=value, attr=value`; the empty description renders as `""`.
impl fmt::Display for Description {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, item) in self.sorted().into_iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{item}")?;
        }
        Ok(())
    }
}

/// Comma-separated `attr=value` pairs; blank input is the empty description.
impl FromStr for Description {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.trim().is_empty() {
            return Ok(Self::empty());
        }
        Self::from_items(
            s.split(',')
                .map(str::parse::<AttributeValue>)
                .collect::<Result<Vec<_>>>()?,
        )
    }
}

impl Serialize for Description {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.sorted().into_iter().map(ToString::to_string))
    }
}
