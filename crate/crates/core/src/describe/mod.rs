//! Content determination: choosing which of a referent's properties go
//! into a distinguishing description.
//!
//! Three strategies are provided:
//!
//! * [`full_brevity`] finds a minimum-cardinality distinguishing description
//!   by enumerating subsets in order of increasing size. This is a minimal
//!   set-cover search and costs exponential time in the worst case.
//! * [`greedy_heuristic`] repeatedly checks for success, picks the property
//!   ruling out the most remaining distractors, and extends the description.
//!   Fast, always distinguishing, not always minimal.
//! * [`incremental`] walks a genre's preferred attributes in order and keeps
//!   every value that rules something out, tolerating redundancy. Its
//!   iteration, contribution and termination rules are a reconstruction
//!   around the preferred-attribute list, not a published procedure.
//!
//! [`naive_oracle`] is a separate exhaustive enumerator that shares no
//! search code with the strategies and exists to cross-check them.
//!
//! Ties are always broken by `(attribute, value)` order so every strategy is
//! deterministic.

mod oracle;

use std::collections::BTreeSet;

use serde::Serialize;

pub use oracle::{naive_oracle, naive_oracle_with_guard, DEFAULT_ORACLE_GUARD};

use crate::description::Description;
use crate::error::{Error, Result};
use crate::genre::{GenreProfile, ImplicatureWarning, WarningReason};
use crate::kb::{self, AttributeValue, ContextSet, Entity, KnowledgeBase};

/// One extension of the description.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub property: AttributeValue,
    /// Entities the property eliminated from the remaining context.
    pub ruled_out: BTreeSet<String>,
    /// Size of the remaining context (referent included) after the step.
    pub remaining: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct GenerationTrace {
    pub steps: Vec<TraceStep>,
}

impl GenerationTrace {
    pub fn properties(&self) -> impl Iterator<Item = &AttributeValue> {
        self.steps.iter().map(|s| &s.property)
    }
}

/// Minimum-cardinality distinguishing description for `referent`.
///
/// Among equally short candidates the one whose sorted property sequence is
/// lexicographically least wins.
pub fn full_brevity(
    referent: &str,
    context: &ContextSet,
    kb: &KnowledgeBase,
) -> Result<Description> {
    full_brevity_from(&Description::empty(), referent, context, kb)
}

/// Like [`full_brevity`], but starts from `seed` and finds the fewest extra
/// properties. The seed's own narrowing counts towards identification.
pub fn full_brevity_from(
    seed: &Description,
    referent: &str,
    context: &ContextSet,
    kb: &KnowledgeBase,
) -> Result<Description> {
    let (target, remaining) = start(seed, referent, context, kb)?;
    let distractors: Vec<&str> = remaining
        .iter()
        .map(String::as_str)
        .filter(|id| *id != referent)
        .collect();
    let candidates: Vec<AttributeValue> = target
        .properties()
        .filter(|p| !seed.has_attribute(&p.attribute))
        .collect();
    let masks = candidates
        .iter()
        .map(|p| {
            let mut mask = Bitset::new(distractors.len());
            for (i, id) in distractors.iter().enumerate() {
                if !kb.get(id)?.has(p) {
                    mask.insert(i);
                }
            }
            Ok(mask)
        })
        .collect::<Result<Vec<_>>>()?;

    let all = masks
        .iter()
        .fold(Bitset::new(distractors.len()), |acc, m| acc.union(m));
    if !all.is_full() {
        return Err(Error::NoDistinguishingDescription(referent.to_owned()));
    }

    let mut chosen = Vec::new();
    for size in 0..=candidates.len() {
        let empty = Bitset::new(distractors.len());
        if first_cover(&masks, 0, size, &empty, &mut chosen) {
            let mut description = seed.clone();
            for index in chosen {
                description.push(candidates[index].clone())?;
            }
            return Ok(description);
        }
    }
    unreachable!("the union of all candidates covers every distractor")
}

/// Depth-first search over index combinations in lexicographic order.
fn first_cover(
    masks: &[Bitset],
    from: usize,
    left: usize,
    acc: &Bitset,
    chosen: &mut Vec<usize>,
) -> bool {
    if left == 0 {
        return acc.is_full();
    }
    // leave room for the remaining picks
    for index in from..=masks.len() - left {
        chosen.push(index);
        if first_cover(
            masks,
            index + 1,
            left - 1,
            &acc.union(&masks[index]),
            chosen,
        ) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Check Success / Choose Property / Extend Description loop.
pub fn greedy_heuristic(
    referent: &str,
    context: &ContextSet,
    kb: &KnowledgeBase,
) -> Result<(Description, GenerationTrace)> {
    greedy_heuristic_from(&Description::empty(), referent, context, kb)
}

/// [`greedy_heuristic`] starting from `seed`; the trace records only the
/// properties the loop itself added.
pub fn greedy_heuristic_from(
    seed: &Description,
    referent: &str,
    context: &ContextSet,
    kb: &KnowledgeBase,
) -> Result<(Description, GenerationTrace)> {
    let (target, remaining) = start(seed, referent, context, kb)?;
    let mut description = seed.clone();
    let mut trace = GenerationTrace::default();

    // entity sets as bitsets over the seed's satisfiers
    let members: Vec<&String> = remaining.iter().collect();
    let candidates: Vec<(AttributeValue, Bitset)> = target
        .properties()
        .filter(|p| !seed.has_attribute(&p.attribute))
        .map(|p| {
            let mut mask = Bitset::new(members.len());
            for (i, id) in members.iter().enumerate() {
                if !kb.get(id)?.has(&p) {
                    mask.insert(i);
                }
            }
            Ok((p, mask))
        })
        .collect::<Result<_>>()?;
    let mut alive = Bitset::new(members.len());
    (0..members.len()).for_each(|i| alive.insert(i));
    let mut used = vec![false; candidates.len()];

    while alive.count() > 1 {
        let mut best: Option<(usize, usize)> = None;
        for (index, (_, mask)) in candidates.iter().enumerate() {
            if used[index] {
                continue;
            }
            let count = mask.intersection_count(&alive);
            // strict comparison keeps the lexicographically first among ties
            if best.is_none_or(|(_, b)| count > b) {
                best = Some((index, count));
            }
        }
        let index = match best {
            Some((index, count)) if count > 0 => index,
            _ => return Err(Error::NoDistinguishingDescription(referent.to_owned())),
        };
        used[index] = true;
        let (property, mask) = &candidates[index];
        let ruled_out: BTreeSet<String> = mask
            .intersection(&alive)
            .ones()
            .map(|i| members[i].clone())
            .collect();
        alive = alive.difference(mask);
        description.push(property.clone())?;
        trace.steps.push(TraceStep {
            property: property.clone(),
            ruled_out,
            remaining: alive.count(),
        });
    }
    Ok((description, trace))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IncrementalOptions {
    /// Append the referent's `type` value even when it rules nothing out.
    pub always_include_type: bool,
}

impl Default for IncrementalOptions {
    fn default() -> Self {
        Self {
            always_include_type: true,
        }
    }
}

/// Why the incremental strategy included a property.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Selection {
    Preferred,
    Fallback,
    TypeOption,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IncrementalStep {
    pub property: AttributeValue,
    pub ruled_out: BTreeSet<String>,
    pub remaining: usize,
    pub selection: Selection,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IncrementalOutcome {
    pub description: Description,
    pub steps: Vec<IncrementalStep>,
    pub warnings: Vec<ImplicatureWarning>,
}

pub const TYPE_ATTRIBUTE: &str = "type";

/// Genre-driven incremental selection.
///
/// Preferred attributes are tried in order; the referent's value is kept iff
/// it rules out at least one remaining entity. If the list runs out first,
/// the referent's other attributes are tried in name order and each one used
/// raises a [`WarningReason::NotGenrePreferred`] warning.
pub fn incremental(
    referent: &str,
    context: &ContextSet,
    kb: &KnowledgeBase,
    genre: &GenreProfile,
    options: IncrementalOptions,
) -> Result<IncrementalOutcome> {
    incremental_from(&Description::empty(), referent, context, kb, genre, options)
}

pub fn incremental_from(
    seed: &Description,
    referent: &str,
    context: &ContextSet,
    kb: &KnowledgeBase,
    genre: &GenreProfile,
    options: IncrementalOptions,
) -> Result<IncrementalOutcome> {
    let (target, mut remaining) = start(seed, referent, context, kb)?;
    let mut outcome = IncrementalOutcome {
        description: seed.clone(),
        steps: Vec::new(),
        warnings: Vec::new(),
    };

    let preferred = genre
        .preferred_attributes()
        .iter()
        .filter_map(|a| target.value_of(a).map(|v| (a.as_str(), v)))
        .map(|(a, v)| (property(a, v), Selection::Preferred));
    let fallback = target
        .properties()
        .filter(|p| !genre.prefers(&p.attribute))
        .map(|p| (p, Selection::Fallback));

    for (property, selection) in preferred.chain(fallback) {
        if remaining.len() == 1 {
            break;
        }
        if outcome.description.has_attribute(&property.attribute) {
            continue;
        }
        let ruled_out = kb::rules_out(&property, &remaining, kb)?;
        if ruled_out.is_empty() {
            continue;
        }
        remaining.retain(|id| !ruled_out.contains(id));
        if selection == Selection::Fallback {
            outcome.warnings.push(ImplicatureWarning {
                item: property.clone(),
                reason: WarningReason::NotGenrePreferred,
            });
        }
        outcome.description.push(property.clone())?;
        outcome.steps.push(IncrementalStep {
            property,
            ruled_out,
            remaining: remaining.len(),
            selection,
        });
    }
    if remaining.len() > 1 {
        return Err(Error::NoDistinguishingDescription(referent.to_owned()));
    }

    if options.always_include_type && !outcome.description.has_attribute(TYPE_ATTRIBUTE) {
        if let Some(value) = target.value_of(TYPE_ATTRIBUTE) {
            let property = property(TYPE_ATTRIBUTE, value);
            outcome.description.push(property.clone())?;
            outcome.steps.push(IncrementalStep {
                property,
                ruled_out: BTreeSet::new(),
                remaining: remaining.len(),
                selection: Selection::TypeOption,
            });
        }
    }
    Ok(outcome)
}

fn property(attribute: &str, value: &str) -> AttributeValue {
    AttributeValue {
        attribute: attribute.to_owned(),
        value: value.to_owned(),
    }
}

/// Shared preconditions: the referent is in context and every seed item is
/// true of it. Returns the referent and the seed's satisfiers.
fn start<'kb>(
    seed: &Description,
    referent: &str,
    context: &ContextSet,
    kb: &'kb KnowledgeBase,
) -> Result<(&'kb Entity, BTreeSet<String>)> {
    context.require_member(referent)?;
    let target = kb.get(referent)?;
    let false_items: Vec<AttributeValue> =
        seed.iter().filter(|p| !target.has(p)).cloned().collect();
    if !false_items.is_empty() {
        return Err(Error::QualityViolation(false_items));
    }
    Ok((target, kb::satisfiers(seed, context, kb)?))
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Bitset {
    words: Vec<u64>,
    len: usize,
}

impl Bitset {
    fn new(len: usize) -> Self {
        Self {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    fn insert(&mut self, index: usize) {
        self.words[index / 64] |= 1 << (index % 64);
    }

    fn union(&self, other: &Self) -> Self {
        Self {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a | b)
                .collect(),
            len: self.len,
        }
    }

    fn intersection(&self, other: &Self) -> Self {
        Self {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
            len: self.len,
        }
    }

    fn difference(&self, other: &Self) -> Self {
        Self {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & !b)
                .collect(),
            len: self.len,
        }
    }

    fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn intersection_count(&self, other: &Self) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(|i| self.words[i / 64] & (1 << (i % 64)) != 0)
    }

    fn is_full(&self) -> bool {
        self.count() == self.len
    }
}
