use std::collections::BTreeSet;

use crate::description::Description;
use crate::error::{Error, Result};
use crate::kb::{self, AttributeValue, ContextSet, KnowledgeBase};

/// Largest referent property count the oracle will enumerate by default.
pub const DEFAULT_ORACLE_GUARD: usize = 20;

/// Every minimum-cardinality distinguishing description for `referent`,
/// found by testing all `2^n` subsets of its properties.
pub fn naive_oracle(
    referent: &str,
    context: &ContextSet,
    kb: &KnowledgeBase,
) -> Result<Vec<Description>> {
    naive_oracle_with_guard(referent, context, kb, DEFAULT_ORACLE_GUARD)
}

pub fn naive_oracle_with_guard(
    referent: &str,
    context: &ContextSet,
    kb: &KnowledgeBase,
    guard: usize,
) -> Result<Vec<Description>> {
    if !context.contains(referent) {
        return Err(Error::ReferentNotInContext(referent.to_owned()));
    }
    let properties: Vec<AttributeValue> = kb.get(referent)?.properties().collect();
    if properties.len() > guard {
        return Err(Error::InstanceTooLarge {
            properties: properties.len(),
            limit: guard,
        });
    }

    let only_referent: BTreeSet<String> = [referent.to_owned()].into();
    let mut best: Option<usize> = None;
    let mut found = Vec::new();
    for subset in 0u64..(1u64 << properties.len()) {
        let size = subset.count_ones() as usize;
        if best.is_some_and(|b| size > b) {
            continue;
        }
        let candidate = Description::from_items(
            properties
                .iter()
                .enumerate()
                .filter(|(i, _)| subset & (1 << i) != 0)
                .map(|(_, p)| p.clone()),
        )?;
        if kb::satisfiers(&candidate, context, kb)? != only_referent {
            continue;
        }
        if best.is_none_or(|b| size < b) {
            best = Some(size);
            found.clear();
        }
        found.push(candidate);
    }
    if found.is_empty() {
        return Err(Error::NoDistinguishingDescription(referent.to_owned()));
    }
    found.sort_by(|a, b| a.sorted().cmp(&b.sorted()));
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn greedy_trap_has_one_minimum() {
        let kb = KnowledgeBase::from_json(include_str!("../../data/kb/greedy_trap.json")).unwrap();
        let ctx = ContextSet::all(&kb).unwrap();
        let minima = naive_oracle("r", &ctx, &kb).unwrap();
        assert_eq!(
            minima,
            vec!["pa=yes,pb=yes".parse::<Description>().unwrap()]
        );
    }

    #[test]
    fn red_green_and_singleton() {
        let kb = KnowledgeBase::from_json(include_str!("../../data/kb/red_green.json")).unwrap();
        let ctx = ContextSet::all(&kb).unwrap();
        assert_eq!(
            naive_oracle("pen1", &ctx, &kb).unwrap(),
            vec!["colour=red".parse::<Description>().unwrap()]
        );
        let single = ContextSet::new(["pen2"], &kb).unwrap();
        assert_eq!(
            naive_oracle("pen2", &single, &kb).unwrap(),
            vec![Description::empty()]
        );
    }

    #[test]
    fn reports_every_tied_minimum() {
        let kb = KnowledgeBase::from_json(
            r#"{"entities": {"r": {"a": "1", "b": "1"}, "x": {"a": "2", "b": "2"}}}"#,
        )
        .unwrap();
        let ctx = ContextSet::all(&kb).unwrap();
        assert_eq!(naive_oracle("r", &ctx, &kb).unwrap().len(), 2);
    }

    #[test]
    fn guard_is_enforced() {
        let kb = KnowledgeBase::from_json(include_str!("../../data/kb/greedy_trap.json")).unwrap();
        let ctx = ContextSet::all(&kb).unwrap();
        assert_eq!(
            naive_oracle_with_guard("r", &ctx, &kb, 2),
            Err(Error::InstanceTooLarge {
                properties: 3,
                limit: 2
            })
        );
    }
}
