#![allow(dead_code)]

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

use refex::{AttributeValue, ContextSet, Entity, GenreProfile, KnowledgeBase};

pub const ATTRIBUTES: [&str; 5] = ["type", "colour", "size", "shape", "material"];

/// A generated scene: everything in the knowledge base is in context.
#[derive(Debug, Clone)]
pub struct Instance {
    pub kb: KnowledgeBase,
    pub context: ContextSet,
    pub referent: String,
    pub genre: GenreProfile,
    /// Properties of the referent to use as Convey payloads.
    pub payloads: Vec<AttributeValue>,
}

/// `table[e][a]` is entity `e`'s value index for attribute `a`, or `None`
/// when the entity lacks the attribute.
pub fn build(
    table: &[Vec<Option<usize>>],
    referent: usize,
    genre: Vec<&str>,
    convey_mask: u32,
) -> Instance {
    let entities = table.iter().enumerate().map(|(e, row)| {
        Entity::new(
            format!("e{e}"),
            row.iter()
                .enumerate()
                .filter_map(|(a, v)| v.map(|v| (ATTRIBUTES[a], format!("v{v}")))),
        )
        .unwrap()
    });
    let kb = KnowledgeBase::from_entities(entities).unwrap();
    let context = ContextSet::all(&kb).unwrap();
    let referent = format!("e{referent}");
    let payloads = kb
        .get(&referent)
        .unwrap()
        .properties()
        .enumerate()
        .filter(|(i, _)| convey_mask & (1 << i) != 0)
        .map(|(_, p)| p)
        .collect();
    Instance {
        kb,
        context,
        referent,
        genre: GenreProfile::new("random", genre).unwrap(),
        payloads,
    }
}

/// 2-8 entities, 1-5 attributes, 2-4 values per attribute, referent uniform.
/// Each value is absent with probability 0.1 to exercise the closed world.
pub fn random_instance<R: Rng>(rng: &mut R) -> Instance {
    let n_entities = rng.gen_range(2..=8);
    let n_attributes = rng.gen_range(1..=5);
    let values: Vec<usize> = (0..n_attributes).map(|_| rng.gen_range(2..=4)).collect();
    let table: Vec<Vec<Option<usize>>> = (0..n_entities)
        .map(|_| {
            values
                .iter()
                .map(|&n| (!rng.gen_bool(0.1)).then(|| rng.gen_range(0..n)))
                .collect()
        })
        .collect();
    let referent = rng.gen_range(0..n_entities);
    let mut genre: Vec<&str> = ATTRIBUTES[..n_attributes]
        .iter()
        .copied()
        .filter(|_| rng.gen_bool(0.6))
        .collect();
    genre.shuffle(rng);
    let convey_mask =
        (0..n_attributes).fold(0, |m, i| if rng.gen_bool(0.2) { m | (1 << i) } else { m });
    build(&table, referent, genre, convey_mask)
}

pub fn instances() -> impl Strategy<Value = Instance> {
    (2usize..=8, prop::collection::vec(2usize..=4, 1..=5))
        .prop_flat_map(|(n_entities, values)| {
            let n_attributes = values.len();
            let row: Vec<_> = values
                .iter()
                .map(|&n| prop::option::weighted(0.9, 0..n))
                .collect();
            (
                prop::collection::vec(row, n_entities),
                0..n_entities,
                Just(ATTRIBUTES[..n_attributes].to_vec()).prop_shuffle(),
                prop::collection::vec(any::<bool>(), n_attributes),
                any::<u32>(),
            )
        })
        .prop_map(|(table, referent, order, keep, convey_mask)| {
            let genre = order
                .into_iter()
                .zip(keep)
                .filter_map(|(a, k)| k.then_some(a))
                .collect();
            build(&table, referent, genre, convey_mask & 0b10101)
        })
}

/// A referent with `n` properties `p00..` and `groups` distractors. Distractor
/// `g` lacks exactly the referent's values in group `g` (a contiguous block of
/// the sorted properties), so the minimum description takes one property per
/// group while every smaller subset misses some distractor.
pub fn hard_instance(n: usize, groups: usize) -> (KnowledgeBase, ContextSet) {
    let group_of = |i: usize| i * groups / n;
    let referent = Entity::new("r", (0..n).map(|i| (format!("p{i:02}"), "yes"))).unwrap();
    let distractors = (0..groups).map(|g| {
        Entity::new(
            format!("d{g}"),
            (0..n).map(|i| {
                (
                    format!("p{i:02}"),
                    if group_of(i) == g { "no" } else { "yes" },
                )
            }),
        )
        .unwrap()
    });
    let kb = KnowledgeBase::from_entities(std::iter::once(referent).chain(distractors)).unwrap();
    let context = ContextSet::all(&kb).unwrap();
    (kb, context)
}
