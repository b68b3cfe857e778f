//! Goal-driven planning of a single referring expression.
//!
//! An agenda holds one `Identify` goal and any number of `Convey` goals for
//! the same referent. Convey payloads seed the description, an
//! identification strategy finishes it, and the result is handed to the
//! hearer model before it is accepted. There is no separate check for
//! brevity or relevance here: the output contains the seed plus whatever
//! the identification strategy needed, and nothing else.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::describe::{self, GenerationTrace, IncrementalOptions, Selection, TraceStep};
use crate::description::Description;
use crate::error::{Error, Result};
use crate::genre::{GenreProfile, ImplicatureWarning};
use crate::hearer;
use crate::kb::{self, AttributeValue, ContextSet, KnowledgeBase};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Goal {
    /// Get the hearer to pick out `referent`.
    Identify { referent: String },
    /// Let the hearer know `referent` has `payload`.
    Convey {
        referent: String,
        payload: AttributeValue,
    },
}

impl Goal {
    pub fn referent(&self) -> &str {
        match self {
            Goal::Identify { referent } | Goal::Convey { referent, .. } => referent,
        }
    }
}

impl fmt::Display for Goal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Goal::Identify { referent } => write!(f, "Identify({referent})"),
            Goal::Convey { referent, payload } => write!(f, "Convey({referent}, {payload})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GoalAgenda {
    goals: Vec<Goal>,
}

impl GoalAgenda {
    /// Exactly one `Identify` goal; every goal about the same referent.
    pub fn new(goals: Vec<Goal>) -> Result<Self> {
        let identify = goals
            .iter()
            .filter(|g| matches!(g, Goal::Identify { .. }))
            .count();
        if identify != 1 {
            return Err(Error::InvalidAgenda(format!(
                "expected exactly one Identify goal, found {identify}"
            )));
        }
        let referent = goals[0].referent();
        if let Some(other) = goals.iter().find(|g| g.referent() != referent) {
            return Err(Error::InvalidAgenda(format!(
                "goal {other} is not about `{referent}`"
            )));
        }
        Ok(Self { goals })
    }

    pub fn identify(referent: impl Into<String>) -> Self {
        Self {
            goals: vec![Goal::Identify {
                referent: referent.into(),
            }],
        }
    }

    /// `Identify(referent)` followed by one `Convey` per payload.
    pub fn with_payloads(
        referent: impl Into<String>,
        payloads: impl IntoIterator<Item = AttributeValue>,
    ) -> Self {
        let referent = referent.into();
        let mut agenda = Self::identify(referent.clone());
        agenda
            .goals
            .extend(payloads.into_iter().map(|payload| Goal::Convey {
                referent: referent.clone(),
                payload,
            }));
        agenda
    }

    pub fn referent(&self) -> &str {
        self.goals[0].referent()
    }

    pub fn goals(&self) -> &[Goal] {
        &self.goals
    }

    pub fn payloads(&self) -> impl Iterator<Item = (usize, &AttributeValue)> {
        self.goals.iter().enumerate().filter_map(|(i, g)| match g {
            Goal::Convey { payload, .. } => Some((i, payload)),
            Goal::Identify { .. } => None,
        })
    }
}

/// Refuses any Convey payload the knowledge base does not assert of the referent.
pub fn validate_agenda(agenda: &GoalAgenda, kb: &KnowledgeBase) -> Result<()> {
    let referent = kb.get(agenda.referent())?;
    let false_payloads: Vec<AttributeValue> = agenda
        .payloads()
        .map(|(_, p)| p)
        .filter(|p| !referent.has(p))
        .cloned()
        .collect();
    if false_payloads.is_empty() {
        Ok(())
    } else {
        Err(Error::QualityViolation(false_payloads))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    FullBrevity,
    Greedy,
    Incremental,
}

impl Strategy {
    pub const ALL: [Strategy; 3] = [
        Strategy::FullBrevity,
        Strategy::Greedy,
        Strategy::Incremental,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::FullBrevity => "full-brevity",
            Strategy::Greedy => "greedy",
            Strategy::Incremental => "incremental",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Strategy::ALL
            .into_iter()
            .find(|st| st.name() == s)
            .ok_or_else(|| Error::UnknownStrategy(s.to_owned()))
    }
}

/// Why an item is in the planned description.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Attribution {
    /// Satisfies the Convey goal at this agenda index.
    Convey { goal: usize },
    /// Eliminated these distractors when it was added.
    Identification { ruled_out: BTreeSet<String> },
    /// Head noun added by the incremental strategy's type option.
    TypeOption,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ItemAttribution {
    pub item: AttributeValue,
    pub attributions: Vec<Attribution>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlanReport {
    pub description: Description,
    pub strategy: Strategy,
    /// Identification steps taken after the Convey seed.
    pub trace: GenerationTrace,
    pub warnings: Vec<ImplicatureWarning>,
    pub satisfied: Vec<Goal>,
    /// Goals still on the agenda; empty whenever planning succeeds.
    pub outstanding: Vec<Goal>,
    pub attributions: Vec<ItemAttribution>,
}

pub fn plan_description(
    agenda: &GoalAgenda,
    context: &ContextSet,
    kb: &KnowledgeBase,
    genre: &GenreProfile,
    strategy: Strategy,
) -> Result<PlanReport> {
    plan_description_with(
        agenda,
        context,
        kb,
        genre,
        strategy,
        IncrementalOptions::default(),
    )
}

pub fn plan_description_with(
    agenda: &GoalAgenda,
    context: &ContextSet,
    kb: &KnowledgeBase,
    genre: &GenreProfile,
    strategy: Strategy,
    options: IncrementalOptions,
) -> Result<PlanReport> {
    validate_agenda(agenda, kb)?;
    let referent = agenda.referent();
    context.require_member(referent)?;

    let mut seed = Description::empty();
    for (_, payload) in agenda.payloads() {
        if !seed.contains(payload) {
            seed.push(payload.clone())?;
        }
    }

    // attribution of the seed, applied in order against the full context
    let mut remaining = context.members().clone();
    let mut attributions = Vec::new();
    for item in seed.iter() {
        let ruled_out = kb::rules_out(item, &remaining, kb)?;
        remaining.retain(|id| !ruled_out.contains(id));
        let mut reasons: Vec<Attribution> = agenda
            .payloads()
            .filter(|(_, p)| *p == item)
            .map(|(goal, _)| Attribution::Convey { goal })
            .collect();
        if !ruled_out.is_empty() {
            reasons.push(Attribution::Identification { ruled_out });
        }
        attributions.push(ItemAttribution {
            item: item.clone(),
            attributions: reasons,
        });
    }

    let mut warnings = Vec::new();
    let mut type_option = None;
    let (description, trace) = match strategy {
        Strategy::FullBrevity => {
            let description = describe::full_brevity_from(&seed, referent, context, kb)?;
            let mut trace = GenerationTrace::default();
            for item in &description.items()[seed.len()..] {
                let ruled_out = kb::rules_out(item, &remaining, kb)?;
                remaining.retain(|id| !ruled_out.contains(id));
                trace.steps.push(TraceStep {
                    property: item.clone(),
                    ruled_out,
                    remaining: remaining.len(),
                });
            }
            (description, trace)
        }
        Strategy::Greedy => describe::greedy_heuristic_from(&seed, referent, context, kb)?,
        Strategy::Incremental => {
            let outcome = describe::incremental_from(&seed, referent, context, kb, genre, options)?;
            warnings = outcome.warnings;
            let mut trace = GenerationTrace::default();
            for step in outcome.steps {
                if step.selection == Selection::TypeOption {
                    type_option = Some(step.property);
                } else {
                    trace.steps.push(TraceStep {
                        property: step.property,
                        ruled_out: step.ruled_out,
                        remaining: step.remaining,
                    });
                }
            }
            (outcome.description, trace)
        }
    };

    attributions.extend(trace.steps.iter().map(|step| ItemAttribution {
        item: step.property.clone(),
        attributions: vec![Attribution::Identification {
            ruled_out: step.ruled_out.clone(),
        }],
    }));
    if let Some(item) = type_option {
        attributions.push(ItemAttribution {
            item,
            attributions: vec![Attribution::TypeOption],
        });
    }

    // self-monitoring: the hearer model must pick out exactly the referent
    let heard = hearer::resolve(&description, context, kb)?;
    if !heard.is_unique(referent) {
        return Err(Error::VerificationFailure {
            referent: referent.to_owned(),
            resolved: heard.resolved.into_iter().collect(),
        });
    }

    Ok(PlanReport {
        description,
        strategy,
        trace,
        warnings,
        satisfied: agenda.goals().to_vec(),
        outstanding: Vec::new(),
        attributions,
    })
}
