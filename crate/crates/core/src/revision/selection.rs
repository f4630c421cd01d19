use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::kernel::CorrectionSet;
use crate::error::{Error, Result};

/// Policy choosing one correction set among the admissible candidates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SelectionStrategy {
    MinCardinality,
    MaxCardinality,
    /// Smallest candidate disjoint from the explanation, else smallest.
    ProtectExplanation,
    /// Minimal summed weight. Keys are labels or canonical formula text;
    /// unlisted elements weigh 1.
    Weighted(BTreeMap<String, u64>),
    SeededRandom(u64),
    /// The candidate at this index of the canonical candidate list, as picked
    /// at a prompt.
    Interactive(usize),
}

impl SelectionStrategy {
    pub fn name(&self) -> &'static str {
        match self {
            SelectionStrategy::MinCardinality => "min-cardinality",
            SelectionStrategy::MaxCardinality => "max-cardinality",
            SelectionStrategy::ProtectExplanation => "protect-explanation",
            SelectionStrategy::Weighted(_) => "weighted",
            SelectionStrategy::SeededRandom(_) => "seeded-random",
            SelectionStrategy::Interactive(_) => "interactive",
        }
    }

    pub fn seed(&self) -> Option<u64> {
        match self {
            SelectionStrategy::SeededRandom(s) => Some(*s),
            _ => None,
        }
    }

    /// Whether the choice is a pure function of the candidate list (plus the
    /// strategy's own parameters). Interactive picks come from a person.
    pub fn is_deterministic(&self) -> bool {
        !matches!(self, SelectionStrategy::Interactive(_))
    }

    /// Whether the choice looks at which elements came from the explanation,
    /// not just at the candidate formulas.
    pub fn depends_on_explanation(&self) -> bool {
        matches!(self, SelectionStrategy::ProtectExplanation)
    }
}

impl fmt::Display for SelectionStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SelectionStrategy::SeededRandom(s) => write!(f, "seeded-random({s})"),
            SelectionStrategy::Interactive(i) => write!(f, "interactive({i})"),
            other => f.write_str(other.name()),
        }
    }
}

fn weight(c: &CorrectionSet, weights: &BTreeMap<String, u64>) -> u64 {
    c.elements
        .iter()
        .map(|s| {
            weights
                .get(&s.label)
                .or_else(|| weights.get(&s.formula.canonical()))
                .copied()
                .unwrap_or(1)
        })
        .sum()
}

/// Picks one candidate. `candidates` must be in canonical order; ties go to
/// the earliest candidate.
pub fn select<'a>(
    candidates: &'a [CorrectionSet],
    strategy: &SelectionStrategy,
) -> Result<&'a CorrectionSet> {
    if candidates.is_empty() {
        return Err(Error::NoCandidates);
    }
    let first_min_by_key = |key: &dyn Fn(&CorrectionSet) -> u64| {
        let best = candidates.iter().map(key).min().unwrap();
        candidates.iter().find(|c| key(c) == best).unwrap()
    };
    let chosen = match strategy {
        SelectionStrategy::MinCardinality => first_min_by_key(&|c| c.len() as u64),
        SelectionStrategy::MaxCardinality => {
            let best = candidates.iter().map(CorrectionSet::len).max().unwrap();
            candidates.iter().find(|c| c.len() == best).unwrap()
        }
        SelectionStrategy::ProtectExplanation => {
            let protected: Vec<&CorrectionSet> = candidates
                .iter()
                .filter(|c| !c.touches_explanation)
                .collect();
            match protected.iter().map(|c| c.len()).min() {
                Some(best) => protected.into_iter().find(|c| c.len() == best).unwrap(),
                None => first_min_by_key(&|c| c.len() as u64),
            }
        }
        SelectionStrategy::Weighted(w) => first_min_by_key(&|c| weight(c, w)),
        SelectionStrategy::SeededRandom(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            &candidates[rng.gen_range(0..candidates.len())]
        }
        SelectionStrategy::Interactive(i) => {
            candidates.get(*i).ok_or(Error::SelectionOutOfRange {
                index: *i,
                len: candidates.len(),
            })?
        }
    };
    Ok(chosen)
}
