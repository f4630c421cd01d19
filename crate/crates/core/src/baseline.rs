//! Kernel revision by a set of sentences: the minimality-driven baseline.
//! Conflicts are the minimal inconsistent subsets of B ∪ E, and an incision
//! removes at least one element from each.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::logic::{BeliefBase, Statement};
use crate::revision::{Combined, Limits, Operator, RevisionContext, RevisionResult};

/// One minimal inconsistent subset of the union.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mus {
    /// Ascending indices into the union's statements.
    pub indices: Vec<usize>,
    pub elements: Vec<Statement>,
}

impl Mus {
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    fn mask(&self) -> u64 {
        mask_of(&self.indices)
    }

    pub fn render(&self) -> String {
        let parts: Vec<String> = self
            .elements
            .iter()
            .map(|s| s.formula.canonical())
            .collect();
        format!("{{{}}}", parts.join(", "))
    }
}

fn mask_of(indices: &[usize]) -> u64 {
    indices.iter().fold(0, |m, &i| m | 1 << i)
}

fn indices_of(mask: u64) -> Vec<usize> {
    (0..64).filter(|i| mask >> i & 1 == 1).collect()
}

/// All minimal inconsistent subsets of B ∪ E, by cardinality then
/// lexicographically.
#[derive(Clone, Debug)]
pub struct KernelSet {
    pub ctx: RevisionContext,
    pub kernels: Vec<Mus>,
}

impl KernelSet {
    pub fn union(&self) -> &Combined {
        self.ctx.combined()
    }

    pub fn is_empty(&self) -> bool {
        self.kernels.is_empty()
    }

    /// Indices of statements occurring in some kernel.
    pub fn covered(&self) -> Vec<usize> {
        indices_of(self.kernels.iter().fold(0, |m, k| m | k.mask()))
    }

    /// Whether `incision` (union indices) meets every kernel.
    pub fn is_hit_by(&self, incision: &[usize]) -> bool {
        let m = mask_of(incision);
        self.kernels.iter().all(|k| k.mask() & m != 0)
    }

    /// Every admissible incision: subsets of the kernels' union meeting each
    /// kernel. Exponential in the size of that union.
    pub fn all_incisions(&self) -> Vec<Vec<usize>> {
        if self.kernels.is_empty() {
            return vec![Vec::new()];
        }
        let covered = self.covered();
        (1u64..1 << covered.len())
            .map(|bits| {
                covered
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| bits >> j & 1 == 1)
                    .map(|(_, &i)| i)
                    .collect::<Vec<_>>()
            })
            .filter(|inc| self.is_hit_by(inc))
            .collect()
    }
}

/// Enumerates minimal inconsistent subsets by growing candidates in
/// cardinality order and skipping supersets of conflicts already found.
pub fn kernel_set(
    prior: &BeliefBase,
    explanation: &BeliefBase,
    limits: Limits,
) -> Result<KernelSet> {
    let ctx = RevisionContext::new(prior, explanation, None, limits)?;
    let n = ctx.combined().len();
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut kernels: Vec<Mus> = Vec::new();
    if !ctx.union_consistent() {
        for k in 1..=n {
            let mut combo: Vec<usize> = (0..k).collect();
            loop {
                let m = mask_of(&combo);
                // every proper subset of a candidate that contains no known
                // conflict was already seen to be consistent
                if !kernels.iter().any(|x| x.mask() & m == x.mask())
                    && !ctx.remainder_consistent(full & !m)
                {
                    kernels.push(Mus {
                        elements: combo
                            .iter()
                            .map(|&i| ctx.combined().statements()[i].clone())
                            .collect(),
                        indices: combo.clone(),
                    });
                }
                if !next_combination(&mut combo, n) {
                    break;
                }
            }
        }
    }
    Ok(KernelSet { ctx, kernels })
}

fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let k = combo.len();
    for i in (0..k).rev() {
        if combo[i] < n - k + i {
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IncisionPolicy {
    /// A smallest hitting set, earliest in canonical order.
    MinHittingSet,
    /// The canonically least element of each kernel not yet hit.
    CanonicalFirst,
    /// A uniformly random element of each kernel not yet hit.
    SeededRandom(u64),
}

impl IncisionPolicy {
    pub fn name(&self) -> &'static str {
        match self {
            IncisionPolicy::MinHittingSet => "min-hitting-set",
            IncisionPolicy::CanonicalFirst => "canonical-first",
            IncisionPolicy::SeededRandom(_) => "seeded-random",
        }
    }

    pub fn seed(&self) -> Option<u64> {
        match self {
            IncisionPolicy::SeededRandom(s) => Some(*s),
            _ => None,
        }
    }
}

impl fmt::Display for IncisionPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IncisionPolicy {
    type Err = String;

    /// Parses a policy name; seeded-random starts at seed 0.
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "min-hitting-set" => Ok(IncisionPolicy::MinHittingSet),
            "canonical-first" => Ok(IncisionPolicy::CanonicalFirst),
            "seeded-random" => Ok(IncisionPolicy::SeededRandom(0)),
            _ => Err(format!("unknown incision policy `{s}`")),
        }
    }
}

/// Statements to retract, as ascending union indices.
pub fn incise(ks: &KernelSet, policy: IncisionPolicy) -> Vec<usize> {
    if ks.kernels.is_empty() {
        return Vec::new();
    }
    let mut out = match policy {
        IncisionPolicy::MinHittingSet => {
            let covered = ks.covered();
            let mut found = None;
            'size: for k in 1..=covered.len() {
                let mut combo: Vec<usize> = (0..k).collect();
                loop {
                    let cand: Vec<usize> = combo.iter().map(|&j| covered[j]).collect();
                    if ks.is_hit_by(&cand) {
                        found = Some(cand);
                        break 'size;
                    }
                    if !next_combination(&mut combo, covered.len()) {
                        break;
                    }
                }
            }
            found.expect("the kernels' union hits every kernel")
        }
        IncisionPolicy::CanonicalFirst | IncisionPolicy::SeededRandom(_) => {
            let mut rng = ChaCha8Rng::seed_from_u64(policy.seed().unwrap_or(0));
            let mut chosen: Vec<usize> = Vec::new();
            for k in &ks.kernels {
                if k.indices.iter().any(|i| chosen.contains(i)) {
                    continue;
                }
                chosen.push(match policy {
                    IncisionPolicy::SeededRandom(_) => k.indices[rng.gen_range(0..k.len())],
                    _ => k.indices[0],
                });
            }
            chosen
        }
    };
    out.sort_unstable();
    out
}

/// B ◇ E: union, then remove an incision of the union's kernel set. Blind to
/// any explanandum.
pub fn revise_falappa(
    prior: &BeliefBase,
    explanation: &BeliefBase,
    policy: IncisionPolicy,
    limits: Limits,
) -> Result<RevisionResult> {
    let ks = kernel_set(prior, explanation, limits)?;
    let cut = incise(&ks, policy);
    revise_falappa_with(&ks, &cut, policy.name())
}

/// Applies an explicit incision. Fails if it misses a kernel or strays
/// outside the kernels' union.
pub fn revise_falappa_with(
    ks: &KernelSet,
    incision: &[usize],
    policy: &str,
) -> Result<RevisionResult> {
    let covered = ks.covered();
    if !ks.is_hit_by(incision) || incision.iter().any(|i| !covered.contains(i)) {
        let labels: Vec<String> = incision
            .iter()
            .filter_map(|&i| ks.union().statements().get(i).map(|s| s.label.clone()))
            .collect();
        return Err(Error::ScenarioInvalid(format!(
            "{{{}}} is not an incision of the kernel set",
            labels.join(", ")
        )));
    }
    RevisionResult::from_removal(
        Operator::Falappa,
        ks.union(),
        ks.ctx.signature(),
        incision,
        policy.to_string(),
        None,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse_base;

    fn contrast() -> (BeliefBase, BeliefBase) {
        (
            parse_base(
                "Wor(charlie). Wor(diana). Wor(charlie) -> Ins(charlie). Wor(diana) -> Ins(diana).",
            )
            .unwrap(),
            parse_base("Wor(diana). Cop(charlie). Wor(charlie) & Cop(charlie) -> !Ins(charlie).")
                .unwrap(),
        )
    }

    #[test]
    fn contrast_kernel_set() {
        let (b, e) = contrast();
        let ks = kernel_set(&b, &e, Limits::default()).unwrap();
        let r: Vec<String> = ks.kernels.iter().map(Mus::render).collect();
        assert_eq!(
            r,
            ["{Cop(charlie), Wor(charlie), Wor(charlie) & Cop(charlie) -> !Ins(charlie), Wor(charlie) -> Ins(charlie)}"]
        );
    }

    #[test]
    fn incision_policies() {
        let (b, e) = contrast();
        let ks = kernel_set(&b, &e, Limits::default()).unwrap();
        let label = |v: Vec<usize>| -> Vec<String> {
            v.iter()
                .map(|&i| ks.union().statements()[i].formula.canonical())
                .collect()
        };
        assert_eq!(
            label(incise(&ks, IncisionPolicy::CanonicalFirst)),
            ["Cop(charlie)"]
        );
        assert_eq!(
            label(incise(&ks, IncisionPolicy::MinHittingSet)),
            ["Cop(charlie)"]
        );
        for s in 0..10 {
            let cut = incise(&ks, IncisionPolicy::SeededRandom(s));
            assert_eq!(cut.len(), 1);
            assert!(ks.is_hit_by(&cut));
        }
        assert_eq!(ks.all_incisions().len(), 15);
    }

    #[test]
    fn insomnia_single_mus() {
        let b = parse_base("Wor(charlie). Wor(charlie) -> Ins(charlie).").unwrap();
        let e = parse_base("!Ins(charlie).").unwrap();
        let ks = kernel_set(&b, &e, Limits::default()).unwrap();
        assert_eq!(ks.kernels.len(), 1);
        assert_eq!(ks.kernels[0].len(), 3);
    }

    #[test]
    fn consistent_union_is_untouched() {
        let b = parse_base("Wor(charlie).").unwrap();
        let e = parse_base("Ins(charlie).").unwrap();
        let ks = kernel_set(&b, &e, Limits::default()).unwrap();
        assert!(ks.is_empty());
        assert!(incise(&ks, IncisionPolicy::MinHittingSet).is_empty());
        let r = revise_falappa(&b, &e, IncisionPolicy::CanonicalFirst, Limits::default()).unwrap();
        assert_eq!(r.revised.len(), 2);
    }

    #[test]
    fn two_overlapping_conflicts() {
        let b = parse_base("P(a). Q(a). P(a) -> R(a). Q(a) -> R(a).").unwrap();
        let e = parse_base("!R(a).").unwrap();
        let ks = kernel_set(&b, &e, Limits::default()).unwrap();
        assert_eq!(ks.kernels.len(), 2);
        let cut = incise(&ks, IncisionPolicy::MinHittingSet);
        assert_eq!(cut.len(), 1);
        assert_eq!(ks.union().statements()[cut[0]].formula.canonical(), "!R(a)");
        let r = revise_falappa_with(&ks, &cut, "manual").unwrap();
        assert!(r.is_consistent());
        assert!(revise_falappa_with(&ks, &[], "manual").is_err());
    }
}
