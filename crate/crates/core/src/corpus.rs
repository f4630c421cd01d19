//! The fifteen inconsistency scenarios of the two human-subject studies,
//! embedded, plus a runner that revises each and measures the change.

use serde::Serialize;

use crate::dsl::{parse_scenario, ProblemType, Scenario, StatementKind};
use crate::error::{Error, Result};
use crate::logic::{BeliefBase, Formula};
use crate::metrics::{
    change_measure, classify_revision, statement_changes, ChangeMeasure, RevisionClass,
    DEFAULT_NON_MINIMAL_THRESHOLD,
};
use crate::revision::{
    apply_selection, revise_in, validate_explanation_in, CorrectionSet, Explanandum, Limits,
    RevisionContext, RevisionResult, SelectionStrategy,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CorpusEntry {
    pub experiment: u8,
    pub number: usize,
    pub expected_type: ProblemType,
    pub text: &'static str,
}

impl CorpusEntry {
    pub fn id(&self) -> String {
        format!("exp{}_s{}", self.experiment, self.number)
    }

    pub fn load(&self) -> Result<Scenario> {
        let sc = parse_scenario(self.text)?;
        if sc.problem_type != self.expected_type {
            return Err(Error::ScenarioInvalid(format!(
                "{} declares type {}, expected {}",
                self.id(),
                sc.problem_type,
                self.expected_type
            )));
        }
        if (self.experiment == 2) != sc.explanation.is_some() {
            return Err(Error::ScenarioInvalid(format!(
                "{}: only second-study scenarios carry an explanation",
                self.id()
            )));
        }
        Ok(sc)
    }
}

macro_rules! entry {
    ($exp:literal, $n:literal, $ty:ident) => {
        CorpusEntry {
            experiment: $exp,
            number: $n,
            expected_type: ProblemType::$ty,
            text: include_str!(concat!("../corpus/exp", $exp, "_s", $n, ".scn")),
        }
    };
}

pub const CORPUS: [CorpusEntry; 15] = [
    entry!(1, 1, I),
    entry!(1, 2, I),
    entry!(1, 3, I),
    entry!(1, 4, II),
    entry!(1, 5, II),
    entry!(1, 6, II),
    entry!(1, 7, III),
    entry!(1, 8, III),
    entry!(1, 9, III),
    entry!(2, 1, II),
    entry!(2, 2, II),
    entry!(2, 3, II),
    entry!(2, 4, III),
    entry!(2, 5, III),
    entry!(2, 6, III),
];

pub fn entries(experiment: u8) -> impl Iterator<Item = &'static CorpusEntry> {
    CORPUS.iter().filter(move |e| e.experiment == experiment)
}

/// The explanation used for a scenario: its own, or else the fact itself.
pub fn explanation_for(sc: &Scenario) -> Result<BeliefBase> {
    match &sc.explanation {
        Some(e) => Ok(e.clone()),
        None => BeliefBase::from_formulas(sc.fact.iter().cloned().map(Formula::Fact)),
    }
}

/// Reference retraction patterns.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Pattern {
    /// Retract exactly the categorical statement.
    Minimal,
    /// Retract the fewest conditionals that restore consistency.
    NonMinimal,
}

impl Pattern {
    pub fn name(self) -> &'static str {
        match self {
            Pattern::Minimal => "minimal",
            Pattern::NonMinimal => "non-minimal",
        }
    }
}

/// Guided revision of a loaded scenario, ready for pattern or strategy runs.
pub struct PreparedScenario {
    pub scenario: Scenario,
    pub prior: BeliefBase,
    pub explanation: BeliefBase,
    pub explanandum: Explanandum,
    pub ctx: RevisionContext,
}

impl PreparedScenario {
    pub fn new(sc: Scenario, limits: Limits) -> Result<Self> {
        let prior = sc.base();
        let explanation = explanation_for(&sc)?;
        let explanandum = Explanandum::new(sc.fact.clone())?;
        let ctx = RevisionContext::new(&prior, &explanation, Some(&explanandum), limits)?;
        let report = validate_explanation_in(&explanation, &explanandum, ctx.signature())?;
        if !report.is_valid() {
            return Err(Error::InvalidExplanation(Box::new(report)));
        }
        Ok(PreparedScenario {
            scenario: sc,
            prior,
            explanation,
            explanandum,
            ctx,
        })
    }

    fn is_pattern(&self, c: &CorrectionSet, pattern: Pattern) -> bool {
        let kinds: Option<Vec<StatementKind>> = c
            .indices
            .iter()
            .map(|&i| {
                let combined = self.ctx.combined();
                if combined.in_base(i) {
                    self.scenario.kind_of(&combined.statements()[i].label)
                } else {
                    None
                }
            })
            .collect();
        match (pattern, kinds) {
            (Pattern::Minimal, Some(k)) => k == [StatementKind::Categorical],
            (Pattern::NonMinimal, Some(k)) => k.iter().all(|k| *k == StatementKind::Conditional),
            (_, None) => false,
        }
    }

    /// The admissible correction set matching `pattern`, smallest first.
    pub fn pattern_set(&self, pattern: Pattern) -> Option<CorrectionSet> {
        self.ctx.admissible().find(|c| self.is_pattern(c, pattern))
    }

    pub fn revise_pattern(&self, pattern: Pattern) -> Result<Option<RevisionResult>> {
        let Some(c) = self.pattern_set(pattern) else {
            return Ok(None);
        };
        let mut r = apply_selection(&self.ctx, Some(&c), &SelectionStrategy::MinCardinality)?;
        r.strategy = pattern.name().to_string();
        Ok(Some(r))
    }

    pub fn revise(&self, strategy: &SelectionStrategy) -> Result<RevisionResult> {
        revise_in(&self.ctx, strategy)
    }

    pub fn row(&self, run: &str, result: &RevisionResult) -> Result<CorpusRow> {
        let class = classify_revision(&self.scenario, result, DEFAULT_NON_MINIMAL_THRESHOLD)?;
        Ok(CorpusRow {
            id: self.scenario.id.clone(),
            problem_type: self.scenario.problem_type.to_string(),
            run: run.to_string(),
            retracted: result
                .retracted_labels()
                .iter()
                .map(|s| s.to_string())
                .collect(),
            classification: class.label,
            statement_changes: statement_changes(&self.prior, result),
            change_measure: change_measure(&self.prior, &result.revised, self.ctx.signature())?,
            entails_explanandum: result.entails(self.explanandum.literals()),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusRow {
    pub id: String,
    pub problem_type: String,
    /// Pattern or strategy name.
    pub run: String,
    pub retracted: Vec<String>,
    pub classification: RevisionClass,
    pub statement_changes: usize,
    pub change_measure: ChangeMeasure,
    pub entails_explanandum: bool,
}

/// 𝒟 of the two reference patterns on one scenario.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Comparison {
    pub id: String,
    pub minimal: ChangeMeasure,
    pub non_minimal: ChangeMeasure,
    /// Whether 𝒟(non-minimal) > 𝒟(minimal).
    pub non_minimal_greater: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Aggregate {
    pub rows: usize,
    pub minimal: usize,
    pub non_minimal: usize,
    pub unclassified: usize,
    pub entail_explanandum: usize,
    pub statement_changes: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusReport {
    pub experiment: u8,
    pub strategy: String,
    pub rows: Vec<CorpusRow>,
    pub comparisons: Vec<Comparison>,
    /// Ids of scenarios where the non-minimal pattern does not change more.
    pub exceptions: Vec<String>,
    pub aggregate: Aggregate,
}

/// Runs one study's scenarios. The first study (no explanations) is run
/// with both reference patterns; the second with `strategy`. Both get the
/// pattern comparison.
pub fn run_corpus(
    experiment: u8,
    strategy: &SelectionStrategy,
    limits: Limits,
) -> Result<CorpusReport> {
    let mut rows = Vec::new();
    let mut comparisons = Vec::new();
    for entry in entries(experiment) {
        let p = PreparedScenario::new(entry.load()?, limits)?;
        let missing = |pat: Pattern| {
            Error::ScenarioInvalid(format!("{}: no {} retraction", entry.id(), pat.name()))
        };
        let min = p
            .revise_pattern(Pattern::Minimal)?
            .ok_or_else(|| missing(Pattern::Minimal))?;
        let non = p
            .revise_pattern(Pattern::NonMinimal)?
            .ok_or_else(|| missing(Pattern::NonMinimal))?;
        let min_row = p.row(Pattern::Minimal.name(), &min)?;
        let non_row = p.row(Pattern::NonMinimal.name(), &non)?;
        comparisons.push(Comparison {
            id: entry.id(),
            minimal: min_row.change_measure,
            non_minimal: non_row.change_measure,
            non_minimal_greater: non_row.change_measure.value() > min_row.change_measure.value(),
        });
        if experiment == 1 {
            rows.push(min_row);
            rows.push(non_row);
        } else {
            let r = p.revise(strategy)?;
            rows.push(p.row(&strategy.to_string(), &r)?);
        }
    }
    let mut aggregate = Aggregate {
        rows: rows.len(),
        ..Default::default()
    };
    for r in &rows {
        match r.classification {
            RevisionClass::Minimal => aggregate.minimal += 1,
            RevisionClass::NonMinimal => aggregate.non_minimal += 1,
            RevisionClass::Unclassified => aggregate.unclassified += 1,
        }
        aggregate.entail_explanandum += r.entails_explanandum as usize;
        aggregate.statement_changes += r.statement_changes;
    }
    Ok(CorpusReport {
        experiment,
        strategy: strategy.to_string(),
        exceptions: comparisons
            .iter()
            .filter(|c| !c.non_minimal_greater)
            .map(|c| c.id.clone())
            .collect(),
        rows,
        comparisons,
        aggregate,
    })
}
