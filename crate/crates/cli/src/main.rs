//! `revisekit`: check belief bases and scenarios, revise with either
//! operator, list kernels, replay the scenario corpus and run the postulate
//! suite.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::{self, BufRead, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use revisekit_core::baseline::{kernel_set, revise_falappa, IncisionPolicy};
use revisekit_core::corpus::{run_corpus, CorpusReport};
use revisekit_core::dsl::{base_from_json, parse_base, parse_scenario};
use revisekit_core::logic::{collect_signature, ground, is_consistent, BeliefBase, SignaturePart};
use revisekit_core::postulates::{check_propositions, GeneratorParams};
use revisekit_core::report::revision_report;
use revisekit_core::revision::{
    revise, validate_explanation_in, Explanandum, Limits, Operator, RevisionContext,
    SelectionStrategy, DEFAULT_MAX_GROUND,
};
use revisekit_core::Error;

const EXIT_PARSE: u8 = 2;
const EXIT_INVARIANT: u8 = 3;
const EXIT_INVALID_EXPLANATION: u8 = 4;
const EXIT_CAP: u8 = 5;

#[derive(Parser)]
#[command(
    name = "revisekit",
    version,
    about = "Explanation-guided belief revision"
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Cap on ground formulas in B ∪ E.
    #[arg(long, env = "REVISEKIT_MAX_GROUND", default_value_t = DEFAULT_MAX_GROUND, global = true)]
    max_ground: usize,
    /// Seed for seeded-random selection, random incisions and the suite.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OperatorArg {
    Guided,
    Falappa,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StrategyArg {
    MinCardinality,
    MaxCardinality,
    ProtectExplanation,
    Weighted,
    SeededRandom,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum IncisionArg {
    MinHittingSet,
    CanonicalFirst,
    SeededRandom,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate a belief base (.kb, .json) or scenario (.scn).
    Check { path: PathBuf },
    /// Revise a base with an explanation of an explanandum.
    Revise(ReviseArgs),
    /// List correction sets, or minimal inconsistent subsets with --muses.
    Kernels {
        base: PathBuf,
        explanation: PathBuf,
        #[arg(long)]
        muses: bool,
    },
    /// Replay the embedded scenario corpus.
    Corpus {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        experiment: Option<u8>,
        #[arg(long, value_enum, default_value_t = StrategyArg::ProtectExplanation)]
        strategy: StrategyArg,
    },
    /// Run the postulate suite on seeded random instances.
    Suite(SuiteArgs),
}

#[derive(Args)]
struct ReviseArgs {
    base: PathBuf,
    explanation: PathBuf,
    /// Ground conjunction, e.g. "!Ins(charlie)".
    explanandum: String,
    #[arg(long, value_enum, default_value_t = OperatorArg::Guided)]
    operator: OperatorArg,
    #[arg(long, value_enum, default_value_t = StrategyArg::MinCardinality)]
    strategy: StrategyArg,
    /// Weight for the weighted strategy, as LABEL=N or FORMULA=N; repeatable.
    #[arg(long = "weight", value_name = "KEY=N")]
    weights: Vec<String>,
    #[arg(long, value_enum, default_value_t = IncisionArg::CanonicalFirst)]
    incision: IncisionArg,
    /// List the admissible correction sets and read a 1-based choice from
    /// standard input.
    #[arg(long)]
    interactive: bool,
}

#[derive(Args)]
struct SuiteArgs {
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    #[arg(long, value_enum, default_value_t = OperatorArg::Guided)]
    operator: OperatorArg,
    #[arg(long, default_value_t = GeneratorParams::default().predicates)]
    predicates: usize,
    #[arg(long, default_value_t = GeneratorParams::default().max_arity)]
    max_arity: usize,
    #[arg(long, default_value_t = GeneratorParams::default().constants)]
    constants: usize,
    #[arg(long, default_value_t = GeneratorParams::default().fact_probability)]
    fact_probability: f64,
    #[arg(long, default_value_t = GeneratorParams::default().rules)]
    rules: usize,
    #[arg(long, default_value_t = GeneratorParams::default().body_len)]
    body_len: usize,
}

/// A failure with its exit code already decided.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }

    fn from_core(err: Error, path: Option<&Path>) -> Self {
        let code = match &err {
            Error::Parse(_) | Error::Json(_) => EXIT_PARSE,
            Error::InvalidExplanation(_) => EXIT_INVALID_EXPLANATION,
            Error::CapExceeded { .. } => EXIT_CAP,
            _ => EXIT_INVARIANT,
        };
        let message = match (path, &err) {
            (Some(p), Error::Parse(_)) => format!("{}:{err}", p.display()),
            (Some(p), _) => format!("{}: {err}", p.display()),
            (None, _) => err.to_string(),
        };
        Failure { code, message }
    }
}

type CmdResult = Result<(String, u8), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::new(1, format!("{}: {e}", path.display())))
}

fn load_base(path: &Path) -> Result<BeliefBase, Failure> {
    let text = read(path)?;
    let parsed = if path.extension().is_some_and(|e| e == "json") {
        base_from_json(&text)
    } else {
        parse_base(&text)
    };
    parsed.map_err(|e| Failure::from_core(e, Some(path)))
}

fn to_json(v: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serializes");
    s.push('\n');
    s
}

fn strategy_from(
    arg: StrategyArg,
    seed: Option<u64>,
    weights: &[String],
) -> Result<SelectionStrategy, Failure> {
    Ok(match arg {
        StrategyArg::MinCardinality => SelectionStrategy::MinCardinality,
        StrategyArg::MaxCardinality => SelectionStrategy::MaxCardinality,
        StrategyArg::ProtectExplanation => SelectionStrategy::ProtectExplanation,
        StrategyArg::SeededRandom => SelectionStrategy::SeededRandom(seed.unwrap_or(0)),
        StrategyArg::Weighted => {
            let mut map = BTreeMap::new();
            for w in weights {
                let (k, v) = w.rsplit_once('=').ok_or_else(|| {
                    Failure::new(EXIT_PARSE, format!("weight `{w}` is not KEY=N"))
                })?;
                let n: u64 = v.trim().parse().map_err(|_| {
                    Failure::new(EXIT_PARSE, format!("weight `{w}` has a non-numeric value"))
                })?;
                map.insert(k.trim().to_string(), n);
            }
            SelectionStrategy::Weighted(map)
        }
    })
}

fn cmd_check(cli: &Cli, path: &Path) -> CmdResult {
    let text = read(path)?;
    let is_scenario = path.extension().is_some_and(|e| e == "scn");
    if is_scenario {
        let sc = parse_scenario(&text).map_err(|e| Failure::from_core(e, Some(path)))?;
        let out = match cli.format {
            Format::Json => to_json(&json!({
                "kind": "scenario",
                "id": sc.id,
                "type": sc.problem_type.to_string(),
                "statements": sc.statements().len(),
                "has_explanation": sc.explanation.is_some(),
            })),
            Format::Text => format!(
                "ok: scenario {}, type {}, {} statements{}\n",
                sc.id,
                sc.problem_type,
                sc.statements().len(),
                if sc.explanation.is_some() {
                    ", with explanation"
                } else {
                    ""
                }
            ),
        };
        return Ok((out, 0));
    }
    let base = load_base(path)?;
    let sig = collect_signature(&[SignaturePart::Base(&base)])
        .map_err(|e| Failure::from_core(e, Some(path)))?;
    let g = ground(&base, &sig).map_err(|e| Failure::from_core(e, Some(path)))?;
    let consistent = is_consistent(&g.formulas);
    let facts = base.facts().count();
    let rules = base.rules().count();
    let out = match cli.format {
        Format::Json => to_json(&json!({
            "kind": "base",
            "facts": facts,
            "rules": rules,
            "ground_formulas": g.formulas.len(),
            "consistent": consistent,
        })),
        Format::Text => format!(
            "ok: base with {facts} facts and {rules} rules, {} ground formulas, consistent: {consistent}\n",
            g.formulas.len()
        ),
    };
    Ok((out, 0))
}

fn prompt_choice(ctx: &RevisionContext) -> Result<usize, Failure> {
    let candidates: Vec<_> = ctx.admissible().collect();
    let mut err = io::stderr().lock();
    for (i, c) in candidates.iter().enumerate() {
        let _ = writeln!(err, "{:>3}) {}", i + 1, c.render());
    }
    let _ = write!(err, "select [1-{}]: ", candidates.len());
    let _ = err.flush();
    let mut line = String::new();
    io::stdin()
        .lock()
        .read_line(&mut line)
        .map_err(|e| Failure::new(1, format!("reading selection: {e}")))?;
    let n: usize = line.trim().parse().map_err(|_| {
        Failure::new(
            EXIT_INVARIANT,
            format!("selection `{}` is not a number", line.trim()),
        )
    })?;
    if n == 0 || n > candidates.len() {
        return Err(Failure::new(
            EXIT_INVARIANT,
            format!("selection {n} out of range 1..={}", candidates.len()),
        ));
    }
    Ok(n - 1)
}

fn cmd_revise(cli: &Cli, args: &ReviseArgs) -> CmdResult {
    let limits = Limits {
        max_ground: cli.max_ground,
    };
    let base = load_base(&args.base)?;
    let explanation = load_base(&args.explanation)?;
    let phi = Explanandum::parse(&args.explanandum).map_err(|e| Failure::from_core(e, None))?;
    let core = |e| Failure::from_core(e, None);
    let result = match args.operator {
        OperatorArg::Falappa => {
            let policy = match args.incision {
                IncisionArg::MinHittingSet => IncisionPolicy::MinHittingSet,
                IncisionArg::CanonicalFirst => IncisionPolicy::CanonicalFirst,
                IncisionArg::SeededRandom => IncisionPolicy::SeededRandom(cli.seed.unwrap_or(0)),
            };
            let mut r = revise_falappa(&base, &explanation, policy, limits).map_err(core)?;
            r.seed = policy.seed();
            r
        }
        OperatorArg::Guided if args.interactive => {
            let ctx =
                RevisionContext::new(&base, &explanation, Some(&phi), limits).map_err(core)?;
            let report =
                validate_explanation_in(&explanation, &phi, ctx.signature()).map_err(core)?;
            if !report.is_valid() {
                return Err(core(Error::InvalidExplanation(Box::new(report))));
            }
            let strategy = if ctx.union_consistent() {
                SelectionStrategy::Interactive(0)
            } else {
                SelectionStrategy::Interactive(prompt_choice(&ctx)?)
            };
            revisekit_core::revision::revise_in(&ctx, &strategy).map_err(core)?
        }
        OperatorArg::Guided => {
            let strategy = strategy_from(args.strategy, cli.seed, &args.weights)?;
            revise(&base, &explanation, &phi, &strategy, limits).map_err(core)?
        }
    };
    let report = revision_report(&base, &explanation, &phi, &result).map_err(core)?;
    let out = match cli.format {
        Format::Json => to_json(&report),
        Format::Text => report.to_text(),
    };
    Ok((out, 0))
}

fn cmd_kernels(cli: &Cli, base: &Path, explanation: &Path, muses: bool) -> CmdResult {
    let limits = Limits {
        max_ground: cli.max_ground,
    };
    let b = load_base(base)?;
    let e = load_base(explanation)?;
    let core = |e| Failure::from_core(e, None);
    let sets: Vec<Vec<(String, String)>> = if muses {
        kernel_set(&b, &e, limits)
            .map_err(core)?
            .kernels
            .iter()
            .map(|k| {
                k.elements
                    .iter()
                    .map(|s| (s.label.clone(), s.formula.canonical()))
                    .collect()
            })
            .collect()
    } else {
        let ctx = RevisionContext::new(&b, &e, None, limits).map_err(core)?;
        ctx.kernel()
            .map(|c| {
                c.elements
                    .iter()
                    .map(|s| (s.label.clone(), s.formula.canonical()))
                    .collect()
            })
            .collect()
    };
    let out = match cli.format {
        Format::Json => to_json(
            &sets
                .iter()
                .map(|s| {
                    s.iter()
                        .map(|(l, f)| json!({"label": l, "formula": f}))
                        .collect::<Vec<_>>()
                })
                .collect::<Vec<_>>(),
        ),
        Format::Text => sets
            .iter()
            .map(|s| {
                let f: Vec<&str> = s.iter().map(|(_, f)| f.as_str()).collect();
                format!("{{{}}}\n", f.join(", "))
            })
            .collect(),
    };
    Ok((out, 0))
}

fn corpus_text(r: &CorpusReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "experiment {} ({})", r.experiment, r.strategy);
    let _ = writeln!(
        out,
        "{:<9} {:<4} {:<22} {:<12} {:<13} {:>7} {:>13} {:>8}",
        "id", "type", "run", "retracted", "class", "changes", "D", "entails"
    );
    for row in &r.rows {
        let _ = writeln!(
            out,
            "{:<9} {:<4} {:<22} {:<12} {:<13} {:>7} {:>13} {:>8}",
            row.id,
            row.problem_type,
            row.run,
            row.retracted.join(","),
            row.classification.to_string(),
            row.statement_changes,
            row.change_measure.to_string(),
            row.entails_explanandum
        );
    }
    let a = &r.aggregate;
    let _ = writeln!(
        out,
        "total: {} rows, {} minimal, {} non-minimal, {} unclassified, {} entail the explanandum, {} statement changes",
        a.rows, a.minimal, a.non_minimal, a.unclassified, a.entail_explanandum, a.statement_changes
    );
    for c in &r.comparisons {
        let verdict = if c.non_minimal_greater {
            "greater"
        } else {
            "NOT greater"
        };
        let _ = writeln!(
            out,
            "{}: D(non-minimal) = {} vs D(minimal) = {}: {verdict}",
            c.id, c.non_minimal, c.minimal
        );
    }
    if !r.exceptions.is_empty() {
        let _ = writeln!(out, "exceptions: {}", r.exceptions.join(", "));
    }
    out
}

fn cmd_corpus(cli: &Cli, experiment: Option<u8>, strategy: StrategyArg) -> CmdResult {
    let limits = Limits {
        max_ground: cli.max_ground,
    };
    let strategy = strategy_from(strategy, cli.seed, &[])?;
    let experiments: Vec<u8> = experiment.map_or(vec![1, 2], |e| vec![e]);
    let reports = experiments
        .iter()
        .map(|&e| run_corpus(e, &strategy, limits))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| Failure::from_core(e, None))?;
    let out = match cli.format {
        Format::Json if reports.len() == 1 => to_json(&reports[0]),
        Format::Json => to_json(&reports),
        Format::Text => reports
            .iter()
            .map(corpus_text)
            .collect::<Vec<_>>()
            .join("\n"),
    };
    Ok((out, 0))
}

fn cmd_suite(cli: &Cli, args: &SuiteArgs) -> CmdResult {
    let limits = Limits {
        max_ground: cli.max_ground,
    };
    let params = GeneratorParams {
        predicates: args.predicates,
        max_arity: args.max_arity,
        constants: args.constants,
        fact_probability: args.fact_probability.clamp(0.0, 1.0),
        rules: args.rules,
        body_len: args.body_len,
        seed: 0,
    };
    let operator = match args.operator {
        OperatorArg::Guided => Operator::Guided,
        OperatorArg::Falappa => Operator::Falappa,
    };
    let seed = cli.seed.unwrap_or(0);
    let r = check_propositions(&params, args.trials, seed, operator, limits)
        .map_err(|e| Failure::from_core(e, None))?;
    let out = match cli.format {
        Format::Json => to_json(&r),
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(
                s,
                "{} trials from seed {} ({} operator), {} with an inconsistent union",
                r.trials, r.seed, r.operator, r.inconsistent_unions
            );
            for (name, t) in &r.postulates {
                let _ = writeln!(
                    s,
                    "{name}: {} applicable, {} violations",
                    t.antecedent, t.violations
                );
            }
            for f in &r.failures {
                let _ = writeln!(
                    s,
                    "FAIL {} seed {}: {}",
                    f.postulate, f.seed, f.witness.strategy
                );
                let _ = writeln!(s, "  B: {}", f.witness.prior.trim_end().replace('\n', " "));
                let _ = writeln!(
                    s,
                    "  E: {}",
                    f.witness.explanation.trim_end().replace('\n', " ")
                );
                let _ = writeln!(s, "  phi: {}", f.witness.explanandum);
            }
            for f in &r.baseline_violations {
                let _ = writeln!(
                    s,
                    "baseline {} violation (seed {}): retracted {{{}}}, phi {}",
                    f.postulate,
                    f.seed,
                    f.witness.retracted.join(", "),
                    f.witness.explanandum
                );
            }
            s
        }
    };
    let code = if r.failures.is_empty() { 0 } else { 1 };
    Ok((out, code))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Check { path } => cmd_check(&cli, path),
        Command::Revise(args) => cmd_revise(&cli, args),
        Command::Kernels {
            base,
            explanation,
            muses,
        } => cmd_kernels(&cli, base, explanation, *muses),
        Command::Corpus {
            experiment,
            strategy,
        } => cmd_corpus(&cli, *experiment, *strategy),
        Command::Suite(args) => cmd_suite(&cli, args),
    };
    match result {
        Ok((out, code)) => {
            print!("{out}");
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
