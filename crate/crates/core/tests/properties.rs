mod common;

use proptest::prelude::*;

use revisekit_core::dsl::{base_from_json, base_to_json, parse_base, render_base};
use revisekit_core::logic::{
    collect_signature, consequences, entails, ground, is_consistent, Atom, BeliefBase, Formula,
    Literal, SignaturePart,
};
use revisekit_core::metrics::change_measure;
use revisekit_core::postulates::{check_postulates, random_instance, GeneratorParams, Postulate};
use revisekit_core::revision::{
    is_minimal_exhaustive, revise, validate_explanation, Explanandum, Limits, RevisionContext,
    SelectionStrategy,
};

use common::{brute_kernel, oracle_entails, oracle_models, random_ground_set, random_pair, Vocab};

const SMALL: Vocab = Vocab {
    preds: 3,
    consts: 2,
};

fn strategies(seed: u64) -> Vec<SelectionStrategy> {
    vec![
        SelectionStrategy::MinCardinality,
        SelectionStrategy::MaxCardinality,
        SelectionStrategy::ProtectExplanation,
        SelectionStrategy::Weighted([("b0".to_string(), 5), ("r1".to_string(), 3)].into()),
        SelectionStrategy::SeededRandom(seed),
    ]
}

fn base_of(formulas: &[Formula]) -> BeliefBase {
    BeliefBase::from_formulas(formulas.iter().cloned()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn entailment_matches_truth_tables(seed in any::<u64>(), n in 1usize..8) {
        let g = random_ground_set(seed, &SMALL, n);
        let sig = SMALL.signature();
        let models = oracle_models(&g, &sig);
        prop_assert_eq!(is_consistent(&g), !models.is_empty());
        for a in SMALL.atoms() {
            for l in [Literal::pos(a.clone()), Literal::neg(a)] {
                let phi = [l];
                prop_assert_eq!(entails(&g, &phi), oracle_entails(&models, &phi));
            }
        }
    }

    #[test]
    fn entailment_is_monotone(seed in any::<u64>(), n in 1usize..7) {
        let g = random_ground_set(seed, &SMALL, n + 1);
        let (smaller, _) = g.split_at(n);
        for a in SMALL.atoms() {
            let phi = [Literal::pos(a)];
            if entails(smaller, &phi) {
                prop_assert!(entails(&g, &phi));
            }
        }
        if !is_consistent(smaller) {
            prop_assert!(!is_consistent(&g));
        }
    }

    #[test]
    fn fresh_constants_do_not_change_entailment(seed in 0u64..10_000) {
        let (b, e) = random_pair(seed, &SMALL, 5);
        let mut formulas: Vec<Formula> = b.formulas().cloned().collect();
        formulas.extend(e.formulas().cloned());
        let base = base_of(&formulas);
        let sig = collect_signature(&[SignaturePart::Base(&base)]).unwrap();
        let mut wider = sig.clone();
        wider.add_atom(&Atom::ground("Fresh", &["zed"])).unwrap();
        let g = ground(&base, &sig).unwrap();
        let gw = ground(&base, &wider).unwrap();
        for a in sig.herbrand_base() {
            for l in [Literal::pos(a.clone()), Literal::neg(a)] {
                let phi = [l];
                prop_assert_eq!(entails(&g.formulas, &phi), entails(&gw.formulas, &phi));
            }
        }
    }

    #[test]
    fn kernel_matches_subset_filter(seed in any::<u64>(), total in 2usize..8) {
        let (b, e) = random_pair(seed, &SMALL, total);
        let ctx = RevisionContext::new(&b, &e, None, Limits::default()).unwrap();
        let got: Vec<Vec<usize>> = ctx.kernel().map(|c| c.indices).collect();
        prop_assert_eq!(got, brute_kernel(&ctx));
    }

    #[test]
    fn single_removal_minimality_is_exhaustive(seed in any::<u64>(), n in 1usize..6) {
        let g = random_ground_set(seed, &SMALL, n);
        prop_assume!(is_consistent(&g));
        let e = base_of(&g);
        let sig = collect_signature(&[SignaturePart::Base(&e)]).unwrap();
        let gamma = consequences(&e, &sig).unwrap();
        // prefer a derived literal over a stated one
        let stated: Vec<&Literal> = g.iter().filter_map(|f| match f {
            Formula::Fact(l) => Some(l),
            Formula::Rule(_) => None,
        }).collect();
        let pick = gamma.iter().find(|l| !stated.contains(l)).or(gamma.iter().next());
        prop_assume!(pick.is_some());
        let phi = Explanandum::new(vec![pick.unwrap().clone()]).unwrap();
        let report = validate_explanation(&e, &phi).unwrap();
        prop_assert!(report.entails_explanandum);
        prop_assert_eq!(report.minimal, is_minimal_exhaustive(&e, &phi).unwrap());
    }

    #[test]
    fn change_measure_is_symmetric_and_bounded(seed in any::<u64>(), n in 1usize..6, m in 1usize..6) {
        let b1 = random_ground_set(seed, &SMALL, n);
        let b2 = random_ground_set(seed.wrapping_add(1), &SMALL, m);
        prop_assume!(is_consistent(&b1) && is_consistent(&b2));
        let (x, y) = (base_of(&b1), base_of(&b2));
        let sig = SMALL.signature();
        let d = change_measure(&x, &y, &sig).unwrap();
        let r = change_measure(&y, &x, &sig).unwrap();
        prop_assert_eq!(d, r);
        prop_assert!(d.numerator <= d.denominator);
        prop_assert_eq!(change_measure(&x, &x, &sig).unwrap().numerator, 0);
    }

    #[test]
    fn text_and_json_roundtrip(seed in 0u64..10_000, total in 2usize..8) {
        let (b, _) = random_pair(seed, &SMALL, total);
        let text = render_base(&b);
        prop_assert_eq!(&parse_base(&text).unwrap(), &b);
        prop_assert_eq!(&base_from_json(&base_to_json(&b)).unwrap(), &b);
        prop_assert_eq!(render_base(&parse_base(&text).unwrap()), text);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn guided_revision_postulates(seed in any::<u64>()) {
        let params = GeneratorParams { seed, ..GeneratorParams::default() };
        let inst = random_instance(&params, Limits::default()).unwrap();
        for s in strategies(seed) {
            let r = revise(&inst.prior, &inst.explanation, &inst.explanandum, &s, Limits::default()).unwrap();
            prop_assert!(r.entails(inst.explanandum.literals()), "{s}");
            prop_assert!(r.is_consistent(), "{s}");
            let report = check_postulates(&inst.prior, &inst.explanation, &inst.explanandum, &r).unwrap();
            for p in [Postulate::Inclusion, Postulate::Consistency, Postulate::StrongAcceptance, Postulate::Vacuity] {
                prop_assert!(report.holds(p), "{} under {}", p.name(), s);
            }
        }
    }

    #[test]
    fn deterministic_strategies_repeat(seed in any::<u64>()) {
        let params = GeneratorParams { seed, ..GeneratorParams::default() };
        let inst = random_instance(&params, Limits::default()).unwrap();
        for s in strategies(seed) {
            let a = revise(&inst.prior, &inst.explanation, &inst.explanandum, &s, Limits::default()).unwrap();
            let b = revise(&inst.prior, &inst.explanation, &inst.explanandum, &s, Limits::default()).unwrap();
            prop_assert_eq!(a.retracted, b.retracted);
        }
    }
}
