//! Shared fixtures for the integration suites.

#![allow(dead_code)]

use sci_tableau::equality::Label;
use sci_tableau::model::{extract_model, label_agreement, ElemId, SciModel, Valuation};
use sci_tableau::tableau::{expand_branch, BranchOutcome, BranchState, LabelledFormula, Options};
use sci_tableau::{Formula, Mode, Polarity};
use std::collections::{BTreeMap, BTreeSet};

/// The published three-element structure: U = {0, 1, 2}, D = {1, 2},
/// negation sends everything nonzero to 0 and 0 to 1, implication is 2 on the
/// diagonal and 0 exactly when the antecedent is designated and the
/// consequent is not, identity is the left argument on the nonzero diagonal.
pub fn three_element_model() -> SciModel {
    let universe: Vec<ElemId> = vec![0, 1, 2];
    let mut neg = BTreeMap::new();
    let mut implication = BTreeMap::new();
    let mut identity = BTreeMap::new();
    for &a in &universe {
        neg.insert(a, if a != 0 { 0 } else { 1 });
        for &b in &universe {
            let impl_value = if a == b {
                2
            } else if a != 0 && b == 0 {
                0
            } else {
                1
            };
            implication.insert((a, b), impl_value);
            let ident_value = if a != b {
                0
            } else if a != 0 {
                a
            } else {
                1
            };
            identity.insert((a, b), ident_value);
        }
    }
    SciModel {
        universe,
        designated: BTreeSet::from([1, 2]),
        neg,
        implication,
        identity,
    }
}

/// Drives the engine on a fresh tableau for `f` and, when a branch stays
/// open, re-checks the extracted model externally: table conditions, the
/// label-valuation agreement, and the expected side of the designated set
/// for the root.
pub fn checked_open_branch(
    f: &Formula,
    mode: Mode,
    options: &Options,
) -> Option<(SciModel, Valuation)> {
    let polarity = match mode {
        Mode::Validity => Polarity::Minus,
        Mode::Satisfiability => Polarity::Plus,
    };
    let root = LabelledFormula::new(Label { id: 0, polarity }, f.clone());
    let branch = BranchState::new(root.clone());
    let bound = sci_tableau::tableau::branch_application_bound(f);
    let expansion = expand_branch(branch, options, bound).expect("engine invariants hold");
    match expansion.outcome {
        BranchOutcome::Closed => None,
        BranchOutcome::Open(branch) => {
            let (model, valuation) = extract_model(&branch, &root).expect("extraction succeeds");
            assert!(
                sci_tableau::check_model_wellformed(&model),
                "conditions fail on the model for {f}"
            );
            assert!(
                label_agreement(&branch, &root, &valuation),
                "label-valuation agreement fails for {f}"
            );
            let designated = model.is_designated(valuation.get(f).expect("root is mapped"));
            assert_eq!(
                designated,
                mode == Mode::Satisfiability,
                "root denotation on the wrong side for {f}"
            );
            Some((model, valuation))
        }
    }
}

/// Twenty classical tautologies, written with the derived connectives.
pub fn classical_tautologies() -> Vec<&'static str> {
    vec![
        "p -> p",
        "~~p <-> p",
        "p -> (q -> p)",
        "(p -> (q -> r)) -> ((p -> q) -> (p -> r))",
        "(~p -> ~q) -> (q -> p)",
        r"p \/ ~p",
        r"~(p /\ ~p)",
        "((p -> q) -> p) -> p",
        r"(p /\ q) -> p",
        r"p -> (p \/ q)",
        "(p -> q) <-> (~q -> ~p)",
        r"~(p \/ q) <-> (~p /\ ~q)",
        r"~(p /\ q) <-> (~p \/ ~q)",
        r"(p /\ q) <-> (q /\ p)",
        r"(p \/ q) <-> (q \/ p)",
        r"((p /\ q) /\ r) <-> (p /\ (q /\ r))",
        r"(p -> (q -> r)) <-> ((p /\ q) -> r)",
        r"((p \/ q) /\ ~p) -> q",
        "(p <-> q) -> (p -> q)",
        r"(p /\ (p -> q)) -> q",
    ]
}

/// Atomic instantiations of the eight axiom schemes.
pub fn axiom_instances() -> Vec<&'static str> {
    vec![
        "p -> (q -> p)",
        "(p -> (q -> r)) -> ((p -> q) -> (p -> r))",
        "(~p -> ~q) -> (q -> p)",
        "p == p",
        "p == q -> ~p == ~q",
        "p == q -> (r == s -> (p -> r) == (q -> s))",
        "p == q -> (r == s -> (p == r) == (q == s))",
        "p == q -> (p -> q)",
    ]
}

/// Identity strengthenings of classical equivalences that fail.
pub fn failing_strengthenings() -> Vec<&'static str> {
    vec!["~~p == p", "(p -> q) == (~q -> ~p)"]
}
