//! Finite models: construction from an open fully expanded branch,
//! independent bottom-up evaluation, and wellformedness checking.
//!
//! The branch model quotients the branch labels by derived equality. Each
//! class is represented by its lowest-id label (the root label for the root's
//! class), a fresh designated default element is always added, and operation
//! tables are filled from the branch where it pins a value and by the
//! truth-conditions otherwise.

use crate::equality::{Label, Polarity};
use crate::formula::Formula;
use crate::tableau::{BranchState, LabelledFormula};
use std::collections::{BTreeMap, BTreeSet, HashMap};
use thiserror::Error;

/// Identifier of a universe element. For extracted models these are the
/// representative label ids plus fresh ids for the default elements.
pub type ElemId = u32;

/// A finite structure with dense operation tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SciModel {
    pub universe: Vec<ElemId>,
    pub designated: BTreeSet<ElemId>,
    pub neg: BTreeMap<ElemId, ElemId>,
    pub implication: BTreeMap<(ElemId, ElemId), ElemId>,
    pub identity: BTreeMap<(ElemId, ElemId), ElemId>,
}

impl SciModel {
    pub fn is_designated(&self, e: ElemId) -> bool {
        self.designated.contains(&e)
    }
}

/// Denotations of the subformulas of one formula, atoms included.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Valuation {
    pub denotations: BTreeMap<Formula, ElemId>,
}

impl Valuation {
    pub fn get(&self, f: &Formula) -> Option<ElemId> {
        self.denotations.get(f).copied()
    }

    /// The atom part of the valuation, keyed by atom name.
    pub fn atom_assignments(&self) -> BTreeMap<String, ElemId> {
        self.denotations
            .iter()
            .filter_map(|(f, &e)| match f {
                Formula::Atom(name) => Some((name.clone(), e)),
                _ => None,
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("no denotation for atom `{0}`")]
    MissingAtom(String),
    #[error("operation table has no entry for {0}")]
    MissingTableEntry(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtractError {
    #[error("branch is closed or not fully expanded")]
    NotFullyExpanded,
    #[error("root labelled formula is not the first formula of the branch")]
    RootMismatch,
    #[error("extracted structure violates a model invariant: {0}")]
    Invariant(String),
}

/// Evaluates `f` bottom-up in `m` under the given atom denotations and
/// reports whether the result is designated. Independent of the tableau
/// machinery.
pub fn verify_model(
    m: &SciModel,
    atom_values: &BTreeMap<String, ElemId>,
    f: &Formula,
) -> Result<bool, EvalError> {
    let value = evaluate(m, atom_values, f)?;
    Ok(m.is_designated(value))
}

/// The denotation of `f` in `m` under the given atom denotations.
pub fn evaluate(
    m: &SciModel,
    atom_values: &BTreeMap<String, ElemId>,
    f: &Formula,
) -> Result<ElemId, EvalError> {
    match f {
        Formula::Atom(name) => atom_values
            .get(name)
            .copied()
            .ok_or_else(|| EvalError::MissingAtom(name.clone())),
        Formula::Neg(a) => {
            let va = evaluate(m, atom_values, a)?;
            m.neg
                .get(&va)
                .copied()
                .ok_or_else(|| EvalError::MissingTableEntry(format!("neg({va})")))
        }
        Formula::Impl(a, b) => {
            let va = evaluate(m, atom_values, a)?;
            let vb = evaluate(m, atom_values, b)?;
            m.implication
                .get(&(va, vb))
                .copied()
                .ok_or_else(|| EvalError::MissingTableEntry(format!("impl({va}, {vb})")))
        }
        Formula::Ident(a, b) => {
            let va = evaluate(m, atom_values, a)?;
            let vb = evaluate(m, atom_values, b)?;
            m.identity
                .get(&(va, vb))
                .copied()
                .ok_or_else(|| EvalError::MissingTableEntry(format!("ident({va}, {vb})")))
        }
    }
}

/// Full table scan of the three semantic conditions plus non-emptiness of the
/// designated set and its complement.
pub fn check_model_wellformed(m: &SciModel) -> bool {
    let universe: BTreeSet<ElemId> = m.universe.iter().copied().collect();
    if universe.len() != m.universe.len() {
        return false;
    }
    if !m.designated.iter().all(|e| universe.contains(e)) {
        return false;
    }
    let designated = |e: ElemId| m.designated.contains(&e);
    if m.designated.is_empty() || m.designated.len() == universe.len() {
        return false;
    }
    for &a in &universe {
        match m.neg.get(&a) {
            Some(&r) if universe.contains(&r) => {
                if designated(r) != !designated(a) {
                    return false;
                }
            }
            _ => return false,
        }
        for &b in &universe {
            match m.implication.get(&(a, b)) {
                Some(&r) if universe.contains(&r) => {
                    if designated(r) != (!designated(a) || designated(b)) {
                        return false;
                    }
                }
                _ => return false,
            }
            match m.identity.get(&(a, b)) {
                Some(&r) if universe.contains(&r) => {
                    if designated(r) != (a == b) {
                        return false;
                    }
                }
                _ => return false,
            }
        }
    }
    true
}

/// Representative element for every label of the branch: lowest id in its
/// class, except the root's class which is represented by the root label.
pub fn class_representatives(
    branch: &BranchState,
    root_label: Label,
) -> BTreeMap<Label, ElemId> {
    let store = branch.store();
    let mut reps = BTreeMap::new();
    for &label in store.labels() {
        let rep = if store.same_class(label, root_label).unwrap_or(false) {
            root_label
        } else {
            store
                .class_representative(label)
                .expect("label is registered")
        };
        reps.insert(label, rep.id);
    }
    reps
}

/// Re-checks that every labelled formula of the branch denotes its class
/// representative under the extracted valuation.
pub fn label_agreement(
    branch: &BranchState,
    root: &LabelledFormula,
    valuation: &Valuation,
) -> bool {
    let reps = class_representatives(branch, root.label);
    branch
        .formulas()
        .iter()
        .all(|lf| valuation.get(&lf.formula) == reps.get(&lf.label).copied())
}

/// Builds the branch model and valuation from an open fully expanded branch
/// whose first formula is `root`. The result is checked against the model
/// invariants before it is returned.
pub fn extract_model(
    branch: &BranchState,
    root: &LabelledFormula,
) -> Result<(SciModel, Valuation), ExtractError> {
    if branch.formulas().first() != Some(root) {
        return Err(ExtractError::RootMismatch);
    }
    // Unexpanded compound urfathers or pending equality applications mean the
    // branch is not fully expanded (a pending clash means it is closable).
    for (i, lf) in branch.formulas().iter().enumerate() {
        if !lf.formula.is_atomic()
            && !branch.is_expanded(i)
            && branch.urfather(&lf.formula) == Some(i)
        {
            return Err(ExtractError::NotFullyExpanded);
        }
    }
    let mut probe = branch.clone();
    let saturation = probe.saturate_equalities();
    if !saturation.applications.is_empty() || saturation.closed.is_some() {
        return Err(ExtractError::NotFullyExpanded);
    }

    let reps = class_representatives(branch, root.label);
    let rep_of = |label: Label| reps[&label];
    let max_id = branch
        .store()
        .labels()
        .iter()
        .map(|l| l.id)
        .max()
        .expect("branch has the root formula");
    let default_plus: ElemId = max_id + 1;
    // In validity mode the non-designated default is the root representative;
    // a satisfiability-mode branch gets a fresh one.
    let default_minus: ElemId = match root.label.polarity {
        Polarity::Minus => rep_of(root.label),
        Polarity::Plus => max_id + 2,
    };

    let mut universe: BTreeSet<ElemId> = reps.values().copied().collect();
    universe.insert(default_plus);
    universe.insert(default_minus);
    let mut designated: BTreeSet<ElemId> = branch
        .store()
        .labels()
        .iter()
        .filter(|l| l.polarity == Polarity::Plus)
        .map(|&l| rep_of(l))
        .collect();
    designated.insert(default_plus);

    // Labels per formula, and the representative elements carrying each
    // formula, for the closed-case table scans.
    let mut elems_of: HashMap<&Formula, BTreeSet<ElemId>> = HashMap::new();
    for lf in branch.formulas() {
        elems_of
            .entry(&lf.formula)
            .or_default()
            .insert(rep_of(lf.label));
    }
    let carries = |f: &Formula, e: ElemId| elems_of.get(f).is_some_and(|set| set.contains(&e));

    let is_designated = |e: ElemId| designated.contains(&e);
    let mut neg = BTreeMap::new();
    let mut implication = BTreeMap::new();
    let mut identity = BTreeMap::new();
    for &a in &universe {
        let closed = branch.formulas().iter().find_map(|lf| match &*lf.formula {
            Formula::Neg(inner) if carries(inner, a) => Some(rep_of(lf.label)),
            _ => None,
        });
        let value = closed.unwrap_or(if !is_designated(a) {
            default_plus
        } else {
            default_minus
        });
        neg.insert(a, value);

        for &b in &universe {
            let closed = branch.formulas().iter().find_map(|lf| match &*lf.formula {
                Formula::Impl(x, y) if carries(x, a) && carries(y, b) => Some(rep_of(lf.label)),
                _ => None,
            });
            let value = closed.unwrap_or(if !is_designated(a) || is_designated(b) {
                default_plus
            } else {
                default_minus
            });
            implication.insert((a, b), value);

            let closed = branch.formulas().iter().find_map(|lf| match &*lf.formula {
                Formula::Ident(x, y) if carries(x, a) && carries(y, b) => Some(rep_of(lf.label)),
                _ => None,
            });
            let value = closed.unwrap_or(if a == b { default_plus } else { default_minus });
            identity.insert((a, b), value);
        }
    }

    let model = SciModel {
        universe: universe.iter().copied().collect(),
        designated,
        neg,
        implication,
        identity,
    };

    // Valuation: atoms denote their class representative, absent atoms the
    // designated default; compounds extend homomorphically.
    let mut denotations: BTreeMap<Formula, ElemId> = BTreeMap::new();
    for sub in root.formula.distinct_subformulas() {
        let value = match sub {
            Formula::Atom(_) => branch
                .formulas()
                .iter()
                .find(|lf| *lf.formula == *sub)
                .map(|lf| rep_of(lf.label))
                .unwrap_or(default_plus),
            Formula::Neg(a) => model.neg[&denotations[a.as_ref()]],
            Formula::Impl(a, b) => {
                model.implication[&(denotations[a.as_ref()], denotations[b.as_ref()])]
            }
            Formula::Ident(a, b) => {
                model.identity[&(denotations[a.as_ref()], denotations[b.as_ref()])]
            }
        };
        denotations.insert(sub.clone(), value);
    }
    let valuation = Valuation { denotations };

    if !check_model_wellformed(&model) {
        return Err(ExtractError::Invariant(
            "operation tables violate the semantic conditions".into(),
        ));
    }
    for lf in branch.formulas() {
        match valuation.get(&lf.formula) {
            Some(value) if value == rep_of(lf.label) => {}
            Some(_) => {
                return Err(ExtractError::Invariant(format!(
                    "label {} disagrees with the valuation of {}",
                    lf.label, lf.formula
                )))
            }
            None => {
                return Err(ExtractError::Invariant(format!(
                    "branch formula {} is not a subformula of the root",
                    lf.formula
                )))
            }
        }
    }
    let root_value = valuation
        .get(&root.formula)
        .expect("root formula is its own subformula");
    let want_designated = root.label.polarity == Polarity::Plus;
    if model.is_designated(root_value) != want_designated {
        return Err(ExtractError::Invariant(
            "root denotation is on the wrong side of the designated set".into(),
        ));
    }
    Ok((model, valuation))
}
