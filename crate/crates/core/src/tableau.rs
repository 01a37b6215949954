//! The labelled tableau engine: decomposition rules, equality saturation,
//! closure detection, urfather blocking, and proof-tree recording.
//!
//! A branch is expanded in two phases. Decomposition rules run first, always
//! picking the oldest unexpanded compound formula, splitting the branch on
//! rules with several alternatives. Once no decomposition rule applies, the
//! equality rules are saturated to a fixpoint. Closure is detected eagerly:
//! the equality store refuses any merge that mixes polarities or contradicts
//! a recorded disequality, and the branch closes at that point.

use crate::equality::{AssertOutcome, ClashKind, EqualityStore, Label, Polarity};
use crate::formula::Formula;
use crate::model::{extract_model, ExtractError, SciModel, Valuation};
use std::collections::HashMap;
use std::sync::Arc;
use thiserror::Error;

/// A formula occurrence tagged with a label for its denotation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelledFormula {
    pub label: Label,
    pub formula: Arc<Formula>,
}

impl LabelledFormula {
    pub fn new(label: Label, formula: Formula) -> LabelledFormula {
        LabelledFormula {
            label,
            formula: Arc::new(formula),
        }
    }
}

impl std::fmt::Display for LabelledFormula {
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(out, "{}: {}", self.label, self.formula)
    }
}

/// What question the tableau answers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Root the tableau at a minus-labelled formula; closed means valid.
    Validity,
    /// Root the tableau at a plus-labelled formula; open means satisfiable.
    Satisfiability,
}

/// Engine options.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Options {
    /// Restrict decomposition to the first occurrence of each formula on a
    /// branch.
    pub urfather_blocking: bool,
}

/// Rules recorded in proof trees.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rule {
    Root,
    NegPlus,
    NegMinus,
    ImplPlus,
    ImplMinus,
    IdentPlus,
    IdentMinus,
    IdentNeg,
    IdentImpl,
    IdentIdent,
    Func,
    ClosurePolarity,
    ClosureDiseq,
    Open,
}

impl Rule {
    pub fn as_str(self) -> &'static str {
        match self {
            Rule::Root => "root",
            Rule::NegPlus => "neg_plus",
            Rule::NegMinus => "neg_minus",
            Rule::ImplPlus => "impl_plus",
            Rule::ImplMinus => "impl_minus",
            Rule::IdentPlus => "ident_plus",
            Rule::IdentMinus => "ident_minus",
            Rule::IdentNeg => "ident_neg",
            Rule::IdentImpl => "ident_impl",
            Rule::IdentIdent => "ident_ident",
            Rule::Func => "func",
            Rule::ClosurePolarity => "closure_polarity",
            Rule::ClosureDiseq => "closure_diseq",
            Rule::Open => "open",
        }
    }

    pub fn is_decomposition(self) -> bool {
        matches!(
            self,
            Rule::NegPlus
                | Rule::NegMinus
                | Rule::ImplPlus
                | Rule::ImplMinus
                | Rule::IdentPlus
                | Rule::IdentMinus
        )
    }
}

fn closure_rule(kind: ClashKind) -> Rule {
    match kind {
        ClashKind::Polarity => Rule::ClosurePolarity,
        ClashKind::Disequality => Rule::ClosureDiseq,
    }
}

/// Node taxonomy of the derivation tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeKind {
    Normal,
    Identity,
    ClosureLeaf,
    OpenLeaf,
}

impl NodeKind {
    pub fn as_str(self) -> &'static str {
        match self {
            NodeKind::Normal => "normal",
            NodeKind::Identity => "identity",
            NodeKind::ClosureLeaf => "closure-leaf",
            NodeKind::OpenLeaf => "open-leaf",
        }
    }
}

/// A fact added to a branch by a rule application.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Fact {
    Formula(LabelledFormula),
    Equal(Label, Label),
    Distinct(Label, Label),
}

/// One rule application (or the root, or a leaf) in the derivation tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofNode {
    pub kind: NodeKind,
    pub rule: Rule,
    pub added: Vec<Fact>,
    pub children: Vec<ProofNode>,
}

/// A derivation tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofTree {
    pub root: ProofNode,
}

/// Depth is the maximal branch length, size the total node count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TreeStats {
    pub depth: usize,
    pub size: usize,
}

impl ProofTree {
    pub fn stats(&self) -> TreeStats {
        fn walk(node: &ProofNode) -> TreeStats {
            let mut depth = 0;
            let mut size = 0;
            for child in &node.children {
                let s = walk(child);
                depth = depth.max(s.depth);
                size += s.size;
            }
            TreeStats {
                depth: depth + 1,
                size: size + 1,
            }
        }
        walk(&self.root)
    }
}

/// Computed stats of a derivation tree.
pub fn stats(tree: &ProofTree) -> TreeStats {
    tree.stats()
}

fn application_weight(node: &ProofNode) -> u64 {
    match node.kind {
        NodeKind::Normal => {
            if node.rule == Rule::Root {
                0
            } else {
                let relations = node
                    .added
                    .iter()
                    .filter(|f| matches!(f, Fact::Equal(..) | Fact::Distinct(..)))
                    .count() as u64;
                1 + relations
            }
        }
        NodeKind::Identity | NodeKind::ClosureLeaf => 1,
        NodeKind::OpenLeaf => 0,
    }
}

/// Counted rule applications per branch, one entry per leaf in left-to-right
/// order. Decomposition applications, merges, recorded disequalities, and
/// closures each count one.
pub fn branch_rule_applications(tree: &ProofTree) -> Vec<u64> {
    fn walk(node: &ProofNode, acc: u64, out: &mut Vec<u64>) {
        let acc = acc + application_weight(node);
        if node.children.is_empty() {
            out.push(acc);
        } else {
            for child in &node.children {
                walk(child, acc, out);
            }
        }
    }
    let mut out = Vec::new();
    walk(&tree.root, 0, &mut out);
    out
}

/// Rule-application bound for a branch of a tableau rooted at `f`.
pub fn branch_application_bound(f: &Formula) -> u64 {
    let n = f.size() as u64;
    n + n * n + 1
}

/// One conclusion set of a decomposition rule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alternative {
    pub formulas: Vec<LabelledFormula>,
    pub equalities: Vec<(Label, Label)>,
    pub disequalities: Vec<(Label, Label)>,
}

/// A decomposition rule instance: the rule and its alternatives, left to
/// right. Sibling alternatives share the fresh label ids; they live on
/// different branches.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub rule: Rule,
    pub alternatives: Vec<Alternative>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot decompose the atomic formula {0}")]
pub struct AtomicFormula(pub String);

/// Applies the decomposition rule matching `lf`, drawing fresh label ids from
/// `next_id`.
pub fn decompose(lf: &LabelledFormula, next_id: &mut u32) -> Result<Decomposition, AtomicFormula> {
    let mut fresh = |polarity| {
        let label = Label {
            id: *next_id,
            polarity,
        };
        *next_id += 1;
        label
    };
    let lift = |label: Label, f: &Formula| LabelledFormula::new(label, f.clone());
    match (&*lf.formula, lf.label.polarity) {
        (Formula::Atom(name), _) => Err(AtomicFormula(name.clone())),
        (Formula::Neg(a), Polarity::Plus) => {
            let v = fresh(Polarity::Minus);
            Ok(Decomposition {
                rule: Rule::NegPlus,
                alternatives: vec![Alternative {
                    formulas: vec![lift(v, a)],
                    equalities: vec![],
                    disequalities: vec![],
                }],
            })
        }
        (Formula::Neg(a), Polarity::Minus) => {
            let v = fresh(Polarity::Plus);
            Ok(Decomposition {
                rule: Rule::NegMinus,
                alternatives: vec![Alternative {
                    formulas: vec![lift(v, a)],
                    equalities: vec![],
                    disequalities: vec![],
                }],
            })
        }
        (Formula::Impl(a, b), Polarity::Plus) => {
            let v = fresh(Polarity::Plus).id;
            let u = fresh(Polarity::Plus).id;
            let alt = |vp, up| Alternative {
                formulas: vec![
                    lift(Label { id: v, polarity: vp }, a),
                    lift(Label { id: u, polarity: up }, b),
                ],
                equalities: vec![],
                disequalities: vec![],
            };
            Ok(Decomposition {
                rule: Rule::ImplPlus,
                alternatives: vec![
                    alt(Polarity::Minus, Polarity::Minus),
                    alt(Polarity::Minus, Polarity::Plus),
                    alt(Polarity::Plus, Polarity::Plus),
                ],
            })
        }
        (Formula::Impl(a, b), Polarity::Minus) => {
            let v = fresh(Polarity::Plus);
            let u = fresh(Polarity::Minus);
            Ok(Decomposition {
                rule: Rule::ImplMinus,
                alternatives: vec![Alternative {
                    formulas: vec![lift(v, a), lift(u, b)],
                    equalities: vec![],
                    disequalities: vec![],
                }],
            })
        }
        (Formula::Ident(a, b), Polarity::Plus) => {
            let v = fresh(Polarity::Plus).id;
            let u = fresh(Polarity::Plus).id;
            let alt = |pol| {
                let lv = Label { id: v, polarity: pol };
                let lu = Label { id: u, polarity: pol };
                Alternative {
                    formulas: vec![lift(lv, a), lift(lu, b)],
                    equalities: vec![(lv, lu)],
                    disequalities: vec![],
                }
            };
            Ok(Decomposition {
                rule: Rule::IdentPlus,
                alternatives: vec![alt(Polarity::Plus), alt(Polarity::Minus)],
            })
        }
        (Formula::Ident(a, b), Polarity::Minus) => {
            let v = fresh(Polarity::Plus).id;
            let u = fresh(Polarity::Plus).id;
            let alt = |vp, up, distinct: bool| {
                let lv = Label { id: v, polarity: vp };
                let lu = Label { id: u, polarity: up };
                Alternative {
                    formulas: vec![lift(lv, a), lift(lu, b)],
                    equalities: vec![],
                    disequalities: if distinct { vec![(lv, lu)] } else { vec![] },
                }
            };
            Ok(Decomposition {
                rule: Rule::IdentMinus,
                alternatives: vec![
                    alt(Polarity::Plus, Polarity::Plus, true),
                    alt(Polarity::Plus, Polarity::Minus, false),
                    alt(Polarity::Minus, Polarity::Plus, false),
                    alt(Polarity::Minus, Polarity::Minus, true),
                ],
            })
        }
    }
}

/// A branch: labelled formulas in insertion order, the equality store, and
/// expansion bookkeeping.
#[derive(Debug, Clone)]
pub struct BranchState {
    formulas: Vec<LabelledFormula>,
    expanded: Vec<bool>,
    store: EqualityStore,
    urfathers: HashMap<Arc<Formula>, usize>,
    next_label_id: u32,
    rule_applications: u64,
}

/// Outcome of saturating the equality rules on a branch.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Saturation {
    /// Merges performed, in application order.
    pub applications: Vec<(Rule, Label, Label)>,
    /// Set when a closure rule fired; the last application is the clashing
    /// equality.
    pub closed: Option<ClashKind>,
}

impl BranchState {
    pub fn new(root: LabelledFormula) -> BranchState {
        let mut branch = BranchState {
            formulas: Vec::new(),
            expanded: Vec::new(),
            store: EqualityStore::new(),
            urfathers: HashMap::new(),
            next_label_id: root.label.id + 1,
            rule_applications: 0,
        };
        branch.push(root);
        branch
    }

    fn push(&mut self, lf: LabelledFormula) {
        debug_assert!(
            !self.store.is_registered(lf.label),
            "label {} reused on branch",
            lf.label
        );
        self.store.register(lf.label);
        let index = self.formulas.len();
        self.urfathers.entry(lf.formula.clone()).or_insert(index);
        self.formulas.push(lf);
        self.expanded.push(false);
    }

    pub fn formulas(&self) -> &[LabelledFormula] {
        &self.formulas
    }

    /// Whether the formula at `index` has been decomposed on this branch.
    pub fn is_expanded(&self, index: usize) -> bool {
        self.expanded[index]
    }

    pub fn store(&self) -> &EqualityStore {
        &self.store
    }

    /// Index of the first occurrence of `f` on the branch.
    pub fn urfather(&self, f: &Formula) -> Option<usize> {
        self.urfathers.get(f).copied()
    }

    /// Adds a labelled formula directly. Test and harness entry point; the
    /// engine adds formulas through rule application.
    pub fn add_formula(&mut self, lf: LabelledFormula) {
        self.push(lf);
    }

    /// Asserts an equality directly, without recording a rule application.
    pub fn add_equality(&mut self, w: Label, v: Label) -> AssertOutcome {
        self.store.assert_equal(w, v).expect("labels on branch")
    }

    /// Asserts a disequality directly, without recording a rule application.
    pub fn add_disequality(&mut self, w: Label, v: Label) -> AssertOutcome {
        self.store.assert_unequal(w, v).expect("labels on branch")
    }

    /// Counted rule applications so far on this branch.
    pub fn rule_applications(&self) -> u64 {
        self.rule_applications
    }

    /// Oldest compound formula still eligible for decomposition. Under
    /// urfather blocking, later occurrences of an already-seen formula are
    /// never eligible.
    pub fn next_unexpanded(&self, urfather_blocking: bool) -> Option<usize> {
        (0..self.formulas.len()).find(|&i| {
            let lf = &self.formulas[i];
            !self.expanded[i]
                && !lf.formula.is_atomic()
                && (!urfather_blocking || self.urfathers[&lf.formula] == i)
        })
    }

    /// Runs the equality rules to a fixpoint, eagerly closing on the first
    /// contradiction.
    pub fn saturate_equalities(&mut self) -> Saturation {
        // Grouping is stable for the whole saturation: equality rules add no
        // formulas.
        let mut groups: Vec<Vec<Label>> = Vec::new();
        let mut group_of: HashMap<&Formula, usize> = HashMap::new();
        let mut negs: Vec<(Label, &Formula)> = Vec::new();
        let mut impls: Vec<(Label, &Formula, &Formula)> = Vec::new();
        let mut idents: Vec<(Label, &Formula, &Formula)> = Vec::new();
        for lf in &self.formulas {
            let entry = group_of.entry(&lf.formula).or_insert_with(|| {
                groups.push(Vec::new());
                groups.len() - 1
            });
            groups[*entry].push(lf.label);
            match &*lf.formula {
                Formula::Atom(_) => {}
                Formula::Neg(a) => negs.push((lf.label, a)),
                Formula::Impl(a, b) => impls.push((lf.label, a, b)),
                Formula::Ident(a, b) => idents.push((lf.label, a, b)),
            }
        }
        let store = &mut self.store;
        let linked = |store: &EqualityStore, a: &Formula, b: &Formula| -> bool {
            let (Some(&ga), Some(&gb)) = (group_of.get(a), group_of.get(b)) else {
                return false;
            };
            groups[ga].iter().any(|&w| {
                groups[gb]
                    .iter()
                    .any(|&v| store.same_class(w, v).expect("labels on branch"))
            })
        };

        let mut applications = Vec::new();
        let mut closed = None;
        'saturate: loop {
            let mut progress = false;
            let mut merge = |store: &mut EqualityStore,
                             rule: Rule,
                             w: Label,
                             v: Label,
                             applications: &mut Vec<(Rule, Label, Label)>|
             -> Option<ClashKind> {
                applications.push((rule, w, v));
                self.rule_applications += 1;
                match store.assert_equal(w, v).expect("labels on branch") {
                    AssertOutcome::Consistent { .. } => None,
                    AssertOutcome::Contradiction(kind) => Some(kind),
                }
            };

            for group in &groups {
                for i in 0..group.len() {
                    for j in i + 1..group.len() {
                        let (w, v) = (group[i], group[j]);
                        if store.same_class(w, v).expect("labels on branch") {
                            continue;
                        }
                        if let Some(kind) = merge(store, Rule::Func, w, v, &mut applications) {
                            closed = Some(kind);
                            break 'saturate;
                        }
                        progress = true;
                    }
                }
            }
            for i in 0..negs.len() {
                for j in i + 1..negs.len() {
                    let (u, a) = negs[i];
                    let (y, b) = negs[j];
                    if store.same_class(u, y).expect("labels on branch") {
                        continue;
                    }
                    if !linked(store, a, b) {
                        continue;
                    }
                    if let Some(kind) = merge(store, Rule::IdentNeg, u, y, &mut applications) {
                        closed = Some(kind);
                        break 'saturate;
                    }
                    progress = true;
                }
            }
            let mut binary = |store: &mut EqualityStore,
                              rule: Rule,
                              entries: &[(Label, &Formula, &Formula)],
                              applications: &mut Vec<(Rule, Label, Label)>|
             -> Result<bool, ClashKind> {
                let mut progress = false;
                for i in 0..entries.len() {
                    for j in i + 1..entries.len() {
                        let (x, a, c) = entries[i];
                        let (z, b, d) = entries[j];
                        if store.same_class(x, z).expect("labels on branch") {
                            continue;
                        }
                        if !linked(store, a, b) || !linked(store, c, d) {
                            continue;
                        }
                        applications.push((rule, x, z));
                        self.rule_applications += 1;
                        match store.assert_equal(x, z).expect("labels on branch") {
                            AssertOutcome::Consistent { .. } => progress = true,
                            AssertOutcome::Contradiction(kind) => return Err(kind),
                        }
                    }
                }
                Ok(progress)
            };
            match binary(store, Rule::IdentImpl, &impls, &mut applications) {
                Ok(p) => progress |= p,
                Err(kind) => {
                    closed = Some(kind);
                    break 'saturate;
                }
            }
            match binary(store, Rule::IdentIdent, &idents, &mut applications) {
                Ok(p) => progress |= p,
                Err(kind) => {
                    closed = Some(kind);
                    break 'saturate;
                }
            }
            if !progress {
                break;
            }
        }
        if closed.is_some() {
            self.rule_applications += 1; // the closure rule
        }
        Saturation {
            applications,
            closed,
        }
    }
}

/// How a fully explored branch (or subtree) ended.
#[derive(Debug)]
pub enum BranchOutcome {
    Closed,
    /// First open fully expanded branch in left-to-right order.
    Open(Box<BranchState>),
}

/// Derivation tree fragment plus the outcome of exploring a branch.
#[derive(Debug)]
pub struct Expansion {
    pub nodes: Vec<ProofNode>,
    pub outcome: BranchOutcome,
}

#[derive(Debug, Error)]
pub enum EngineError {
    #[error("branch exceeded the rule-application bound: {applications} > {bound}")]
    TerminationBound { applications: u64, bound: u64 },
    #[error(transparent)]
    Extraction(#[from] ExtractError),
}

/// Expands a branch to completion, depth first, alternatives left to right.
/// Exploration stops at the first open fully expanded branch.
pub fn expand_branch(
    branch: BranchState,
    options: &Options,
    bound: u64,
) -> Result<Expansion, EngineError> {
    if let Some(index) = branch.next_unexpanded(options.urfather_blocking) {
        let lf = branch.formulas[index].clone();
        let mut next_id = branch.next_label_id;
        let decomposition =
            decompose(&lf, &mut next_id).expect("next_unexpanded returns compound formulas");
        let mut nodes = Vec::new();
        let mut open = None;
        for alternative in &decomposition.alternatives {
            let mut child = branch.clone();
            child.expanded[index] = true;
            child.next_label_id = next_id;
            child.rule_applications += 1;
            let mut added = Vec::new();
            for lf in &alternative.formulas {
                child.push(lf.clone());
                added.push(Fact::Formula(lf.clone()));
            }
            for &(w, v) in &alternative.equalities {
                child.rule_applications += 1;
                let outcome = child.store.assert_equal(w, v).expect("fresh labels");
                debug_assert!(!outcome.is_contradiction(), "fresh labels cannot clash");
                added.push(Fact::Equal(w, v));
            }
            for &(w, v) in &alternative.disequalities {
                child.rule_applications += 1;
                let outcome = child.store.assert_unequal(w, v).expect("fresh labels");
                debug_assert!(!outcome.is_contradiction(), "fresh labels cannot clash");
                added.push(Fact::Distinct(w, v));
            }
            let expansion = expand_branch(child, options, bound)?;
            nodes.push(ProofNode {
                kind: NodeKind::Normal,
                rule: decomposition.rule,
                added,
                children: expansion.nodes,
            });
            if let BranchOutcome::Open(state) = expansion.outcome {
                open = Some(state);
                break;
            }
        }
        return Ok(Expansion {
            nodes,
            outcome: open.map_or(BranchOutcome::Closed, BranchOutcome::Open),
        });
    }

    // No decomposition applies: saturate the equality rules.
    let mut branch = branch;
    let saturation = branch.saturate_equalities();
    if branch.rule_applications > bound {
        return Err(EngineError::TerminationBound {
            applications: branch.rule_applications,
            bound,
        });
    }
    let leaf = match saturation.closed {
        Some(kind) => ProofNode {
            kind: NodeKind::ClosureLeaf,
            rule: closure_rule(kind),
            added: vec![],
            children: vec![],
        },
        None => ProofNode {
            kind: NodeKind::OpenLeaf,
            rule: Rule::Open,
            added: vec![],
            children: vec![],
        },
    };
    let mut chain = vec![leaf];
    for &(rule, w, v) in saturation.applications.iter().rev() {
        chain = vec![ProofNode {
            kind: NodeKind::Identity,
            rule,
            added: vec![Fact::Equal(w, v)],
            children: chain,
        }];
    }
    let outcome = match saturation.closed {
        Some(_) => BranchOutcome::Closed,
        None => BranchOutcome::Open(Box::new(branch)),
    };
    Ok(Expansion {
        nodes: chain,
        outcome,
    })
}

/// Decision result. Open tableaux carry the model read off the first open
/// fully expanded branch.
#[derive(Debug)]
pub enum Verdict {
    Valid {
        proof: ProofTree,
    },
    Invalid {
        model: SciModel,
        valuation: Valuation,
        proof: ProofTree,
    },
    Satisfiable {
        model: SciModel,
        valuation: Valuation,
        proof: ProofTree,
    },
    Unsatisfiable {
        proof: ProofTree,
    },
}

impl Verdict {
    pub fn proof(&self) -> &ProofTree {
        match self {
            Verdict::Valid { proof }
            | Verdict::Invalid { proof, .. }
            | Verdict::Satisfiable { proof, .. }
            | Verdict::Unsatisfiable { proof } => proof,
        }
    }

    pub fn model(&self) -> Option<(&SciModel, &Valuation)> {
        match self {
            Verdict::Invalid {
                model, valuation, ..
            }
            | Verdict::Satisfiable {
                model, valuation, ..
            } => Some((model, valuation)),
            _ => None,
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            Verdict::Valid { .. } => "valid",
            Verdict::Invalid { .. } => "invalid",
            Verdict::Satisfiable { .. } => "sat",
            Verdict::Unsatisfiable { .. } => "unsat",
        }
    }

    /// True for the affirmative answer of the queried mode: valid in validity
    /// mode, unsatisfiable in satisfiability mode.
    pub fn affirmed(&self) -> bool {
        matches!(self, Verdict::Valid { .. } | Verdict::Unsatisfiable { .. })
    }
}

/// Decides validity or satisfiability of `f`. Deterministic for fixed
/// options.
pub fn decide(f: &Formula, mode: Mode, options: &Options) -> Result<Verdict, EngineError> {
    let bound = branch_application_bound(f);
    let polarity = match mode {
        Mode::Validity => Polarity::Minus,
        Mode::Satisfiability => Polarity::Plus,
    };
    let root_lf = LabelledFormula::new(Label { id: 0, polarity }, f.clone());
    let branch = BranchState::new(root_lf.clone());
    let expansion = expand_branch(branch, options, bound)?;

    // A tableau with no rule application at all is just its root, which is
    // then the open leaf.
    let bare_open = matches!(expansion.nodes.as_slice(),
        [ProofNode { kind: NodeKind::OpenLeaf, added, children, .. }] if added.is_empty() && children.is_empty());
    let root = if bare_open {
        ProofNode {
            kind: NodeKind::OpenLeaf,
            rule: Rule::Root,
            added: vec![Fact::Formula(root_lf.clone())],
            children: vec![],
        }
    } else {
        ProofNode {
            kind: NodeKind::Normal,
            rule: Rule::Root,
            added: vec![Fact::Formula(root_lf.clone())],
            children: expansion.nodes,
        }
    };
    let proof = ProofTree { root };

    match (mode, expansion.outcome) {
        (Mode::Validity, BranchOutcome::Closed) => Ok(Verdict::Valid { proof }),
        (Mode::Satisfiability, BranchOutcome::Closed) => Ok(Verdict::Unsatisfiable { proof }),
        (mode, BranchOutcome::Open(branch)) => {
            let (model, valuation) = extract_model(&branch, &root_lf)?;
            Ok(match mode {
                Mode::Validity => Verdict::Invalid {
                    model,
                    valuation,
                    proof,
                },
                Mode::Satisfiability => Verdict::Satisfiable {
                    model,
                    valuation,
                    proof,
                },
            })
        }
    }
}
