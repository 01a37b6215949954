//! Brute-force satisfiability oracles, the differential-testing ground truth.
//!
//! The primary oracle enumerates partitions of the distinct subformulas
//! together with truth assignments to the atoms. A candidate is accepted when
//! the partition is a congruence for the connectives, truth is constant on
//! blocks, and the whole formula comes out true; the quotient of an accepted
//! candidate is a finite model witnessing satisfiability. A secondary oracle
//! enumerates small structures outright and cross-checks the first on a tiny
//! fragment. Both are deliberately naive.

use crate::formula::Formula;
use crate::model::{verify_model, ElemId, SciModel};
use std::collections::{BTreeMap, BTreeSet, HashMap};
use thiserror::Error;

/// Most distinct subformulas the partition oracle will take on.
pub const MAX_PARTITION_BLOCKS: usize = 12;
/// Largest universe the direct enumerator will build.
pub const MAX_ENUMERATED_UNIVERSE: usize = 3;
/// Most distinct atoms the direct enumerator will take on.
pub const MAX_ENUMERATED_ATOMS: usize = 2;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("formula has {found} distinct subformulas, oracle capacity is {max}")]
    TooManySubformulas { found: usize, max: usize },
    #[error("formula has {found} distinct atoms, enumeration capacity is {max}")]
    TooManyAtoms { found: usize, max: usize },
    #[error("universe size {found} exceeds enumeration capacity {max}")]
    UniverseTooLarge { found: usize, max: usize },
    #[error("accepted candidate failed re-verification: {0}")]
    WitnessRejected(String),
}

/// Answer of the partition oracle. A satisfiable verdict carries a verified
/// witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleVerdict {
    Satisfiable {
        model: SciModel,
        atom_values: BTreeMap<String, ElemId>,
    },
    Unsatisfiable,
}

impl OracleVerdict {
    pub fn is_satisfiable(&self) -> bool {
        matches!(self, OracleVerdict::Satisfiable { .. })
    }
}

/// Distinct subformulas of one formula, indexed in post-order of first
/// occurrence, with children as indices.
struct SubformulaDag {
    nodes: Vec<DagNode>,
    atoms: Vec<(String, usize)>,
    root: usize,
}

enum DagNode {
    Atom,
    Neg(usize),
    Impl(usize, usize),
    Ident(usize, usize),
}

impl SubformulaDag {
    fn build(f: &Formula) -> SubformulaDag {
        fn intern<'a>(
            f: &'a Formula,
            index: &mut HashMap<&'a Formula, usize>,
            nodes: &mut Vec<DagNode>,
            atoms: &mut Vec<(String, usize)>,
        ) -> usize {
            if let Some(&i) = index.get(f) {
                return i;
            }
            let node = match f {
                Formula::Atom(name) => {
                    atoms.push((name.clone(), nodes.len()));
                    DagNode::Atom
                }
                Formula::Neg(a) => DagNode::Neg(intern(a, index, nodes, atoms)),
                Formula::Impl(a, b) => {
                    let ia = intern(a, index, nodes, atoms);
                    let ib = intern(b, index, nodes, atoms);
                    DagNode::Impl(ia, ib)
                }
                Formula::Ident(a, b) => {
                    let ia = intern(a, index, nodes, atoms);
                    let ib = intern(b, index, nodes, atoms);
                    DagNode::Ident(ia, ib)
                }
            };
            let i = nodes.len();
            nodes.push(node);
            index.insert(f, i);
            i
        }
        let mut index = HashMap::new();
        let mut nodes = Vec::new();
        let mut atoms = Vec::new();
        let root = intern(f, &mut index, &mut nodes, &mut atoms);
        SubformulaDag { nodes, atoms, root }
    }

    fn len(&self) -> usize {
        self.nodes.len()
    }
}

/// Iterator over all partitions of `0..n` as restricted growth strings, in
/// lexicographic order.
pub(crate) struct Partitions {
    rgs: Vec<u8>,
    prefix_max: Vec<u8>,
    started: bool,
}

impl Partitions {
    pub(crate) fn new(n: usize) -> Partitions {
        assert!(n >= 1);
        Partitions {
            rgs: vec![0; n],
            prefix_max: vec![0; n],
            started: false,
        }
    }

    pub(crate) fn next(&mut self) -> Option<&[u8]> {
        if !self.started {
            self.started = true;
            return Some(&self.rgs);
        }
        let n = self.rgs.len();
        for i in (1..n).rev() {
            if self.rgs[i] <= self.prefix_max[i - 1] {
                self.rgs[i] += 1;
                self.prefix_max[i] = self.prefix_max[i - 1].max(self.rgs[i]);
                for j in i + 1..n {
                    self.rgs[j] = 0;
                    self.prefix_max[j] = self.prefix_max[j - 1];
                }
                return Some(&self.rgs);
            }
        }
        None
    }
}

/// One candidate: a partition of the subformulas and a truth assignment to
/// the atoms (as a bitmask over `dag.atoms`).
fn candidate_truth(dag: &SubformulaDag, rgs: &[u8], atom_bits: u32) -> Option<Vec<bool>> {
    let mut truth = vec![false; dag.len()];
    let mut atom_index = 0;
    for (i, node) in dag.nodes.iter().enumerate() {
        truth[i] = match node {
            DagNode::Atom => {
                let bit = atom_bits >> atom_index & 1 == 1;
                atom_index += 1;
                bit
            }
            DagNode::Neg(a) => !truth[*a],
            DagNode::Impl(a, b) => !truth[*a] || truth[*b],
            DagNode::Ident(a, b) => rgs[*a] == rgs[*b],
        };
    }
    // Truth must be constant on blocks.
    let blocks = 1 + *rgs.iter().max().unwrap() as usize;
    let mut block_truth: Vec<Option<bool>> = vec![None; blocks];
    for i in 0..dag.len() {
        let block = rgs[i] as usize;
        match block_truth[block] {
            None => block_truth[block] = Some(truth[i]),
            Some(t) if t == truth[i] => {}
            Some(_) => return None,
        }
    }
    Some(truth)
}

/// The partition must be a congruence: equal children force equal parents.
fn is_congruence(dag: &SubformulaDag, rgs: &[u8]) -> bool {
    let n = dag.len();
    for i in 0..n {
        for j in i + 1..n {
            let compatible = match (&dag.nodes[i], &dag.nodes[j]) {
                (DagNode::Neg(a), DagNode::Neg(b)) => rgs[*a] != rgs[*b] || rgs[i] == rgs[j],
                (DagNode::Impl(a, c), DagNode::Impl(b, d))
                | (DagNode::Ident(a, c), DagNode::Ident(b, d)) => {
                    rgs[*a] != rgs[*b] || rgs[*c] != rgs[*d] || rgs[i] == rgs[j]
                }
                _ => true,
            };
            if !compatible {
                return false;
            }
        }
    }
    true
}

fn accepts(dag: &SubformulaDag, rgs: &[u8], atom_bits: u32) -> bool {
    if !is_congruence(dag, rgs) {
        return false;
    }
    match candidate_truth(dag, rgs, atom_bits) {
        Some(truth) => truth[dag.root],
        None => false,
    }
}

/// Builds the quotient model of an accepted candidate: one element per block
/// plus two fresh default elements.
fn quotient_model(
    dag: &SubformulaDag,
    rgs: &[u8],
    atom_bits: u32,
) -> (SciModel, BTreeMap<String, ElemId>) {
    let truth = candidate_truth(dag, rgs, atom_bits).expect("candidate was accepted");
    let blocks = 1 + *rgs.iter().max().unwrap() as usize;
    let default_plus = blocks as ElemId;
    let default_minus = blocks as ElemId + 1;
    let mut block_truth = vec![false; blocks];
    for i in 0..dag.len() {
        block_truth[rgs[i] as usize] = truth[i];
    }
    let universe: Vec<ElemId> = (0..blocks as ElemId + 2).collect();
    let mut designated: BTreeSet<ElemId> = (0..blocks)
        .filter(|&b| block_truth[b])
        .map(|b| b as ElemId)
        .collect();
    designated.insert(default_plus);
    let truthy = |e: ElemId| e == default_plus || (e < blocks as ElemId) && block_truth[e as usize];

    // Where a connective applied to blocks is itself a subformula, the table
    // is pinned to that subformula's block; defaults are by truth value.
    let mut neg_pin: BTreeMap<ElemId, ElemId> = BTreeMap::new();
    let mut impl_pin: BTreeMap<(ElemId, ElemId), ElemId> = BTreeMap::new();
    let mut ident_pin: BTreeMap<(ElemId, ElemId), ElemId> = BTreeMap::new();
    for (i, node) in dag.nodes.iter().enumerate() {
        let e = rgs[i] as ElemId;
        match node {
            DagNode::Atom => {}
            DagNode::Neg(a) => {
                neg_pin.insert(rgs[*a] as ElemId, e);
            }
            DagNode::Impl(a, b) => {
                impl_pin.insert((rgs[*a] as ElemId, rgs[*b] as ElemId), e);
            }
            DagNode::Ident(a, b) => {
                ident_pin.insert((rgs[*a] as ElemId, rgs[*b] as ElemId), e);
            }
        }
    }
    let mut neg = BTreeMap::new();
    let mut implication = BTreeMap::new();
    let mut identity = BTreeMap::new();
    for &a in &universe {
        let fallback = if truthy(a) { default_minus } else { default_plus };
        neg.insert(a, neg_pin.get(&a).copied().unwrap_or(fallback));
        for &b in &universe {
            let fallback = if !truthy(a) || truthy(b) {
                default_plus
            } else {
                default_minus
            };
            implication.insert(
                (a, b),
                impl_pin.get(&(a, b)).copied().unwrap_or(fallback),
            );
            let fallback = if a == b { default_plus } else { default_minus };
            identity.insert((a, b), ident_pin.get(&(a, b)).copied().unwrap_or(fallback));
        }
    }
    let atom_values = dag
        .atoms
        .iter()
        .map(|(name, i)| (name.clone(), rgs[*i] as ElemId))
        .collect();
    (
        SciModel {
            universe,
            designated,
            neg,
            implication,
            identity,
        },
        atom_values,
    )
}

/// Searches partition-major, assignments inner, for the first accepted
/// candidate. Parallel builds fan chunks of partitions out to worker threads;
/// the leftmost accepted candidate wins either way.
fn search_candidates(dag: &SubformulaDag) -> Option<(Vec<u8>, u32)> {
    let assignments: u32 = 1 << dag.atoms.len();

    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        const CHUNK: usize = 4096;
        let mut partitions = Partitions::new(dag.len());
        loop {
            let mut chunk: Vec<Vec<u8>> = Vec::with_capacity(CHUNK);
            while chunk.len() < CHUNK {
                match partitions.next() {
                    Some(rgs) => chunk.push(rgs.to_vec()),
                    None => break,
                }
            }
            if chunk.is_empty() {
                return None;
            }
            let hit = chunk.par_iter().find_map_first(|rgs| {
                (0..assignments)
                    .find(|&bits| accepts(dag, rgs, bits))
                    .map(|bits| (rgs.clone(), bits))
            });
            if hit.is_some() {
                return hit;
            }
        }
    }

    #[cfg(not(feature = "parallel"))]
    {
        let mut partitions = Partitions::new(dag.len());
        while let Some(rgs) = partitions.next() {
            for bits in 0..assignments {
                if accepts(dag, rgs, bits) {
                    return Some((rgs.to_vec(), bits));
                }
            }
        }
        None
    }
}

/// Brute-force satisfiability by candidate enumeration. Satisfiable answers
/// are certified: the witness is rebuilt as a model and re-verified by the
/// independent evaluator before being returned.
pub fn oracle_sat(f: &Formula) -> Result<OracleVerdict, OracleError> {
    let dag = SubformulaDag::build(f);
    if dag.len() > MAX_PARTITION_BLOCKS {
        return Err(OracleError::TooManySubformulas {
            found: dag.len(),
            max: MAX_PARTITION_BLOCKS,
        });
    }
    match search_candidates(&dag) {
        None => Ok(OracleVerdict::Unsatisfiable),
        Some((rgs, bits)) => {
            let (model, atom_values) = quotient_model(&dag, &rgs, bits);
            if !crate::model::check_model_wellformed(&model) {
                return Err(OracleError::WitnessRejected(
                    "quotient violates the model conditions".into(),
                ));
            }
            match verify_model(&model, &atom_values, f) {
                Ok(true) => Ok(OracleVerdict::Satisfiable { model, atom_values }),
                Ok(false) => Err(OracleError::WitnessRejected(
                    "quotient does not designate the formula".into(),
                )),
                Err(e) => Err(OracleError::WitnessRejected(e.to_string())),
            }
        }
    }
}

/// Direct enumeration of all structures with at most `max_universe` elements
/// (tables restricted to the semantic conditions) and all atom valuations.
pub fn enumerate_models_sat(f: &Formula, max_universe: usize) -> Result<bool, OracleError> {
    let atoms: Vec<String> = f.atoms().iter().map(|s| s.to_string()).collect();
    if atoms.len() > MAX_ENUMERATED_ATOMS {
        return Err(OracleError::TooManyAtoms {
            found: atoms.len(),
            max: MAX_ENUMERATED_ATOMS,
        });
    }
    if max_universe > MAX_ENUMERATED_UNIVERSE {
        return Err(OracleError::UniverseTooLarge {
            found: max_universe,
            max: MAX_ENUMERATED_UNIVERSE,
        });
    }
    for size in 1..=max_universe {
        for designated_bits in 1..(1u32 << size) - 1 {
            let designated: BTreeSet<ElemId> =
                (0..size as ElemId).filter(|e| designated_bits >> e & 1 == 1).collect();
            if model_space_sat(f, &atoms, size, &designated) {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Enumerates every table choice consistent with the conditions for a fixed
/// universe and designated set, then every valuation.
fn model_space_sat(
    f: &Formula,
    atoms: &[String],
    size: usize,
    designated: &BTreeSet<ElemId>,
) -> bool {
    let elems: Vec<ElemId> = (0..size as ElemId).collect();
    let side = |want_designated: bool| -> Vec<ElemId> {
        elems
            .iter()
            .copied()
            .filter(|e| designated.contains(e) == want_designated)
            .collect()
    };
    // Cells in a fixed order, each with its admissible values.
    let mut cells: Vec<(Table, ElemId, ElemId, Vec<ElemId>)> = Vec::new();
    for &a in &elems {
        cells.push((Table::Neg, a, 0, side(!designated.contains(&a))));
        for &b in &elems {
            let designated_impl = !designated.contains(&a) || designated.contains(&b);
            cells.push((Table::Impl, a, b, side(designated_impl)));
            cells.push((Table::Ident, a, b, side(a == b)));
        }
    }
    if cells.iter().any(|(_, _, _, choices)| choices.is_empty()) {
        return false;
    }

    let mut choice = vec![0usize; cells.len()];
    loop {
        let mut model = SciModel {
            universe: elems.clone(),
            designated: designated.clone(),
            neg: BTreeMap::new(),
            implication: BTreeMap::new(),
            identity: BTreeMap::new(),
        };
        for (i, (table, a, b, choices)) in cells.iter().enumerate() {
            let value = choices[choice[i]];
            match table {
                Table::Neg => model.neg.insert(*a, value),
                Table::Impl => model.implication.insert((*a, *b), value),
                Table::Ident => model.identity.insert((*a, *b), value),
            };
        }
        let mut assignment = vec![0 as ElemId; atoms.len()];
        loop {
            let atom_values: BTreeMap<String, ElemId> = atoms
                .iter()
                .cloned()
                .zip(assignment.iter().copied())
                .collect();
            if verify_model(&model, &atom_values, f) == Ok(true) {
                return true;
            }
            // Next valuation, odometer style.
            let mut pos = 0;
            loop {
                if pos == assignment.len() {
                    break;
                }
                assignment[pos] += 1;
                if (assignment[pos] as usize) < size {
                    break;
                }
                assignment[pos] = 0;
                pos += 1;
            }
            if pos == assignment.len() {
                break;
            }
        }
        // Next table choice.
        let mut pos = 0;
        loop {
            if pos == cells.len() {
                return false;
            }
            choice[pos] += 1;
            if choice[pos] < cells[pos].3.len() {
                break;
            }
            choice[pos] = 0;
            pos += 1;
        }
    }
}

enum Table {
    Neg,
    Impl,
    Ident,
}
