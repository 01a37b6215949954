//! Provability-preserving transformation into a chain of simple identities.
//!
//! Every distinct subformula gets a fresh definition atom; each subformula
//! contributes one identity clause tying its atom to the atoms of its parts.
//! The result is the right-nested implication of all clauses, in post-order
//! of the distinct subformulas, ending in the atom of the whole formula.

use crate::formula::{render, Formula};
use std::collections::{BTreeMap, BTreeSet};

/// Injective map from the distinct subformulas of one input to fresh atoms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreshAtomMap {
    names: BTreeMap<Formula, String>,
}

impl FreshAtomMap {
    /// The fresh atom standing for `f`, if `f` is a subformula of the input.
    pub fn atom_for(&self, f: &Formula) -> Option<&str> {
        self.names.get(f).map(String::as_str)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Formula, &str)> {
        self.names.iter().map(|(f, n)| (f, n.as_str()))
    }
}

// 64-bit FNV-1a over the rendered subformula: stable across runs and
// platforms, which keeps the generated names reproducible.
fn fnv1a(text: &str) -> u64 {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for byte in text.bytes() {
        hash ^= u64::from(byte);
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    hash
}

fn fresh_names(f: &Formula) -> FreshAtomMap {
    let mut taken: BTreeSet<String> = f.atoms().iter().map(|a| a.to_string()).collect();
    let mut names = BTreeMap::new();
    for sub in f.distinct_subformulas() {
        let base = format!("v_{:016x}", fnv1a(&render(sub)));
        let mut name = base.clone();
        let mut bump = 0u32;
        while taken.contains(&name) {
            name = format!("{base}_{bump}");
            bump += 1;
        }
        taken.insert(name.clone());
        names.insert(sub.clone(), name);
    }
    FreshAtomMap { names }
}

/// The transformation together with the fresh-atom map it used.
pub fn transform_t_with_map(f: &Formula) -> (Formula, FreshAtomMap) {
    let map = fresh_names(f);
    let atom = |sub: &Formula| Formula::atom(map.atom_for(sub).expect("subformula is mapped"));
    let mut clauses = Vec::new();
    for sub in f.distinct_subformulas() {
        let definition = match sub {
            Formula::Atom(_) => sub.clone(),
            Formula::Neg(a) => Formula::neg(atom(a)),
            Formula::Impl(a, b) => Formula::implies(atom(a), atom(b)),
            Formula::Ident(a, b) => Formula::ident(atom(a), atom(b)),
        };
        clauses.push(Formula::ident(atom(sub), definition));
    }
    let mut result = atom(f);
    for clause in clauses.into_iter().rev() {
        result = Formula::implies(clause, result);
    }
    (result, map)
}

/// Turns `f` into an implication chain of simple identities over fresh atoms,
/// preserving provability.
pub fn transform_t(f: &Formula) -> Formula {
    transform_t_with_map(f).0
}
