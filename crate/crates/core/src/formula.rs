//! Abstract syntax for formulas and structural queries over them.
//!
//! The connective set is negation, implication, and the identity connective.
//! Conjunction, disjunction, and biconditional are accepted by the parser as
//! abbreviations and never appear in an abstract syntax tree.

use std::collections::BTreeSet;
use std::fmt;

/// A formula over atoms, negation, implication, and identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(String),
    Neg(Box<Formula>),
    Impl(Box<Formula>, Box<Formula>),
    Ident(Box<Formula>, Box<Formula>),
}

/// Position of a subformula occurrence: child indices from the root.
/// The empty path denotes the formula itself.
pub type Path = Vec<u8>;

impl Formula {
    pub fn atom(name: impl Into<String>) -> Formula {
        Formula::Atom(name.into())
    }

    pub fn neg(f: Formula) -> Formula {
        Formula::Neg(Box::new(f))
    }

    pub fn implies(lhs: Formula, rhs: Formula) -> Formula {
        Formula::Impl(Box::new(lhs), Box::new(rhs))
    }

    pub fn ident(lhs: Formula, rhs: Formula) -> Formula {
        Formula::Ident(Box::new(lhs), Box::new(rhs))
    }

    pub fn is_atomic(&self) -> bool {
        matches!(self, Formula::Atom(_))
    }

    /// Number of subformula occurrences, counting each occurrence separately.
    pub fn size(&self) -> usize {
        match self {
            Formula::Atom(_) => 1,
            Formula::Neg(a) => 1 + a.size(),
            Formula::Impl(a, b) | Formula::Ident(a, b) => 1 + a.size() + b.size(),
        }
    }

    /// All subformula occurrences in post-order, each with its path from the root.
    pub fn subformula_occurrences(&self) -> Vec<(Path, &Formula)> {
        let mut out = Vec::with_capacity(self.size());
        self.collect_occurrences(&mut Vec::new(), &mut out);
        out
    }

    fn collect_occurrences<'a>(&'a self, path: &mut Path, out: &mut Vec<(Path, &'a Formula)>) {
        match self {
            Formula::Atom(_) => {}
            Formula::Neg(a) => {
                path.push(0);
                a.collect_occurrences(path, out);
                path.pop();
            }
            Formula::Impl(a, b) | Formula::Ident(a, b) => {
                path.push(0);
                a.collect_occurrences(path, out);
                path.pop();
                path.push(1);
                b.collect_occurrences(path, out);
                path.pop();
            }
        }
        out.push((path.clone(), self));
    }

    /// Distinct subformulas in post-order of first occurrence.
    pub fn distinct_subformulas(&self) -> Vec<&Formula> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for (_, sub) in self.subformula_occurrences() {
            if seen.insert(sub) {
                out.push(sub);
            }
        }
        out
    }

    /// Names of the atoms occurring in the formula, sorted.
    pub fn atoms(&self) -> BTreeSet<&str> {
        let mut set = BTreeSet::new();
        self.collect_atoms(&mut set);
        set
    }

    fn collect_atoms<'a>(&'a self, set: &mut BTreeSet<&'a str>) {
        match self {
            Formula::Atom(name) => {
                set.insert(name.as_str());
            }
            Formula::Neg(a) => a.collect_atoms(set),
            Formula::Impl(a, b) | Formula::Ident(a, b) => {
                a.collect_atoms(set);
                b.collect_atoms(set);
            }
        }
    }
}

/// Renders a formula in the concrete syntax accepted by [`crate::parser::parse`].
pub fn render(f: &Formula) -> String {
    f.to_string()
}

// Binary children are parenthesized except an implication as the right child
// of an implication, so chains render as "a -> b -> c".
impl fmt::Display for Formula {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn binary(f: &Formula) -> bool {
            matches!(f, Formula::Impl(..) | Formula::Ident(..))
        }
        fn write_child(f: &Formula, parens: bool, out: &mut fmt::Formatter<'_>) -> fmt::Result {
            if parens {
                write!(out, "({f})")
            } else {
                write!(out, "{f}")
            }
        }
        match self {
            Formula::Atom(name) => write!(out, "{name}"),
            Formula::Neg(a) => {
                write!(out, "~")?;
                write_child(a, binary(a), out)
            }
            Formula::Impl(a, b) => {
                write_child(a, binary(a), out)?;
                write!(out, " -> ")?;
                write_child(b, binary(b) && !matches!(**b, Formula::Impl(..)), out)
            }
            Formula::Ident(a, b) => {
                write_child(a, binary(a), out)?;
                write!(out, " == ")?;
                write_child(b, binary(b), out)
            }
        }
    }
}
