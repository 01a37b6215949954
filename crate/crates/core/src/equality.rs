//! Labels and the merge-find store for equalities and disequalities.
//!
//! Equalities are kept as a partition of the registered labels, so symmetry
//! and transitivity hold by construction. The store refuses any assertion
//! that would merge a plus label with a minus label or contradict a recorded
//! disequality; a refused assertion leaves the store unchanged.

use std::collections::HashMap;
use std::fmt;
use thiserror::Error;

/// Whether a label stands for a designated or a non-designated denotation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Polarity {
    Plus,
    Minus,
}

impl Polarity {
    pub fn sign(self) -> char {
        match self {
            Polarity::Plus => '+',
            Polarity::Minus => '-',
        }
    }
}

/// A branch-unique label with a fixed polarity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label {
    pub id: u32,
    pub polarity: Polarity,
}

impl Label {
    pub fn plus(id: u32) -> Label {
        Label {
            id,
            polarity: Polarity::Plus,
        }
    }

    pub fn minus(id: u32) -> Label {
        Label {
            id,
            polarity: Polarity::Minus,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "{}{}", self.id, self.polarity.sign())
    }
}

/// Why an assertion was refused.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClashKind {
    /// The assertion would put a plus and a minus label in one class.
    Polarity,
    /// The assertion contradicts a recorded disequality (or equality).
    Disequality,
}

/// Result of asserting an equality or disequality.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AssertOutcome {
    /// The assertion is compatible; `changed` is false when it was already
    /// derivable and the store was left as it was.
    Consistent { changed: bool },
    /// The assertion closes the branch; the store is unchanged.
    Contradiction(ClashKind),
}

impl AssertOutcome {
    pub fn is_contradiction(self) -> bool {
        matches!(self, AssertOutcome::Contradiction(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("label {0} is not registered in the store")]
pub struct UnregisteredLabel(pub Label);

/// Merge-find partition of labels plus a set of disequalities.
#[derive(Debug, Clone, Default)]
pub struct EqualityStore {
    labels: Vec<Label>,
    slot_of: HashMap<Label, usize>,
    parent: Vec<usize>,
    size: Vec<u32>,
    // Valid at root slots only.
    has_plus: Vec<bool>,
    has_minus: Vec<bool>,
    diseqs: Vec<(usize, usize)>,
}

impl EqualityStore {
    pub fn new() -> EqualityStore {
        EqualityStore::default()
    }

    /// Makes a label known to the store. Idempotent.
    pub fn register(&mut self, label: Label) {
        if self.slot_of.contains_key(&label) {
            return;
        }
        let slot = self.labels.len();
        self.labels.push(label);
        self.slot_of.insert(label, slot);
        self.parent.push(slot);
        self.size.push(1);
        self.has_plus.push(label.polarity == Polarity::Plus);
        self.has_minus.push(label.polarity == Polarity::Minus);
    }

    pub fn is_registered(&self, label: Label) -> bool {
        self.slot_of.contains_key(&label)
    }

    /// Registered labels in registration order.
    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    fn slot(&self, label: Label) -> Result<usize, UnregisteredLabel> {
        self.slot_of
            .get(&label)
            .copied()
            .ok_or(UnregisteredLabel(label))
    }

    fn find(&self, mut slot: usize) -> usize {
        while self.parent[slot] != slot {
            slot = self.parent[slot];
        }
        slot
    }

    /// True when the equality of the two labels is derivable.
    pub fn same_class(&self, w: Label, v: Label) -> Result<bool, UnregisteredLabel> {
        Ok(self.find(self.slot(w)?) == self.find(self.slot(v)?))
    }

    /// Representative label of `label`'s class: the registered member with the
    /// lowest id.
    pub fn class_representative(&self, label: Label) -> Result<Label, UnregisteredLabel> {
        let root = self.find(self.slot(label)?);
        let mut best: Option<Label> = None;
        for (slot, &candidate) in self.labels.iter().enumerate() {
            if self.find(slot) == root && best.is_none_or(|b| candidate.id < b.id) {
                best = Some(candidate);
            }
        }
        Ok(best.expect("class has at least one member"))
    }

    fn diseq_between(&self, ra: usize, rb: usize) -> bool {
        self.diseqs.iter().any(|&(x, y)| {
            let rx = self.find(x);
            let ry = self.find(y);
            (rx == ra && ry == rb) || (rx == rb && ry == ra)
        })
    }

    /// Merges the classes of `w` and `v` unless doing so would mix polarities
    /// or contradict a recorded disequality.
    pub fn assert_equal(&mut self, w: Label, v: Label) -> Result<AssertOutcome, UnregisteredLabel> {
        let ra = self.find(self.slot(w)?);
        let rb = self.find(self.slot(v)?);
        if ra == rb {
            return Ok(AssertOutcome::Consistent { changed: false });
        }
        let plus = self.has_plus[ra] || self.has_plus[rb];
        let minus = self.has_minus[ra] || self.has_minus[rb];
        if plus && minus {
            return Ok(AssertOutcome::Contradiction(ClashKind::Polarity));
        }
        if self.diseq_between(ra, rb) {
            return Ok(AssertOutcome::Contradiction(ClashKind::Disequality));
        }
        let (big, small) = if self.size[ra] >= self.size[rb] {
            (ra, rb)
        } else {
            (rb, ra)
        };
        self.parent[small] = big;
        self.size[big] += self.size[small];
        self.has_plus[big] = plus;
        self.has_minus[big] = minus;
        Ok(AssertOutcome::Consistent { changed: true })
    }

    /// Records that `w` and `v` denote distinct elements. The record is
    /// symmetric.
    pub fn assert_unequal(
        &mut self,
        w: Label,
        v: Label,
    ) -> Result<AssertOutcome, UnregisteredLabel> {
        let ra = self.find(self.slot(w)?);
        let rb = self.find(self.slot(v)?);
        if ra == rb {
            return Ok(AssertOutcome::Contradiction(ClashKind::Disequality));
        }
        if self.diseq_between(ra, rb) {
            return Ok(AssertOutcome::Consistent { changed: false });
        }
        self.diseqs.push((self.slot(w)?, self.slot(v)?));
        Ok(AssertOutcome::Consistent { changed: true })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn registered(labels: &[Label]) -> EqualityStore {
        let mut store = EqualityStore::new();
        for &l in labels {
            store.register(l);
        }
        store
    }

    #[test]
    fn plus_minus_merge_is_a_polarity_clash() {
        let w = Label::plus(0);
        let v = Label::minus(1);
        let mut store = registered(&[w, v]);
        assert_eq!(
            store.assert_equal(w, v).unwrap(),
            AssertOutcome::Contradiction(ClashKind::Polarity)
        );
        // Refused assertions leave the store unchanged.
        assert!(!store.same_class(w, v).unwrap());
    }

    #[test]
    fn reflexive_equality_is_a_no_op() {
        let w = Label::plus(0);
        let mut store = registered(&[w]);
        assert_eq!(
            store.assert_equal(w, w).unwrap(),
            AssertOutcome::Consistent { changed: false }
        );
    }

    #[test]
    fn equality_against_recorded_disequality_clashes() {
        let w = Label::plus(0);
        let v = Label::plus(1);
        let mut store = registered(&[w, v]);
        assert!(!store.assert_unequal(w, v).unwrap().is_contradiction());
        assert_eq!(
            store.assert_equal(w, v).unwrap(),
            AssertOutcome::Contradiction(ClashKind::Disequality)
        );
    }

    #[test]
    fn disequality_after_equality_clashes() {
        let w = Label::minus(0);
        let v = Label::minus(1);
        let mut store = registered(&[w, v]);
        assert!(!store.assert_equal(w, v).unwrap().is_contradiction());
        assert_eq!(
            store.assert_unequal(w, v).unwrap(),
            AssertOutcome::Contradiction(ClashKind::Disequality)
        );
    }

    #[test]
    fn self_disequality_clashes() {
        let w = Label::plus(3);
        let mut store = registered(&[w]);
        assert!(store.assert_unequal(w, w).unwrap().is_contradiction());
    }

    #[test]
    fn same_class_is_transitively_closed() {
        let w = Label::plus(0);
        let v = Label::plus(1);
        let u = Label::plus(2);
        let mut store = registered(&[w, v, u]);
        store.assert_equal(w, v).unwrap();
        store.assert_equal(v, u).unwrap();
        assert!(store.same_class(w, u).unwrap());
        assert!(store.same_class(u, w).unwrap());
        assert!(store.same_class(w, w).unwrap());
    }

    #[test]
    fn fresh_labels_are_not_equal() {
        let w = Label::plus(0);
        let v = Label::plus(1);
        let store = registered(&[w, v]);
        assert!(!store.same_class(w, v).unwrap());
    }

    #[test]
    fn disequality_is_symmetric() {
        let w = Label::plus(0);
        let v = Label::plus(1);
        let mut store = registered(&[w, v]);
        store.assert_unequal(w, v).unwrap();
        assert!(store.assert_equal(v, w).unwrap().is_contradiction());
        assert_eq!(
            store.assert_unequal(v, w).unwrap(),
            AssertOutcome::Consistent { changed: false }
        );
    }

    #[test]
    fn disequality_respects_classes() {
        // w = v, then u != v: u = w must clash through the class of v.
        let w = Label::plus(0);
        let v = Label::plus(1);
        let u = Label::plus(2);
        let mut store = registered(&[w, v, u]);
        store.assert_equal(w, v).unwrap();
        store.assert_unequal(u, v).unwrap();
        assert!(store.assert_equal(u, w).unwrap().is_contradiction());
    }

    #[test]
    fn unregistered_labels_are_usage_errors() {
        let w = Label::plus(0);
        let ghost = Label::minus(9);
        let mut store = registered(&[w]);
        assert_eq!(store.assert_equal(w, ghost), Err(UnregisteredLabel(ghost)));
        assert_eq!(store.same_class(ghost, w), Err(UnregisteredLabel(ghost)));
    }

    #[test]
    fn representative_is_lowest_id() {
        let a = Label::plus(5);
        let b = Label::plus(2);
        let c = Label::plus(7);
        let mut store = registered(&[a, b, c]);
        store.assert_equal(a, c).unwrap();
        store.assert_equal(c, b).unwrap();
        assert_eq!(store.class_representative(c).unwrap(), b);
    }
}
