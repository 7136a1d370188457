use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

/// Index of an atom in the basic set. Ids are dense: a basic set of size
/// `n` uses `0..n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AtomId(pub u32);

impl AtomId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<usize> for AtomId {
    fn from(i: usize) -> Self {
        AtomId(u32::try_from(i).expect("atom index fits in u32"))
    }
}

/// A sentence of the propositional closure, built from atoms with negation
/// and conjunction only. Disjunction and implication are constructor sugar.
///
/// Children are shared through `Arc`, so cloning is cheap and sentences can
/// cross threads.
#[derive(Clone)]
pub enum Sentence {
    Atom(AtomId),
    Not(Arc<Sentence>),
    And(Arc<Sentence>, Arc<Sentence>),
}

impl Sentence {
    pub fn atom(id: impl Into<AtomId>) -> Self {
        Sentence::Atom(id.into())
    }

    pub fn not(a: Sentence) -> Self {
        Sentence::Not(Arc::new(a))
    }

    pub fn and(a: Sentence, b: Sentence) -> Self {
        Sentence::And(Arc::new(a), Arc::new(b))
    }

    /// `a ∨ b`, stored as `¬(¬a ∧ ¬b)`.
    pub fn or(a: Sentence, b: Sentence) -> Self {
        Sentence::not(Sentence::and(Sentence::not(a), Sentence::not(b)))
    }

    /// `a → b`, stored as `¬(a ∧ ¬b)`.
    pub fn implies(a: Sentence, b: Sentence) -> Self {
        Sentence::not(Sentence::and(a, Sentence::not(b)))
    }

    /// Left fold of `∧`; `None` for an empty iterator.
    pub fn conjoin<I: IntoIterator<Item = Sentence>>(items: I) -> Option<Sentence> {
        items.into_iter().reduce(Sentence::and)
    }

    /// Left fold of `∨`; `None` for an empty iterator.
    pub fn disjoin<I: IntoIterator<Item = Sentence>>(items: I) -> Option<Sentence> {
        items.into_iter().reduce(Sentence::or)
    }

    /// Recognizes `¬(x ∧ ¬y)` and returns `(x, y)`.
    pub fn as_implication(&self) -> Option<(&Sentence, &Sentence)> {
        match self {
            Sentence::Not(inner) => match &**inner {
                Sentence::And(x, rhs) => match &**rhs {
                    Sentence::Not(y) => Some((x, y)),
                    _ => None,
                },
                _ => None,
            },
            _ => None,
        }
    }

    /// Recognizes `¬(¬x ∧ ¬y)` and returns `(x, y)`.
    pub fn as_disjunction(&self) -> Option<(&Sentence, &Sentence)> {
        let (lhs, y) = self.as_implication()?;
        match lhs {
            Sentence::Not(x) => Some((x, y)),
            _ => None,
        }
    }

    pub fn as_negation(&self) -> Option<&Sentence> {
        match self {
            Sentence::Not(inner) => Some(inner),
            _ => None,
        }
    }

    /// Distinct atoms occurring in the sentence, in increasing id order.
    pub fn atoms(&self) -> BTreeSet<AtomId> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<AtomId>) {
        match self {
            Sentence::Atom(a) => {
                out.insert(*a);
            }
            Sentence::Not(x) => x.collect_atoms(out),
            Sentence::And(x, y) => {
                x.collect_atoms(out);
                y.collect_atoms(out);
            }
        }
    }

    /// Largest atom id plus one, or 0 for sentences without atoms (none exist,
    /// but the bound is total).
    pub fn atom_bound(&self) -> usize {
        self.atoms().last().map_or(0, |a| a.index() + 1)
    }

    /// Number of nodes on the longest root-to-leaf path; an atom has depth 1.
    pub fn depth(&self) -> usize {
        match self {
            Sentence::Atom(_) => 1,
            Sentence::Not(x) => 1 + x.depth(),
            Sentence::And(x, y) => 1 + x.depth().max(y.depth()),
        }
    }

    /// Total node count.
    pub fn size(&self) -> usize {
        match self {
            Sentence::Atom(_) => 1,
            Sentence::Not(x) => 1 + x.size(),
            Sentence::And(x, y) => 1 + x.size() + y.size(),
        }
    }
}

impl PartialEq for Sentence {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Sentence::Atom(a), Sentence::Atom(b)) => a == b,
            (Sentence::Not(a), Sentence::Not(b)) => Arc::ptr_eq(a, b) || a == b,
            (Sentence::And(a1, a2), Sentence::And(b1, b2)) => {
                (Arc::ptr_eq(a1, b1) || a1 == b1) && (Arc::ptr_eq(a2, b2) || a2 == b2)
            }
            _ => false,
        }
    }
}

impl Eq for Sentence {}

impl Hash for Sentence {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            Sentence::Atom(a) => {
                0u8.hash(state);
                a.hash(state);
            }
            Sentence::Not(x) => {
                1u8.hash(state);
                x.hash(state);
            }
            Sentence::And(x, y) => {
                2u8.hash(state);
                x.hash(state);
                y.hash(state);
            }
        }
    }
}

/// Debug output uses the primitive connectives with generic atom names, which
/// is what you want when a structural assertion fails.
impl fmt::Debug for Sentence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sentence::Atom(a) => write!(f, "p{}", a.0),
            Sentence::Not(x) => write!(f, "¬{:?}", x),
            Sentence::And(x, y) => write!(f, "({:?} ∧ {:?})", x, y),
        }
    }
}
