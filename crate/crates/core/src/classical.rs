//! Complete sets of alternatives and the classical `m/n` rule.
//!
//! "False sentence" is read semantically: unsatisfiable under every valuation.

use num_traits::Zero;
use thiserror::Error;

use crate::bfunc::BFunction;
use crate::logic::{is_satisfiable, is_tautology, Sentence, TruthTable};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassicalError {
    #[error("a complete set needs at least one member")]
    Empty,
    #[error("members do not form a complete set")]
    NotComplete,
    #[error("member {0} is neither favorable nor unfavorable")]
    MixedMember(usize),
    #[error("member {0} is unsatisfiable")]
    UnsatisfiableMember(usize),
}

/// Whether the members are pairwise incompatible and jointly exhaustive.
pub fn check_complete(members: &[Sentence]) -> Result<bool, ClassicalError> {
    if members.is_empty() {
        return Err(ClassicalError::Empty);
    }
    for (i, x) in members.iter().enumerate() {
        for y in &members[i + 1..] {
            if is_satisfiable(&Sentence::and(x.clone(), y.clone())) {
                return Ok(false);
            }
        }
    }
    let all = Sentence::disjoin(members.iter().cloned()).expect("nonempty");
    Ok(is_tautology(&all))
}

/// A validated complete set `B_1..B_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompleteSet {
    members: Vec<Sentence>,
}

impl CompleteSet {
    pub fn new(members: Vec<Sentence>) -> Result<Self, ClassicalError> {
        if !check_complete(&members)? {
            return Err(ClassicalError::NotComplete);
        }
        Ok(CompleteSet { members })
    }

    pub fn members(&self) -> &[Sentence] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Favorability {
    Favorable,
    Unfavorable,
    Neither,
}

/// `Favorable` when `b ∧ ¬a` is unsatisfiable, `Unfavorable` when `b ∧ a`
/// is. An unsatisfiable `b` meets both and is reported `Favorable`.
pub fn classify_favorability(b: &Sentence, a: &Sentence) -> Favorability {
    if !is_satisfiable(&Sentence::and(b.clone(), Sentence::not(a.clone()))) {
        Favorability::Favorable
    } else if !is_satisfiable(&Sentence::and(b.clone(), a.clone())) {
        Favorability::Unfavorable
    } else {
        Favorability::Neither
    }
}

/// Favorable count `m` and member count `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassicalOutcome {
    pub favorable: usize,
    pub total: usize,
}

impl ClassicalOutcome {
    pub fn probability(&self) -> Rational {
        Rational::new(self.favorable.into(), self.total.into())
    }
}

/// `P(a) = m/n` for equiprobable members.
pub fn classical_probability(
    a: &Sentence,
    cs: &CompleteSet,
) -> Result<ClassicalOutcome, ClassicalError> {
    let mut favorable = 0;
    for (i, b) in cs.members.iter().enumerate() {
        if !is_satisfiable(b) {
            return Err(ClassicalError::UnsatisfiableMember(i));
        }
        match classify_favorability(b, a) {
            Favorability::Favorable => favorable += 1,
            Favorability::Unfavorable => {}
            Favorability::Neither => return Err(ClassicalError::MixedMember(i)),
        }
    }
    Ok(ClassicalOutcome { favorable, total: cs.len() })
}

/// A measure over atoms `0..n` giving each member mass `1/|cs|`, spread
/// evenly over that member's satisfying minterms.
pub fn equiprobable_bfunction(cs: &CompleteSet, n: usize) -> Result<BFunction, ClassicalError> {
    let share = Rational::new(1.into(), cs.len().into());
    let mut mass = vec![Rational::zero(); 1 << n];
    for (i, b) in cs.members.iter().enumerate() {
        let t = TruthTable::build(b, n).map_err(|_| ClassicalError::NotComplete)?;
        let count = t.count_ones();
        if count == 0 {
            return Err(ClassicalError::UnsatisfiableMember(i));
        }
        let each = &share / Rational::from_integer(count.into());
        for w in t.ones() {
            mass[w] += &each;
        }
    }
    Ok(BFunction::new(n, mass).expect("members partition the minterms"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::Valuation;
    use crate::ratio;

    fn at(i: usize) -> Sentence {
        Sentence::atom(i)
    }

    fn minterms(n: usize) -> Vec<Sentence> {
        (0..1 << n)
            .map(|w| Valuation::from_minterm(n, w).minterm_sentence().unwrap())
            .collect()
    }

    #[test]
    fn completeness_examples() {
        assert_eq!(check_complete(&minterms(2)), Ok(true));
        assert_eq!(check_complete(&[at(0), Sentence::not(at(0))]), Ok(true));
        assert_eq!(check_complete(&[at(0), at(1)]), Ok(false));
        assert_eq!(check_complete(&[at(0)]), Ok(false));
        assert_eq!(check_complete(&[]), Err(ClassicalError::Empty));
    }

    #[test]
    fn favorability_examples() {
        let a = at(0);
        assert_eq!(classify_favorability(&Sentence::and(at(0), at(1)), &a), Favorability::Favorable);
        assert_eq!(
            classify_favorability(&Sentence::and(Sentence::not(at(0)), at(1)), &a),
            Favorability::Unfavorable
        );
        assert_eq!(classify_favorability(&at(1), &a), Favorability::Neither);
        let contradiction = Sentence::and(at(1), Sentence::not(at(1)));
        assert_eq!(classify_favorability(&contradiction, &a), Favorability::Favorable);
    }

    #[test]
    fn classical_examples() {
        let cs = CompleteSet::new(minterms(2)).unwrap();
        let out = classical_probability(&at(0), &cs).unwrap();
        assert_eq!((out.favorable, out.total), (2, 4));
        assert_eq!(out.probability(), ratio(1, 2));

        let cs = CompleteSet::new(vec![at(0), Sentence::not(at(0))]).unwrap();
        assert_eq!(classical_probability(&at(0), &cs).unwrap().probability(), ratio(1, 2));
    }

    #[test]
    fn die_model() {
        // face j: "D1..Dj-1 fail and Dj holds"; the sixth face is "D1..D5 all fail"
        let faces: Vec<Sentence> = (0..6)
            .map(|j| {
                Sentence::conjoin(
                    (0..j.min(5))
                        .map(|i| Sentence::not(at(i)))
                        .chain((j < 5).then(|| at(j))),
                )
                .unwrap()
            })
            .collect();
        let cs = CompleteSet::new(faces.clone()).unwrap();
        let event = Sentence::or(faces[0].clone(), faces[1].clone());
        let out = classical_probability(&event, &cs).unwrap();
        assert_eq!((out.favorable, out.total), (2, 6));
        assert_eq!(out.probability(), ratio(1, 3));
        // a set of six "exactly one face" conjunctions over six free atoms is not exhaustive
        let exactly_one: Vec<Sentence> = (0..6)
            .map(|j| {
                Sentence::conjoin((0..6).map(|i| if i == j { at(i) } else { Sentence::not(at(i)) }))
                    .unwrap()
            })
            .collect();
        assert_eq!(CompleteSet::new(exactly_one), Err(ClassicalError::NotComplete));
    }

    #[test]
    fn rejects_mixed_and_incomplete() {
        let cs = CompleteSet::new(vec![at(0), Sentence::not(at(0))]).unwrap();
        assert_eq!(classical_probability(&at(1), &cs), Err(ClassicalError::MixedMember(0)));
        assert_eq!(CompleteSet::new(vec![at(0), at(1)]), Err(ClassicalError::NotComplete));
        let contradiction = Sentence::and(at(0), Sentence::not(at(0)));
        let cs = CompleteSet::new(vec![at(0), Sentence::not(at(0)), contradiction]).unwrap();
        assert_eq!(classical_probability(&at(0), &cs), Err(ClassicalError::UnsatisfiableMember(2)));
    }

    #[test]
    fn equiprobable_measure_agrees() {
        let cs = CompleteSet::new(vec![
            Sentence::and(at(0), at(1)),
            Sentence::and(at(0), Sentence::not(at(1))),
            Sentence::not(at(0)),
        ])
        .unwrap();
        let bf = equiprobable_bfunction(&cs, 2).unwrap();
        let out = classical_probability(&at(0), &cs).unwrap();
        assert_eq!(out.probability(), ratio(2, 3));
        assert_eq!(bf.b_eval(&at(0)).unwrap(), out.probability());
    }
}
