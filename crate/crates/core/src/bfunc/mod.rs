//! B-functions: exact probability measures on the minterms of a finite basic
//! set, extended to every sentence by additivity.
//!
//! A measure on minterms satisfies `b(A∧B) + b(A∧¬B) = b(A)` and gives the
//! tautologies value 1, and conversely its values on the `2^n` minterm
//! conjunctions fix `b` on the whole propositional closure. All arithmetic is
//! exact.

mod dist;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::logic::{LogicError, Sentence, TruthTable, Valuation, MAX_ATOMS};
use crate::Rational;

pub use dist::{format_distribution, parse_distribution, DistError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BFuncError {
    #[error("expected {expected} masses for the basic set, got {found}")]
    WrongLength { expected: usize, found: usize },
    #[error("negative mass at minterm {0}")]
    NegativeMass(usize),
    #[error("masses sum to {0}, not 1")]
    SumNotOne(Rational),
    #[error("conditioning sentence has probability 0")]
    ZeroCondition,
    #[error("valuation covers {found} atoms, the basic set has {expected}")]
    WidthMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Logic(#[from] LogicError),
}

/// A probability measure over the `2^n` minterms of atoms `0..n`. Minterm
/// index `w` reads the valuation as a bitstring with atom 0 most significant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BFunction {
    n: usize,
    mass: Vec<Rational>,
}

/// Exact pairwise relation of two sentences under a B-function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairRelation {
    /// `b(A∧B) = 0`
    pub inconsistent: bool,
    /// `b(A∧B) = b(A)·b(B)`
    pub independent: bool,
}

impl BFunction {
    pub fn new(n: usize, mass: Vec<Rational>) -> Result<Self, BFuncError> {
        if n > MAX_ATOMS {
            return Err(LogicError::TooManyAtoms { found: n, limit: MAX_ATOMS }.into());
        }
        let expected = 1usize << n;
        if mass.len() != expected {
            return Err(BFuncError::WrongLength { expected, found: mass.len() });
        }
        if let Some(i) = mass.iter().position(|m| m.is_negative()) {
            return Err(BFuncError::NegativeMass(i));
        }
        let total: Rational = mass.iter().sum();
        if !total.is_one() {
            return Err(BFuncError::SumNotOne(total));
        }
        Ok(BFunction { n, mass })
    }

    pub fn uniform(n: usize) -> Result<Self, BFuncError> {
        if n > MAX_ATOMS {
            return Err(LogicError::TooManyAtoms { found: n, limit: MAX_ATOMS }.into());
        }
        let rows = 1usize << n;
        let each = Rational::new(1.into(), rows.into());
        Ok(BFunction { n, mass: vec![each; rows] })
    }

    /// The point mass at `v`: a Boolean function viewed as a B-function.
    pub fn from_valuation(v: &Valuation) -> Result<Self, BFuncError> {
        let n = v.len();
        if n > MAX_ATOMS {
            return Err(LogicError::TooManyAtoms { found: n, limit: MAX_ATOMS }.into());
        }
        let mut mass = vec![Rational::zero(); 1 << n];
        mass[v.minterm()] = Rational::one();
        Ok(BFunction { n, mass })
    }

    pub fn atoms(&self) -> usize {
        self.n
    }

    pub fn mass(&self, minterm: usize) -> &Rational {
        &self.mass[minterm]
    }

    pub fn masses(&self) -> &[Rational] {
        &self.mass
    }

    /// Minterms with positive mass, ascending.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.mass.iter().enumerate().filter(|(_, m)| !m.is_zero()).map(|(i, _)| i)
    }

    fn table(&self, s: &Sentence) -> Result<TruthTable, BFuncError> {
        Ok(TruthTable::build(s, self.n)?)
    }

    /// `b(s)`: the total mass of the minterms satisfying `s`.
    pub fn b_eval(&self, s: &Sentence) -> Result<Rational, BFuncError> {
        let t = self.table(s)?;
        Ok(t.ones().map(|w| &self.mass[w]).sum())
    }

    /// `b(b_s / c) = b(c ∧ b_s) / b(c)`.
    pub fn conditional_prob(&self, b: &Sentence, c: &Sentence) -> Result<Rational, BFuncError> {
        let bc = self.b_eval(c)?;
        if bc.is_zero() {
            return Err(BFuncError::ZeroCondition);
        }
        let joint = self.b_eval(&Sentence::and(c.clone(), b.clone()))?;
        Ok(joint / bc)
    }

    /// The B-function `A ↦ b(A / c)`: mass restricted to `c` and renormalized.
    pub fn condition(&self, c: &Sentence) -> Result<BFunction, BFuncError> {
        let t = self.table(c)?;
        let total: Rational = t.ones().map(|w| &self.mass[w]).sum();
        if total.is_zero() {
            return Err(BFuncError::ZeroCondition);
        }
        let mass = self
            .mass
            .iter()
            .enumerate()
            .map(|(w, m)| if t.get(w) { m / &total } else { Rational::zero() })
            .collect();
        Ok(BFunction { n: self.n, mass })
    }

    /// Whether every sentence with `b = 1` is true in `actual`.
    ///
    /// `b(A) = 1` exactly when the support lies inside `A`'s satisfying set,
    /// so the condition is equivalent to `actual` having positive mass; the
    /// disjunction of the support minterms is the witness otherwise.
    pub fn is_p_function(&self, actual: &Valuation) -> Result<bool, BFuncError> {
        if actual.len() != self.n {
            return Err(BFuncError::WidthMismatch { expected: self.n, found: actual.len() });
        }
        Ok(!self.mass[actual.minterm()].is_zero())
    }

    /// Disjunction of the support minterms, the strongest sentence with
    /// `b = 1`. `None` only for an empty basic set.
    pub fn support_sentence(&self) -> Option<Sentence> {
        Sentence::disjoin(
            self.support()
                .filter_map(|w| Valuation::from_minterm(self.n, w).minterm_sentence()),
        )
    }

    pub fn classify_pair(&self, a: &Sentence, b: &Sentence) -> Result<PairRelation, BFuncError> {
        let joint = self.b_eval(&Sentence::and(a.clone(), b.clone()))?;
        let product = self.b_eval(a)? * self.b_eval(b)?;
        Ok(PairRelation { inconsistent: joint.is_zero(), independent: joint == product })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::eval;
    use crate::ratio;

    fn at(i: usize) -> Sentence {
        Sentence::atom(i)
    }

    fn uniform2() -> BFunction {
        BFunction::uniform(2).unwrap()
    }

    fn skewed() -> BFunction {
        BFunction::new(2, vec![ratio(1, 2), ratio(0, 1), ratio(1, 3), ratio(1, 6)]).unwrap()
    }

    #[test]
    fn b_eval_examples() {
        let u = uniform2();
        assert_eq!(u.b_eval(&at(0)).unwrap(), ratio(1, 2));
        assert_eq!(u.b_eval(&Sentence::or(at(0), at(1))).unwrap(), ratio(3, 4));
        let taut = Sentence::or(at(0), Sentence::not(at(0)));
        assert_eq!(u.b_eval(&taut).unwrap(), ratio(1, 1));
        assert_eq!(skewed().b_eval(&taut).unwrap(), ratio(1, 1));
        assert!(matches!(
            u.b_eval(&at(2)),
            Err(BFuncError::Logic(LogicError::AtomOutOfRange { atom: 2, n: 2 }))
        ));
    }

    #[test]
    fn point_mass_matches_eval() {
        for bits in ["11", "10", "01", "00"] {
            let v = Valuation::parse(bits).unwrap();
            let bf = BFunction::from_valuation(&v).unwrap();
            for s in [Sentence::and(at(0), at(1)), Sentence::not(at(0)), Sentence::or(at(0), at(1))]
            {
                let expected = if eval(&s, &v).unwrap() { 1 } else { 0 };
                assert_eq!(bf.b_eval(&s).unwrap(), ratio(expected, 1));
            }
        }
    }

    #[test]
    fn conditional_examples() {
        let u = uniform2();
        assert_eq!(u.conditional_prob(&at(1), &at(1)).unwrap(), ratio(1, 1));
        assert_eq!(u.conditional_prob(&at(0), &at(1)).unwrap(), ratio(1, 2));
        let contradiction = Sentence::and(at(0), Sentence::not(at(0)));
        assert_eq!(
            u.conditional_prob(&at(0), &contradiction),
            Err(BFuncError::ZeroCondition)
        );
    }

    #[test]
    fn condition_examples() {
        let u = uniform2();
        let on_a = u.condition(&at(0)).unwrap();
        assert_eq!(on_a.b_eval(&at(0)).unwrap(), ratio(1, 1));
        let on_or = u.condition(&Sentence::or(at(0), at(1))).unwrap();
        assert_eq!(on_or.b_eval(&Sentence::and(at(0), at(1))).unwrap(), ratio(1, 3));
        let taut = Sentence::or(at(0), Sentence::not(at(0)));
        assert_eq!(skewed().condition(&taut).unwrap(), skewed());
        assert_eq!(
            u.condition(&Sentence::and(at(0), Sentence::not(at(0)))),
            Err(BFuncError::ZeroCondition)
        );
    }

    #[test]
    fn p_function_examples() {
        let actual = Valuation::parse("01").unwrap();
        let point = BFunction::from_valuation(&actual).unwrap();
        assert!(point.is_p_function(&actual).unwrap());
        assert!(uniform2().is_p_function(&actual).unwrap());
        let s = skewed();
        assert!(!s.is_p_function(&actual).unwrap());
        // the witness has probability 1 but is false in the actual world
        let witness = s.support_sentence().unwrap();
        assert_eq!(s.b_eval(&witness).unwrap(), ratio(1, 1));
        assert!(!eval(&witness, &actual).unwrap());
        assert!(matches!(
            s.is_p_function(&Valuation::parse("1").unwrap()),
            Err(BFuncError::WidthMismatch { .. })
        ));
    }

    #[test]
    fn pair_examples() {
        let a = at(0);
        let rel = skewed().classify_pair(&a, &Sentence::not(a.clone())).unwrap();
        assert!(rel.inconsistent);
        let rel = uniform2().classify_pair(&at(0), &at(1)).unwrap();
        assert!(rel.independent && !rel.inconsistent);
        let v = Valuation::parse("10").unwrap();
        let rel = BFunction::from_valuation(&v).unwrap().classify_pair(&a, &a).unwrap();
        assert!(rel.independent);
        assert!(!skewed().classify_pair(&at(0), &at(1)).unwrap().independent);
    }

    #[test]
    fn constructor_validation() {
        assert!(matches!(
            BFunction::new(1, vec![ratio(1, 2)]),
            Err(BFuncError::WrongLength { expected: 2, found: 1 })
        ));
        assert_eq!(
            BFunction::new(1, vec![ratio(3, 2), ratio(-1, 2)]),
            Err(BFuncError::NegativeMass(1))
        );
        assert_eq!(
            BFunction::new(1, vec![ratio(1, 2), ratio(1, 4)]),
            Err(BFuncError::SumNotOne(ratio(3, 4)))
        );
    }
}
