//! Frequencies of index sets, the density-one filter, and Q-numbers: rational
//! sequences compared modulo agreement on a density-one set.
//!
//! Membership in the filter is undecidable in general. Finite, cofinite and
//! eventually periodic index sets, and sequences given by periodic rational
//! functions of `n`, are decided exactly; anything else yields
//! [`Verdict::Unknown`] together with the prefix frequency observed up to a
//! horizon.

mod index_set;
mod number;
mod poly;

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

use crate::Rational;

pub use index_set::{
    filter_membership, filter_membership_with, part_frequency, IndexSet, Predicate, SetKind,
};
pub use number::{
    agreement_frequency, agreement_set, dominance_set, infinitely_close, q_classify, q_equal, q_less, q_lift, LiftOp,
    QClass, QNumber,
};
pub use poly::{Poly, RatFunc};

/// Prefix length used for evidence when no horizon is given.
pub const DEFAULT_HORIZON: u64 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QError {
    #[error("indices start at 1")]
    ZeroIndex,
    #[error("a period must be nonempty")]
    EmptyPeriod,
    #[error("reciprocal needs 0 < |x|; verdict was {0}")]
    ReciprocalUndefined(Verdict),
    #[error("{op:?} takes {expected} arguments, got {found}")]
    Arity { op: LiftOp, expected: usize, found: usize },
}

/// Frequency of an index set over `1..=horizon`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Evidence {
    pub horizon: u64,
    pub frequency: Rational,
}

/// Tri-state answer: `Yes`/`No` only when structure settles the question.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Yes,
    No,
    Unknown(Evidence),
}

impl Verdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, Verdict::Yes)
    }

    pub fn is_no(&self) -> bool {
        matches!(self, Verdict::No)
    }
}

impl From<bool> for Verdict {
    fn from(b: bool) -> Self {
        if b {
            Verdict::Yes
        } else {
            Verdict::No
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Yes => write!(f, "yes"),
            Verdict::No => write!(f, "no"),
            Verdict::Unknown(e) => write!(f, "unknown({}@horizon={})", e.frequency, e.horizon),
        }
    }
}

/// Limit of a sequence in the extended rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Limit {
    Finite(Rational),
    PosInfinity,
    NegInfinity,
}

impl Limit {
    fn rank(&self) -> i8 {
        match self {
            Limit::NegInfinity => -1,
            Limit::Finite(_) => 0,
            Limit::PosInfinity => 1,
        }
    }

    pub fn neg(&self) -> Limit {
        match self {
            Limit::Finite(a) => Limit::Finite(-a),
            Limit::PosInfinity => Limit::NegInfinity,
            Limit::NegInfinity => Limit::PosInfinity,
        }
    }

    pub fn abs(&self) -> Limit {
        match self {
            Limit::Finite(a) => Limit::Finite(num_traits::Signed::abs(a)),
            _ => Limit::PosInfinity,
        }
    }

    /// `None` for `∞ - ∞`.
    pub fn add(&self, other: &Limit) -> Option<Limit> {
        match (self, other) {
            (Limit::Finite(a), Limit::Finite(b)) => Some(Limit::Finite(a + b)),
            (Limit::Finite(_), inf) | (inf, Limit::Finite(_)) => Some(inf.clone()),
            (a, b) if a == b => Some(a.clone()),
            _ => None,
        }
    }

    /// `None` for `0 · ∞`.
    pub fn mul(&self, other: &Limit) -> Option<Limit> {
        use num_traits::{Signed, Zero};
        match (self, other) {
            (Limit::Finite(a), Limit::Finite(b)) => Some(Limit::Finite(a * b)),
            (Limit::Finite(a), inf) | (inf, Limit::Finite(a)) => {
                if a.is_zero() {
                    None
                } else if a.is_positive() {
                    Some(inf.clone())
                } else {
                    Some(inf.neg())
                }
            }
            (a, b) if a == b => Some(Limit::PosInfinity),
            _ => Some(Limit::NegInfinity),
        }
    }
}

impl PartialOrd for Limit {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (Limit::Finite(a), Limit::Finite(b)) => a.partial_cmp(b),
            _ => self.rank().partial_cmp(&other.rank()),
        }
    }
}

impl fmt::Display for Limit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Limit::Finite(a) => write!(f, "{a}"),
            Limit::PosInfinity => write!(f, "+inf"),
            Limit::NegInfinity => write!(f, "-inf"),
        }
    }
}
