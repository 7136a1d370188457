//! Probability valuations over propositional logic.
//!
//! * [`logic`]: sentences over `¬`/`∧`, truth tables, the A1–A3 Hilbert
//!   system with a deduction checker and a proof synthesizer.
//! * [`bfunc`]: exact-rational B-functions (measures on minterms), conditional
//!   probability and pairwise relations.
//! * [`bernoulli`]: test series, t/T-disjunctions, Bernoulli probabilities, the
//!   large-number bound and a seeded frequency simulator.
//! * [`classical`]: complete sets of alternatives and the `m/n` rule.
//! * [`qnum`]: density-filter frequencies and Q-numbers with tri-state verdicts.
//! * [`syntax`]: concrete formula syntax and the proof text format.

pub mod bernoulli;
pub mod bfunc;
pub mod classical;
pub mod decimal;
pub mod logic;
pub mod qnum;
pub mod syntax;

/// Exact rational used throughout.
pub type Rational = num_rational::BigRational;

/// Parses `p/q` or an integer into a [`Rational`].
pub fn parse_rational(text: &str) -> Option<Rational> {
    use num_bigint::BigInt;
    let text = text.trim();
    let (n, d) = match text.split_once('/') {
        Some((n, d)) => (n.trim().parse::<BigInt>().ok()?, d.trim().parse::<BigInt>().ok()?),
        None => (text.parse::<BigInt>().ok()?, BigInt::from(1)),
    };
    if d == BigInt::from(0) {
        return None;
    }
    Some(Rational::new(n, d))
}

/// Shorthand for small literal rationals.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}
