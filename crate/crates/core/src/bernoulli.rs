//! Independent test series: the `[st](r,k)` conjunctions, t- and
//! T-disjunctions, exact Bernoulli probabilities, the large-number bound and a
//! seeded frequency simulator.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::bfunc::BFunction;
use crate::logic::{AtomId, Sentence, MAX_ATOMS};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BernoulliError {
    #[error("probability {0} is outside [0, 1]")]
    ProbabilityOutOfRange(Rational),
    #[error("a series needs at least one test")]
    NoTests,
    #[error("tests must be distinct atoms")]
    DuplicateAtom(AtomId),
    #[error("range r={r}, k={k} is invalid for {tests} tests")]
    SeriesOutOfRange { r: usize, k: usize, tests: usize },
    #[error("empty range: k={k} > l={l}")]
    EmptyRange { k: BigInt, l: BigInt },
    #[error("the product measure needs the tests to be the atoms 0..r")]
    NotAtomRealization,
    #[error("{0} tests exceed the {MAX_ATOMS}-atom limit")]
    TooManyTests(usize),
    #[error("epsilon must be positive")]
    NonPositiveEpsilon,
    #[error("probability denominator does not fit in 64 bits")]
    PrecisionTooHigh,
}

/// `st(1..r)` together with the common success probability `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TestSequence {
    tests: Vec<Sentence>,
    p: Rational,
}

fn check_probability(p: &Rational) -> Result<(), BernoulliError> {
    if p.is_negative() || *p > Rational::one() {
        return Err(BernoulliError::ProbabilityOutOfRange(p.clone()));
    }
    Ok(())
}

impl TestSequence {
    /// Tests realized as the fresh atoms `0..r`.
    pub fn atoms(r: usize, p: Rational) -> Result<Self, BernoulliError> {
        Self::over_atoms((0..r).map(AtomId::from).collect(), p)
    }

    pub fn over_atoms(atoms: Vec<AtomId>, p: Rational) -> Result<Self, BernoulliError> {
        let mut seen = std::collections::BTreeSet::new();
        for a in &atoms {
            if !seen.insert(*a) {
                return Err(BernoulliError::DuplicateAtom(*a));
            }
        }
        Self::from_sentences(atoms.into_iter().map(Sentence::atom).collect(), p)
    }

    /// Arbitrary sentence-valued tests. Series and disjunctions are purely
    /// syntactic and accept these; the product measure does not.
    pub fn from_sentences(tests: Vec<Sentence>, p: Rational) -> Result<Self, BernoulliError> {
        if tests.is_empty() {
            return Err(BernoulliError::NoTests);
        }
        check_probability(&p)?;
        Ok(TestSequence { tests, p })
    }

    pub fn len(&self) -> usize {
        self.tests.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tests.is_empty()
    }

    pub fn p(&self) -> &Rational {
        &self.p
    }

    pub fn tests(&self) -> &[Sentence] {
        &self.tests
    }

    fn check_series(&self, r: usize, k: usize) -> Result<(), BernoulliError> {
        if r == 0 || r > self.tests.len() || k > r {
            return Err(BernoulliError::SeriesOutOfRange { r, k, tests: self.tests.len() });
        }
        Ok(())
    }
}

/// Successive `k`-subsets of `0..r` in lexicographic order.
fn next_combination(positions: &mut [usize], r: usize) -> bool {
    let k = positions.len();
    for i in (0..k).rev() {
        if positions[i] < r - k + i {
            positions[i] += 1;
            for j in i + 1..k {
                positions[j] = positions[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// All members of `[st](r,k)`: left-nested conjunctions of `st(1..r)` with
/// exactly `k` positive tests, ordered lexicographically by the positions of
/// the positive tests.
pub fn enumerate_series(
    ts: &TestSequence,
    r: usize,
    k: usize,
) -> Result<Vec<Sentence>, BernoulliError> {
    ts.check_series(r, k)?;
    let mut out = Vec::new();
    let mut positions: Vec<usize> = (0..k).collect();
    loop {
        let mut positive = positions.iter().peekable();
        let literals = (0..r).map(|n| {
            if positive.next_if(|&&p| p == n).is_some() {
                ts.tests[n].clone()
            } else {
                Sentence::not(ts.tests[n].clone())
            }
        });
        out.push(Sentence::conjoin(literals).expect("r >= 1"));
        if !next_combination(&mut positions, r) {
            break;
        }
    }
    Ok(out)
}

/// `t[st](r,k)`: left-fold disjunction of [`enumerate_series`].
pub fn t_disjunction(ts: &TestSequence, r: usize, k: usize) -> Result<Sentence, BernoulliError> {
    let series = enumerate_series(ts, r, k)?;
    Ok(Sentence::disjoin(series).expect("C(r,k) >= 1"))
}

/// Integer range `[k, l]` derived from rational bounds by `k-1 < a <= k` and
/// `l <= b < l+1`, then clamped to `[0, r]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RangeSpec {
    pub a: Rational,
    pub b: Rational,
    pub k: usize,
    pub l: usize,
}

impl RangeSpec {
    pub fn new(r: usize, a: Rational, b: Rational) -> Result<Self, BernoulliError> {
        let k = a.ceil().to_integer();
        let l = b.floor().to_integer();
        let top = BigInt::from(r);
        let k_clamped = k.clone().max(BigInt::zero());
        let l_clamped = l.clone().min(top);
        if k_clamped > l_clamped {
            return Err(BernoulliError::EmptyRange { k, l });
        }
        let k = k_clamped.to_usize().expect("within [0, r]");
        let l = l_clamped.to_usize().expect("within [0, r]");
        Ok(RangeSpec { a, b, k, l })
    }
}

/// `T[st](r,a,b)`: the disjunction `t(r,k) ∨ t(r,k+1) ∨ … ∨ t(r,l)`.
pub fn t_range(
    ts: &TestSequence,
    r: usize,
    a: &Rational,
    b: &Rational,
) -> Result<Sentence, BernoulliError> {
    ts.check_series(r, 0)?;
    let range = RangeSpec::new(r, a.clone(), b.clone())?;
    let mut acc = t_disjunction(ts, r, range.k)?;
    for j in range.k + 1..=range.l {
        acc = Sentence::or(acc, t_disjunction(ts, r, j)?);
    }
    Ok(acc)
}

/// The measure making `st(1..r)` independent with `b(st(n)) = p`.
pub fn product_bfunction(ts: &TestSequence) -> Result<BFunction, BernoulliError> {
    let r = ts.len();
    if r > MAX_ATOMS {
        return Err(BernoulliError::TooManyTests(r));
    }
    // test n must be atom n for minterm bits to line up with the tests
    let aligned = ts
        .tests
        .iter()
        .enumerate()
        .all(|(n, t)| matches!(t, Sentence::Atom(id) if id.index() == n));
    if !aligned {
        return Err(BernoulliError::NotAtomRealization);
    }
    let p = &ts.p;
    let q = Rational::one() - p;
    let p_pow: Vec<Rational> = (0..=r).map(|i| p.pow(i as i32)).collect();
    let q_pow: Vec<Rational> = (0..=r).map(|i| (&q).pow(i as i32)).collect();
    let mass = (0..1usize << r)
        .map(|w| {
            let ones = w.count_ones() as usize;
            &p_pow[ones] * &q_pow[r - ones]
        })
        .collect();
    Ok(BFunction::new(r, mass).expect("product of marginals is a measure"))
}

fn binomial_sum(r: usize, k: usize, l: usize, p: &Rational) -> Rational {
    let pn = p.numer().clone();
    let pd = p.denom().clone();
    let qn = &pd - &pn;
    let power = |base: &BigInt, e: usize| -> BigInt { Pow::pow(base, e as u32) };
    let mut binom = BigInt::one();
    for j in 0..k {
        binom = binom * (r - j) / (j + 1);
    }
    let mut p_part = power(&pn, k);
    let mut q_part = power(&qn, r - k);
    let mut total = BigInt::zero();
    for j in k..=l {
        total += &binom * &p_part * &q_part;
        if j == l {
            break;
        }
        binom = binom * (r - j) / (j + 1);
        p_part *= &pn;
        q_part = if qn.is_zero() { power(&qn, r - j - 1) } else { q_part.div_floor(&qn) };
    }
    Rational::new(total, power(&pd, r))
}

/// `Σ_{a ≤ k ≤ b} C(r,k) p^k (1-p)^(r-k)` over the derived integer range;
/// 0 when the range is empty.
pub fn range_prob(
    r: usize,
    a: &Rational,
    b: &Rational,
    p: &Rational,
) -> Result<Rational, BernoulliError> {
    if r == 0 {
        return Err(BernoulliError::NoTests);
    }
    check_probability(p)?;
    match RangeSpec::new(r, a.clone(), b.clone()) {
        Ok(range) => Ok(binomial_sum(r, range.k, range.l, p)),
        Err(BernoulliError::EmptyRange { .. }) => Ok(Rational::zero()),
        Err(e) => Err(e),
    }
}

/// Probability of exactly `k` successes in `r` tests.
pub fn point_prob(r: usize, k: usize, p: &Rational) -> Result<Rational, BernoulliError> {
    let k = Rational::from_integer(k.into());
    range_prob(r, &k, &k, p)
}

/// `1 - p(1-p)/(r·ε²)`, unclamped (it can be negative).
pub fn lln_bound(r: usize, p: &Rational, eps: &Rational) -> Result<Rational, BernoulliError> {
    if r == 0 {
        return Err(BernoulliError::NoTests);
    }
    check_probability(p)?;
    if !eps.is_positive() {
        return Err(BernoulliError::NonPositiveEpsilon);
    }
    let variance = p * (Rational::one() - p);
    let scale = Rational::from_integer(r.into()) * eps * eps;
    Ok(Rational::one() - variance / scale)
}

/// Draws one world per trial from the product measure and reports `k/r`, the
/// share of true tests. Trial `i` uses its own ChaCha8 stream `i` under
/// `seed`, so the output does not depend on how trials are scheduled.
pub fn simulate_frequencies(
    ts: &TestSequence,
    trials: usize,
    seed: u64,
) -> Result<Vec<Rational>, BernoulliError> {
    let num = ts.p.numer().to_u64().ok_or(BernoulliError::PrecisionTooHigh)?;
    let den = ts.p.denom().to_u64().ok_or(BernoulliError::PrecisionTooHigh)?;
    let r = ts.len();
    let denom = BigInt::from(r);
    Ok((0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(trial as u64);
            let hits = (0..r).filter(|_| rng.random_range(0..den) < num).count();
            Rational::new(hits.into(), denom.clone())
        })
        .collect())
}

/// Number of frequencies within `eps` of `p`.
pub fn coverage(freqs: &[Rational], p: &Rational, eps: &Rational) -> usize {
    freqs.iter().filter(|f| (*f - p).abs() <= *eps).count()
}
