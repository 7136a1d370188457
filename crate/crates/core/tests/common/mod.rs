#![allow(dead_code)]

use logiprob::bfunc::BFunction;
use logiprob::logic::Sentence;
use logiprob::Rational;
use proptest::prelude::*;
use rand::Rng;

pub fn at(i: usize) -> Sentence {
    Sentence::atom(i)
}

/// Every sentence over atoms `0..n` whose depth (atoms count 1) is at most
/// `depth`.
pub fn exhaustive(n: usize, depth: usize) -> Vec<Sentence> {
    let mut level: Vec<Sentence> = (0..n).map(at).collect();
    for _ in 1..depth {
        let mut next = (0..n).map(at).collect::<Vec<_>>();
        for s in &level {
            next.push(Sentence::not(s.clone()));
        }
        for a in &level {
            for b in &level {
                next.push(Sentence::and(a.clone(), b.clone()));
            }
        }
        level = next;
    }
    level
}

/// Random sentence over atoms `0..n`, built from ¬, ∧ and the ∨/→ sugar.
pub fn random_sentence<R: Rng>(rng: &mut R, n: usize, depth: usize) -> Sentence {
    if depth <= 1 || rng.random_range(0..4) == 0 {
        return at(rng.random_range(0..n));
    }
    let sub = |rng: &mut R| random_sentence(rng, n, depth - 1);
    match rng.random_range(0..4) {
        0 => Sentence::not(sub(rng)),
        1 => {
            let a = sub(rng);
            Sentence::and(a, sub(rng))
        }
        2 => {
            let a = sub(rng);
            Sentence::or(a, sub(rng))
        }
        _ => {
            let a = sub(rng);
            Sentence::implies(a, sub(rng))
        }
    }
}

/// Random exact measure on `n` atoms: integer weights over random
/// denominators, some minterms left empty, normalized.
pub fn random_bfunction<R: Rng>(rng: &mut R, n: usize) -> BFunction {
    loop {
        let raw: Vec<Rational> = (0..1usize << n)
            .map(|_| {
                if rng.random_range(0..4) == 0 {
                    Rational::from_integer(0.into())
                } else {
                    let num: i64 = rng.random_range(1..=20);
                    let den: i64 = rng.random_range(1..=12);
                    Rational::new(num.into(), den.into())
                }
            })
            .collect();
        let total: Rational = raw.iter().sum();
        if total == Rational::from_integer(0.into()) {
            continue;
        }
        let mass = raw.into_iter().map(|m| m / &total).collect();
        return BFunction::new(n, mass).expect("normalized");
    }
}

pub fn sentence_strategy(n: usize, depth: u32) -> impl Strategy<Value = Sentence> {
    let leaf = (0..n).prop_map(at);
    leaf.prop_recursive(depth, 64, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Sentence::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Sentence::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Sentence::or(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Sentence::implies(a, b)),
        ]
    })
}

pub fn bfunction_strategy(n: usize) -> impl Strategy<Value = BFunction> {
    proptest::collection::vec((0u32..=20, 1u32..=12), 1usize << n).prop_filter_map(
        "all-zero weights",
        move |weights| {
            let raw: Vec<Rational> = weights
                .into_iter()
                .map(|(a, b)| Rational::new(a.into(), b.into()))
                .collect();
            let total: Rational = raw.iter().sum();
            if total == Rational::from_integer(0.into()) {
                return None;
            }
            BFunction::new(n, raw.into_iter().map(|m| m / &total).collect()).ok()
        },
    )
}

/// A partition of the `2^n` minterms into `blocks` nonempty blocks, each
/// rendered as the disjunction of its minterm sentences, together with a
/// random union of blocks as the event.
pub struct Partition {
    pub members: Vec<Sentence>,
    pub blocks: Vec<Vec<usize>>,
    pub chosen: Vec<bool>,
    pub event: Sentence,
}

pub fn random_partition<R: Rng>(rng: &mut R, n: usize) -> Partition {
    use logiprob::logic::Valuation;
    let rows = 1usize << n;
    let count = rng.random_range(1..=rows);
    let mut order: Vec<usize> = (0..rows).collect();
    rand::seq::SliceRandom::shuffle(order.as_mut_slice(), rng);
    let mut blocks: Vec<Vec<usize>> = order[..count].iter().map(|&w| vec![w]).collect();
    for &w in &order[count..] {
        let i = rng.random_range(0..count);
        blocks[i].push(w);
    }
    let minterm = |w: usize| Valuation::from_minterm(n, w).minterm_sentence().expect("n >= 1");
    let members: Vec<Sentence> = blocks
        .iter()
        .map(|b| Sentence::disjoin(b.iter().map(|&w| minterm(w))).expect("nonempty block"))
        .collect();
    let chosen: Vec<bool> = (0..count).map(|_| rng.random_bool(0.5)).collect();
    let favorable: Vec<usize> =
        blocks.iter().zip(&chosen).filter(|(_, &c)| c).flat_map(|(b, _)| b.iter().copied()).collect();
    // an empty event is written as a contradiction over the same atoms
    let event = Sentence::disjoin(favorable.into_iter().map(minterm))
        .unwrap_or_else(|| Sentence::and(at(0), Sentence::not(at(0))));
    Partition { members, blocks, chosen, event }
}

pub fn small_rational<R: Rng>(rng: &mut R) -> Rational {
    let num: i64 = rng.random_range(-9..=9);
    let den: i64 = rng.random_range(1..=5);
    Rational::new(num.into(), den.into())
}

/// Random structured Q-number: a period of 1 to 3 rational functions of `n`
/// with quadratic numerators and pole-free denominators `n + c` or
/// `n^2 + c`, `c > 0`.
pub fn random_structured<R: Rng>(rng: &mut R) -> logiprob::qnum::QNumber {
    use logiprob::qnum::{Poly, QNumber, RatFunc};
    let period = rng.random_range(1..=3);
    let terms = (0..period)
        .map(|_| {
            let num = Poly::from_coeffs((0..3).map(|_| small_rational(rng)).collect());
            let c = Rational::from_integer(rng.random_range(1..=4i64).into());
            let den = match rng.random_range(0..3) {
                0 => Poly::constant(Rational::from_integer(1.into())),
                1 => Poly::from_coeffs(vec![c, Rational::from_integer(1.into())]),
                _ => Poly::from_coeffs(vec![
                    c,
                    Rational::from_integer(0.into()),
                    Rational::from_integer(1.into()),
                ]),
            };
            RatFunc::new(num, den).expect("nonzero denominator")
        })
        .collect();
    QNumber::periodic(terms).expect("nonempty period")
}

/// Random sequence with no structure attached: a table of `len` random
/// rationals repeated cyclically behind an opaque closure.
pub fn random_opaque<R: Rng>(rng: &mut R, len: usize) -> logiprob::qnum::QNumber {
    let table: Vec<Rational> = (0..len).map(|_| small_rational(rng)).collect();
    logiprob::qnum::QNumber::opaque(move |n| table[(n as usize) % table.len()].clone())
}
