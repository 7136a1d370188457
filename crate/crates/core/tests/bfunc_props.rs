mod common;

use common::{at, bfunction_strategy, exhaustive, sentence_strategy};
use logiprob::bfunc::BFunction;
use logiprob::logic::{eval, is_tautology, synthesize_proof, Sentence, Valuation};
use logiprob::Rational;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn b(bf: &BFunction, s: &Sentence) -> Rational {
    bf.b_eval(s).unwrap()
}

fn and(a: &Sentence, b: &Sentence) -> Sentence {
    Sentence::and(a.clone(), b.clone())
}

fn not(a: &Sentence) -> Sentence {
    Sentence::not(a.clone())
}

fn or(a: &Sentence, b: &Sentence) -> Sentence {
    Sentence::or(a.clone(), b.clone())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn measure_identities(
        bf in bfunction_strategy(3),
        x in sentence_strategy(3, 4),
        y in sentence_strategy(3, 4),
        z in sentence_strategy(3, 4),
    ) {
        prop_assert_eq!(b(&bf, &and(&x, &y)) + b(&bf, &and(&x, &not(&y))), b(&bf, &x));
        prop_assert_eq!(b(&bf, &x) + b(&bf, &not(&x)), Rational::one());
        prop_assert!(b(&bf, &and(&x, &y)) <= b(&bf, &x));
        prop_assert_eq!(
            b(&bf, &or(&x, &y)),
            b(&bf, &x) + b(&bf, &y) - b(&bf, &and(&x, &y))
        );
        let rel = bf.classify_pair(&x, &y).unwrap();
        if rel.inconsistent {
            prop_assert_eq!(b(&bf, &or(&x, &y)), b(&bf, &x) + b(&bf, &y));
        }
        if rel.independent {
            prop_assert_eq!(b(&bf, &and(&x, &not(&y))), b(&bf, &x) * b(&bf, &not(&y)));
        }
        prop_assert!(b(&bf, &and(&and(&x, &not(&x)), &y)).is_zero());
        prop_assert_eq!(
            b(&bf, &and(&x, &or(&y, &z))),
            b(&bf, &and(&x, &y)) + b(&bf, &and(&x, &z)) - b(&bf, &and(&and(&x, &y), &z))
        );
        if is_tautology(&x) {
            prop_assert!(b(&bf, &x).is_one());
        }
        if is_tautology(&not(&x)) {
            prop_assert!(b(&bf, &x).is_zero());
        }
    }

    #[test]
    fn conditioning_is_a_measure(
        bf in bfunction_strategy(3),
        x in sentence_strategy(3, 4),
        y in sentence_strategy(3, 4),
        c in sentence_strategy(3, 3),
    ) {
        let bc = b(&bf, &c);
        match bf.condition(&c) {
            Ok(cond) => {
                prop_assert!(!bc.is_zero());
                prop_assert_eq!(b(&cond, &and(&x, &y)) + b(&cond, &and(&x, &not(&y))), b(&cond, &x));
                prop_assert_eq!(b(&cond, &x) + b(&cond, &not(&x)), Rational::one());
                prop_assert!(b(&cond, &c).is_one());
                prop_assert_eq!(b(&bf, &and(&x, &c)), bf.conditional_prob(&x, &c).unwrap() * &bc);
                prop_assert_eq!(bf.conditional_prob(&x, &c).unwrap(), b(&cond, &x));
            }
            Err(_) => prop_assert!(bc.is_zero()),
        }
    }

    #[test]
    fn proof_goals_have_full_mass(bf in bfunction_strategy(2)) {
        for s in exhaustive(2, 4).iter().step_by(11) {
            if let Ok(d) = synthesize_proof(s) {
                prop_assert!(b(&bf, &d.goal).is_one());
            }
        }
        prop_assert!(b(&bf, &Sentence::implies(at(0), at(0))).is_one());
    }
}

/// Representatives of all sixteen truth functions of two atoms.
fn all_two_atom_functions() -> Vec<Sentence> {
    (0u32..16)
        .map(|bits| {
            let minterms = (0..4).filter(|w| bits >> w & 1 == 1).map(|w| {
                Valuation::from_minterm(2, w).minterm_sentence().unwrap()
            });
            Sentence::disjoin(minterms).unwrap_or_else(|| and(&at(0), &not(&at(0))))
        })
        .collect()
}

proptest! {
    #[test]
    fn p_function_matches_its_definition(bf in bfunction_strategy(2)) {
        let functions = all_two_atom_functions();
        for w in 0..4 {
            let actual = Valuation::from_minterm(2, w);
            let definitional = functions
                .iter()
                .filter(|s| b(&bf, s).is_one())
                .all(|s| eval(s, &actual).unwrap());
            prop_assert_eq!(bf.is_p_function(&actual).unwrap(), definitional);
        }
    }
}
