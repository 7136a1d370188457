mod common;

use common::{random_partition, random_sentence};
use logiprob::classical::{
    check_complete, classical_probability, classify_favorability, equiprobable_bfunction, CompleteSet,
    Favorability,
};
use logiprob::logic::is_satisfiable;
use logiprob::Rational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn partitions_give_m_over_n() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..200 {
        let n = rng.random_range(1..=4);
        let part = random_partition(&mut rng, n);
        assert!(check_complete(&part.members).unwrap());
        let cs = CompleteSet::new(part.members.clone()).unwrap();
        let outcome = classical_probability(&part.event, &cs).unwrap();
        let m = part.chosen.iter().filter(|&&c| c).count();
        assert_eq!((outcome.favorable, outcome.total), (m, part.blocks.len()));
        let bf = equiprobable_bfunction(&cs, n).unwrap();
        assert_eq!(bf.b_eval(&part.event).unwrap(), outcome.probability());

        // any measure giving each block 1/n in total agrees
        let mut mass = vec![Rational::from_integer(0.into()); 1 << n];
        let share = Rational::new(1.into(), part.blocks.len().into());
        for block in &part.blocks {
            let weights: Vec<u32> = block.iter().map(|_| rng.random_range(1..=5)).collect();
            let total: u32 = weights.iter().sum();
            for (&w, &k) in block.iter().zip(&weights) {
                mass[w] = &share * Rational::new(k.into(), total.into());
            }
        }
        let skewed = logiprob::bfunc::BFunction::new(n, mass).unwrap();
        assert_eq!(skewed.b_eval(&part.event).unwrap(), outcome.probability());
    }
}

#[test]
fn favorable_and_unfavorable_exclude_each_other() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..500 {
        let b = random_sentence(&mut rng, 3, 4);
        let a = random_sentence(&mut rng, 3, 4);
        if !is_satisfiable(&b) {
            continue;
        }
        let fav = !is_satisfiable(&logiprob::logic::Sentence::and(b.clone(), logiprob::logic::Sentence::not(a.clone())));
        let unfav = !is_satisfiable(&logiprob::logic::Sentence::and(b.clone(), a.clone()));
        assert!(!(fav && unfav));
        let expected = if fav {
            Favorability::Favorable
        } else if unfav {
            Favorability::Unfavorable
        } else {
            Favorability::Neither
        };
        assert_eq!(classify_favorability(&b, &a), expected);
    }
}
