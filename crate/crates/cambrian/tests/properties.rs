//! Randomized structural checks on the group machinery.

use std::sync::Arc;

use cambrian::coxeter::CoxeterSystem;
use cambrian::sortable::{c_sorting_word, CoxeterChoice};
use proptest::prelude::*;

fn word_strategy(rank: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0..rank, 0..12)
}

fn systems() -> Vec<Arc<CoxeterSystem>> {
    ["A3", "B3", "I2(5)"]
        .iter()
        .map(|t| CoxeterSystem::build_named(t).unwrap())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn inverse_round_trip(word in word_strategy(3)) {
        for sys in systems() {
            let word: Vec<usize> = word.iter().map(|&s| s % sys.rank()).collect();
            let w = sys.element_from_word(&word);
            let wi = sys.invert(&w);
            prop_assert!(sys.compose(&w, &wi).is_identity());
            prop_assert_eq!(w.length(), wi.length());
        }
    }

    #[test]
    fn action_preserves_the_form(word in word_strategy(3)) {
        for sys in systems() {
            let word: Vec<usize> = word.iter().map(|&s| s % sys.rank()).collect();
            let w = sys.element_from_word(&word);
            let x: Vec<_> = sys.pos_roots[1].clone();
            let y: Vec<_> = sys.pos_roots[2].clone();
            let wx = sys.act_on_vector(&w, &x);
            let wy = sys.act_on_vector(&w, &y);
            prop_assert_eq!(sys.ip(&x, &y), sys.ip(&wx, &wy));
        }
    }

    #[test]
    fn canonical_word_is_reduced(word in word_strategy(3)) {
        for sys in systems() {
            let word: Vec<usize> = word.iter().map(|&s| s % sys.rank()).collect();
            let w = sys.element_from_word(&word);
            let canon = sys.canonical_word(&w);
            prop_assert_eq!(canon.len(), w.length());
            prop_assert_eq!(sys.element_from_word(&canon), w);
        }
    }

    #[test]
    fn length_matches_inversion_count(word in word_strategy(3)) {
        for sys in systems() {
            let word: Vec<usize> = word.iter().map(|&s| s % sys.rank()).collect();
            let w = sys.element_from_word(&word);
            let mask = sys.inversion_mask(&w);
            prop_assert_eq!(mask.count_ones() as usize, w.length());
        }
    }

    #[test]
    fn sorting_word_is_reduced(word in word_strategy(3)) {
        let sys = CoxeterSystem::build_named("A3").unwrap();
        let c = CoxeterChoice::parse(&sys, "s2,s1,s3").unwrap();
        let w = sys.element_from_word(&word);
        let fact = c_sorting_word(&sys, &w, &c);
        prop_assert_eq!(fact.length(), w.length());
        prop_assert_eq!(sys.element_from_word(&fact.word()), w);
    }
}
