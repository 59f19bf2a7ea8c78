mod common;

use std::collections::BTreeSet;

use common::*;
use proptest::prelude::*;
use wordhyp_core::cfg::CombineOp;
use wordhyp_core::{Fst, Grammar, Nfa, RegexExpr, Symbol, Word};

const LEN: usize = 6;

fn transducers() -> Vec<Fst> {
    let (a, b) = (Symbol::new("a"), Symbol::new("b"));
    let swap_grow = Fst::homomorphism(&ab(), |x| Some(if x == a { vec![b, b] } else { vec![a] }));
    // a ↦ a or b, b ↦ b
    let mut blur = Fst::identity(&ab());
    blur.add_transition(0, Some(a), Some(b), 0);
    vec![Fst::identity(&ab()), swap_grow, blur]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn enumeration_matches_naive_fixpoint(shape in grammar_strategy()) {
        let g = build_grammar(&shape);
        prop_assert_eq!(g.enumerate(LEN), naive_language(&g, LEN));
    }

    #[test]
    fn membership_matches_enumeration(shape in grammar_strategy()) {
        let g = build_grammar(&shape);
        let lang = naive_language(&g, LEN);
        for u in all_words(&ab(), LEN) {
            prop_assert_eq!(g.accepts(&u).unwrap(), lang.contains(&u));
        }
    }

    #[test]
    fn closure_operations_match_set_algebra(s1 in grammar_strategy(), s2 in grammar_strategy()) {
        let (g1, g2) = (build_grammar(&s1), build_grammar(&s2));
        let (l1, l2) = (naive_language(&g1, LEN), naive_language(&g2, LEN));
        prop_assert_eq!(g1.union(&g2).enumerate(LEN), &l1 | &l2);
        prop_assert_eq!(g1.concat(&g2).enumerate(LEN), concat_sets(&l1, &l2, LEN));
        prop_assert_eq!(g1.star().enumerate(LEN), star_set(&l1, LEN));
        prop_assert_eq!(g1.reverse().enumerate(LEN), reverse_set(&l1));
        let combined = Grammar::combine(CombineOp::Union, &g1, Some(&g2)).unwrap();
        prop_assert_eq!(combined.enumerate(LEN), &l1 | &l2);
    }

    #[test]
    fn bar_hillel_is_conjunction(shape in grammar_strategy(), n in nfa_strategy()) {
        let g = build_grammar(&shape);
        let both = g.intersect_regular(&n);
        for u in all_words(&ab(), LEN) {
            prop_assert_eq!(both.accepts(&u).unwrap(), g.accepts(&u).unwrap() && n.accepts(&u).unwrap());
        }
    }

    #[test]
    fn transduction_matches_pointwise_application(shape in grammar_strategy()) {
        let g = build_grammar(&shape);
        // none of the corpus transducers shortens a word
        for t in transducers() {
            let expected: BTreeSet<Word> = naive_language(&g, LEN)
                .iter()
                .flat_map(|u| t.apply_word(u).unwrap())
                .filter(|v| v.len() <= LEN)
                .collect();
            prop_assert_eq!(g.apply_fst(&t).unwrap().enumerate(LEN), expected);
        }
    }

    #[test]
    fn nested_substitution_is_monotone(shape in grammar_strategy()) {
        let g = build_grammar(&shape);
        let map = substitution_map(&[("a", &["a", "b a"]), ("b", &["b", ""])]);
        let sub = g.substitute(&map, true).unwrap();
        for u in naive_language(&g, LEN) {
            prop_assert!(sub.accepts(&u).unwrap());
        }
    }

    #[test]
    fn trim_preserves_membership(shape in grammar_strategy()) {
        let g = build_grammar(&shape);
        let t = g.trim();
        prop_assert!(t.num_nonterminals() <= g.num_nonterminals());
        for u in all_words(&ab(), LEN) {
            prop_assert_eq!(t.accepts(&u).unwrap(), g.accepts(&u).unwrap());
        }
    }
}

#[test]
fn spec_examples() {
    let anbn = Grammar::parse("S -> a S b | ε").unwrap();
    assert_eq!(anbn.enumerate(4), [w(""), w("a b"), w("a a b b")].into_iter().collect());
    assert!(anbn.accepts(&w("a a b b")).unwrap());
    assert!(!anbn.accepts(&w("a a b")).unwrap());

    let re = |x: &str| Nfa::from_regex(&RegexExpr::parse(x).unwrap());
    let balanced = Grammar::parse("S -> a S b S | ε").unwrap();
    let expected: BTreeSet<Word> = (0..=4).map(|n| [vec![Symbol::new("a"); n], vec![Symbol::new("b"); n]].concat()).collect();
    assert_eq!(balanced.intersect_regular(&re("a* b*")).enumerate(8), expected);

    let one = Grammar::from_nfa(&re("a b"));
    assert_eq!(one.enumerate(5), [w("a b")].into_iter().collect());
    assert!(Grammar::from_nfa(&Nfa::empty(ab())).is_empty());

    let an_b = Grammar::parse("S -> a S | b").unwrap();
    let rev = an_b.reverse();
    assert!(rev.accepts(&w("b a a")).unwrap());
    assert!(!rev.accepts(&w("a a b")).unwrap());

    let stripped = Grammar::parse("S -> a S b | a b").unwrap().right_quotient(&re("b"));
    assert_eq!(stripped.enumerate(5), [w("a"), w("a a b"), w("a a a b b")].into_iter().collect());

    let aa = Grammar::from_words(&[w("a a")]);
    let hom = aa.substitute(&substitution_map(&[("a", &["b"])]), false).unwrap();
    assert_eq!(hom.enumerate(4), [w("b b")].into_iter().collect());
    let nested = aa.substitute(&substitution_map(&[("a", &["a", ""])]), true).unwrap();
    assert_eq!(nested.enumerate(4), [w(""), w("a"), w("a a")].into_iter().collect());
    let bad = aa.substitute(&substitution_map(&[("a", &["b"])]), true);
    assert!(bad.is_err());
}

#[test]
fn grammar_stats_do_not_grow_under_trim() {
    let g = Grammar::parse("S -> a S | A | b\nA -> A a\nB -> b").unwrap();
    let before = g.stats();
    let after = g.trim().stats();
    assert!(after.nonterminals <= before.nonterminals);
    assert!(after.productions <= before.productions);
}
