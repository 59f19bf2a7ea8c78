#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;
use wordhyp_core::cfg::Sym;
use wordhyp_core::symbol::{alphabet, parse_word};
use wordhyp_core::{Grammar, Nfa, RegexExpr, Symbol, Word};

pub fn w(text: &str) -> Word {
    parse_word(text).unwrap()
}

pub fn ab() -> BTreeSet<Symbol> {
    alphabet(["a", "b"])
}

pub fn all_words(letters: &BTreeSet<Symbol>, max_len: usize) -> Vec<Word> {
    Nfa::universal(letters).enumerate(max_len).into_iter().collect()
}

pub fn concat_sets(x: &BTreeSet<Word>, y: &BTreeSet<Word>, max_len: usize) -> BTreeSet<Word> {
    let mut out = BTreeSet::new();
    for u in x {
        for v in y {
            if u.len() + v.len() <= max_len {
                out.insert([u.as_slice(), v].concat());
            }
        }
    }
    out
}

pub fn star_set(x: &BTreeSet<Word>, max_len: usize) -> BTreeSet<Word> {
    let mut out = BTreeSet::from([Vec::new()]);
    loop {
        let next: BTreeSet<Word> = &out | &concat_sets(&out, x, max_len);
        if next.len() == out.len() {
            return out;
        }
        out = next;
    }
}

pub fn reverse_set(x: &BTreeSet<Word>) -> BTreeSet<Word> {
    x.iter().map(|u| u.iter().rev().copied().collect()).collect()
}

/// Denotation of a regex by set algebra, truncated at `max_len`.
pub fn regex_words(e: &RegexExpr, max_len: usize) -> BTreeSet<Word> {
    match e {
        RegexExpr::Epsilon => BTreeSet::from([Vec::new()]),
        RegexExpr::Symbol(a) => BTreeSet::from([vec![*a]]),
        RegexExpr::Union(x, y) => &regex_words(x, max_len) | &regex_words(y, max_len),
        RegexExpr::Concat(x, y) => concat_sets(&regex_words(x, max_len), &regex_words(y, max_len), max_len),
        RegexExpr::Star(x) => star_set(&regex_words(x, max_len), max_len),
        RegexExpr::Reverse(x) => reverse_set(&regex_words(x, max_len)),
    }
    .into_iter()
    .filter(|u| u.len() <= max_len)
    .collect()
}

pub fn regex_strategy() -> impl Strategy<Value = RegexExpr> {
    let leaf = prop_oneof![
        Just(RegexExpr::Epsilon),
        Just(RegexExpr::sym("a")),
        Just(RegexExpr::sym("b")),
    ];
    leaf.prop_recursive(4, 16, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(x, y)| x.or(y)),
            (inner.clone(), inner.clone()).prop_map(|(x, y)| x.then(y)),
            inner.clone().prop_map(RegexExpr::star),
            inner.prop_map(RegexExpr::reverse),
        ]
    })
}

pub fn nfa_strategy() -> impl Strategy<Value = Nfa> {
    regex_strategy().prop_map(|e| {
        let mut n = Nfa::from_regex(&e);
        n.extend_alphabet(ab());
        n
    })
}

/// Raw grammar shape: per nonterminal, productions over terminals a, b
/// (codes 0, 1) and nonterminals (codes 2..).
pub type Shape = Vec<Vec<Vec<u8>>>;

pub fn grammar_strategy() -> impl Strategy<Value = Shape> {
    (1usize..=3).prop_flat_map(|n| {
        let sym = 0u8..(2 + n as u8);
        prop::collection::vec(
            prop::collection::vec(prop::collection::vec(sym, 0..=3), 0..=3),
            n..=n,
        )
    })
}

pub fn build_grammar(shape: &Shape) -> Grammar {
    let mut g = Grammar::new(ab());
    for _ in 1..shape.len() {
        g.add_nonterminal(None);
    }
    let (a, b) = (Symbol::new("a"), Symbol::new("b"));
    for (lhs, bodies) in shape.iter().enumerate() {
        for body in bodies {
            let body = body
                .iter()
                .map(|&c| match c {
                    0 => Sym::T(a),
                    1 => Sym::T(b),
                    n => Sym::N(n as usize - 2),
                })
                .collect();
            g.add_production(lhs, body);
        }
    }
    g
}

/// Words of length at most `max_len` derivable from each nonterminal, by a
/// naive fixpoint over the raw productions.
pub fn naive_language(g: &Grammar, max_len: usize) -> BTreeSet<Word> {
    let n = g.num_nonterminals();
    let mut sets: Vec<BTreeSet<Word>> = vec![BTreeSet::new(); n];
    loop {
        let mut changed = false;
        for (lhs, body) in g.productions() {
            let mut acc: BTreeSet<Word> = BTreeSet::from([Vec::new()]);
            for s in body {
                let part = match *s {
                    Sym::T(a) => BTreeSet::from([vec![a]]),
                    Sym::N(m) => sets[m].clone(),
                };
                acc = concat_sets(&acc, &part, max_len);
            }
            for u in acc {
                changed |= sets[lhs].insert(u);
            }
        }
        if !changed {
            return sets[g.start()].clone();
        }
    }
}

pub fn substitution_map(images: &[(&str, &[&str])]) -> BTreeMap<Symbol, Grammar> {
    images
        .iter()
        .map(|(a, ws)| {
            let words: Vec<Word> = ws.iter().map(|x| w(x)).collect();
            (Symbol::new(a), Grammar::from_words(&words))
        })
        .collect()
}
