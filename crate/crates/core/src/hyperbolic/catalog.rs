//! Small structures with known tables, used by tests, benches and examples.

use std::collections::{BTreeMap, BTreeSet};

use super::{Flags, HypStructure, Kind};
use crate::cfg::Grammar;
use crate::error::Result;
use crate::fsa::Nfa;
use crate::oracle::{brute_table, AlgebraKind, ConcreteAlgebra, Oracle};
use crate::rewriting::{polypartisan_ancestors, MonadicSystem};
use crate::symbol::Symbol;

fn grammar(text: &str) -> Grammar {
    Grammar::parse(text).unwrap_or_else(|e| panic!("catalog grammar: {e}"))
}

fn set(letters: &[Symbol]) -> BTreeSet<Symbol> {
    letters.iter().copied().collect()
}

/// Semigroup structure of a finite algebra combed by its generators, one
/// letter per combing word. The table is finite.
pub fn finite(alg: &ConcreteAlgebra) -> Result<HypStructure> {
    let sg = alg.as_semigroup();
    let combing = Nfa::letters(alg.alphabet());
    let oracle = Oracle::from(sg.clone());
    let words = brute_table(&oracle, &combing, 3)?;
    let table = Grammar::from_words(&words);
    let values: BTreeSet<_> = alg.alphabet().iter().map(|&a| sg.letter(a)).collect::<Result<_>>()?;
    let flags = Flags {
        with_uniqueness: values.len() == alg.alphabet().len(),
        ..Flags::default()
    };
    HypStructure::new(alg.alphabet().clone(), combing, table, Kind::Semigroup, flags)
}

/// Cyclic group of order two with one letter per element.
pub fn cyclic2(identity: Symbol, generator: Symbol) -> ConcreteAlgebra {
    let letters = BTreeMap::from([(identity, 0), (generator, 1)]);
    ConcreteAlgebra::cayley(
        vec![identity.to_string(), generator.to_string()],
        vec![vec![0, 1], vec![1, 0]],
        letters,
        AlgebraKind::Group,
    )
    .expect("valid table")
}

/// Two-element semilattice `{1, 0}` with one letter per element.
pub fn semilattice2(one: Symbol, zero: Symbol) -> ConcreteAlgebra {
    let letters = BTreeMap::from([(one, 0), (zero, 1)]);
    ConcreteAlgebra::cayley(
        vec![one.to_string(), zero.to_string()],
        vec![vec![0, 1], vec![1, 1]],
        letters,
        AlgebraKind::Monoid,
    )
    .expect("valid table")
}

/// `{a}*` with `a^i #1 a^j #2 a^(i+j)`.
pub fn free_monoid_rank1(a: Symbol) -> HypStructure {
    let table = grammar(&format!(
        "S -> {a} S {a} | T\n\
         T -> #1 U\n\
         U -> {a} U {a} | #2"
    ));
    let combing = Nfa::letters(&set(&[a])).star();
    let flags = Flags {
        with_uniqueness: true,
        one_uniqueness: true,
        star: true,
    };
    HypStructure::new(set(&[a]), combing, table, Kind::Monoid, flags).expect("valid structure")
}

/// Infinite cyclic group over `x*  ∪ X*` (freely reduced words).
pub fn free_group_rank1(x: Symbol, inv: Symbol) -> HypStructure {
    // same sign: add exponents; opposite signs: the shorter one cancels
    let mut text = String::new();
    for (p, n, s) in [(x, inv, "P"), (inv, x, "N")] {
        text += &format!(
            "{s} -> {s}W | {s}3\n\
             {s}W -> {p} {s}W {p} | {s}1 | {s}2\n\
             {s}1 -> #1 {s}U\n\
             {s}U -> {p} {s}U {p} | #2\n\
             {s}2 -> {s}B #2\n\
             {s}B -> {p} {s}B {n} | #1\n\
             {s}3 -> {s}K {s}D\n\
             {s}K -> {p} {s}K {n} | #1\n\
             {s}D -> {n} {s}D {n} | #2\n"
        );
    }
    let table = Grammar::parse_with_start(&format!("S -> P | N\n{text}"), "S").expect("valid grammar");
    let combing = Nfa::letters(&set(&[x])).star().union(&Nfa::letters(&set(&[inv])).star());
    let flags = Flags {
        with_uniqueness: true,
        one_uniqueness: true,
        star: false,
    };
    HypStructure::new(set(&[x, inv]), combing, table, Kind::Monoid, flags).expect("valid structure")
}

/// Bicyclic monoid `⟨b, c | bc = 1⟩` over the normal forms `c* b*`.
pub fn bicyclic_normal(b: Symbol, c: Symbol) -> HypStructure {
    // c^i b^j #1 c^k b^l #2 (c^i' b^l')^rev, split on j ≥ k or j < k
    let table = grammar(&format!(
        "S -> {c} S {c} | T | K M\n\
         T -> {b} T {b} | K L\n\
         K -> {b} K {c} | #1\n\
         L -> {b} L {b} | #2\n\
         M -> {c} M {c} | {c} L {c}"
    ));
    let combing = Nfa::letters(&set(&[c])).star().concat(&Nfa::letters(&set(&[b])).star());
    let flags = Flags {
        with_uniqueness: true,
        one_uniqueness: true,
        star: false,
    };
    HypStructure::new(set(&[b, c]), combing, table, Kind::Monoid, flags).expect("valid structure")
}

/// Bicyclic monoid over all words `{b, c}*`: every segment of the normal
/// form table is widened to the words reducing to it under `bc → ε`.
pub fn bicyclic_free(b: Symbol, c: Symbol) -> Result<HypStructure> {
    let normal = bicyclic_normal(b, c);
    let letters = set(&[b, c]);
    let erase = MonadicSystem::from_rules(letters.clone(), &[(vec![b, c], None)])?;
    let systems = [erase.clone(), erase.clone(), erase.reversed()];
    let table = polypartisan_ancestors(&systems, normal.table())?;
    let combing = Nfa::letters(&letters).star();
    let flags = Flags {
        star: true,
        ..Flags::default()
    };
    HypStructure::new(letters, combing, table, Kind::Monoid, flags)
}
