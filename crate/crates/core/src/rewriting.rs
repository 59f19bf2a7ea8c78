//! Monadic rewriting systems with context-free left-hand sides, their
//! ancestor languages, and segment-wise ("polypartisan") ancestors of
//! k-shuffled languages.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use rayon::prelude::*;

use crate::cfg::{Grammar, NtId, Recognizer, Sym};
use crate::error::{Error, Result};
use crate::fsa::Nfa;
use crate::fst::{shuffle_language, Fst};
use crate::symbol::{Symbol, Tag, Word};

/// Rules `u → rhs` for every `u` in the left-hand-side language of `rhs`,
/// where `rhs` is a letter or ε (`None`).
#[derive(Clone, Debug, Default)]
pub struct MonadicSystem {
    alphabet: BTreeSet<Symbol>,
    lhs: BTreeMap<Option<Symbol>, Grammar>,
}

impl MonadicSystem {
    pub fn new(alphabet: BTreeSet<Symbol>) -> MonadicSystem {
        MonadicSystem {
            alphabet,
            lhs: BTreeMap::new(),
        }
    }

    /// Finite system from explicit rules.
    pub fn from_rules(alphabet: BTreeSet<Symbol>, rules: &[(Word, Option<Symbol>)]) -> Result<MonadicSystem> {
        let mut sys = MonadicSystem::new(alphabet);
        for (u, v) in rules {
            sys.add_rule(*v, Grammar::word(u))?;
        }
        Ok(sys)
    }

    /// Adds `L(lhs) → rhs`, merging with any existing language for `rhs`.
    pub fn add_rule(&mut self, rhs: Option<Symbol>, lhs: Grammar) -> Result<()> {
        if let Some(&a) = lhs.terminals().iter().find(|a| !self.alphabet.contains(a)) {
            return Err(Error::LhsAlphabet(a));
        }
        if let Some(r) = rhs {
            if !self.alphabet.contains(&r) {
                return Err(Error::LhsAlphabet(r));
            }
            // |u| ≥ |rhs| = 1 fails only for u = ε
            if lhs.nullable()[lhs.start()] {
                return Err(Error::NotMonadic { lhs: Vec::new(), rhs });
            }
        }
        let merged = match self.lhs.remove(&rhs) {
            Some(old) => old.union(&lhs),
            None => lhs.trim(),
        };
        self.lhs.insert(rhs, merged);
        Ok(())
    }

    pub fn alphabet(&self) -> &BTreeSet<Symbol> {
        &self.alphabet
    }

    pub fn lhs(&self, rhs: Option<Symbol>) -> Option<&Grammar> {
        self.lhs.get(&rhs)
    }

    pub fn rules(&self) -> impl Iterator<Item = (Option<Symbol>, &Grammar)> {
        self.lhs.iter().map(|(r, g)| (*r, g))
    }

    pub fn is_empty(&self) -> bool {
        self.lhs.values().all(Grammar::is_empty)
    }

    /// Letter-to-letter renaming of the whole system.
    pub fn rename(&self, f: impl Fn(Symbol) -> Symbol + Copy) -> MonadicSystem {
        MonadicSystem {
            alphabet: self.alphabet.iter().map(|&a| f(a)).collect(),
            lhs: self.lhs.iter().map(|(r, g)| (r.map(f), g.map_terminals(f))).collect(),
        }
    }

    /// System with every left-hand side reversed.
    pub fn reversed(&self) -> MonadicSystem {
        MonadicSystem {
            alphabet: self.alphabet.clone(),
            lhs: self.lhs.iter().map(|(r, g)| (*r, g.reverse())).collect(),
        }
    }

    /// Rule-wise union; alphabets are merged.
    pub fn union(&self, other: &MonadicSystem) -> MonadicSystem {
        let mut out = self.clone();
        out.alphabet.extend(other.alphabet.iter().copied());
        for (r, g) in &other.lhs {
            let merged = match out.lhs.remove(r) {
                Some(old) => old.union(g),
                None => g.clone(),
            };
            out.lhs.insert(*r, merged);
        }
        out
    }

    /// Verifies the length condition on every left-hand side enumerated to
    /// `bound`.
    pub fn check_monadic(&self, bound: usize) -> Result<()> {
        for (r, g) in &self.lhs {
            if let Some(&a) = g.terminals().iter().find(|a| !self.alphabet.contains(a)) {
                return Err(Error::LhsAlphabet(a));
            }
            if r.is_some() {
                if let Some(u) = g.enumerate(bound).into_iter().find(|u| u.is_empty()) {
                    return Err(Error::NotMonadic { lhs: u, rhs: *r });
                }
            }
        }
        Ok(())
    }
}

/// Grammar for `anc(L(g))`: every word that rewrites into some word of `g`.
///
/// Each letter `b` becomes a nonterminal `N_b → b | N_b E | lhs(b)` (with
/// letters inside `lhs(b)` replaced by their `N`), and `E` derives the
/// words that rewrite to ε. The start is prefixed with `E`.
pub fn ancestors_grammar(sys: &MonadicSystem, g: &Grammar) -> Result<Grammar> {
    sys.check_monadic(0)?;
    let mut letters: BTreeSet<Symbol> = sys.alphabet.clone();
    letters.extend(g.terminals().iter().copied());
    let mut out = Grammar::new(letters.clone());
    let eps = out.add_nonterminal(Some("E"));
    let slots: BTreeMap<Symbol, NtId> = letters
        .iter()
        .map(|&b| (b, out.add_nonterminal(Some(&format!("Anc_{b}")))))
        .collect();
    let through = |a: Symbol| Sym::N(slots[&a]);

    out.add_production(eps, Vec::new());
    out.add_production(eps, vec![Sym::N(eps), Sym::N(eps)]);
    if let Some(l) = sys.lhs(None) {
        let s = out.import(l, &through);
        out.add_production(eps, vec![Sym::N(s)]);
    }
    for (&b, &nb) in &slots {
        out.add_production(nb, vec![Sym::T(b)]);
        out.add_production(nb, vec![Sym::N(nb), Sym::N(eps)]);
        if let Some(l) = sys.lhs(Some(b)) {
            let s = out.import(l, &through);
            out.add_production(nb, vec![Sym::N(s)]);
        }
    }
    let s = out.import(g, &through);
    out.add_production(0, vec![Sym::N(eps), Sym::N(s)]);
    Ok(out.trim())
}

/// Every word reachable from `w` by one rewriting step.
pub fn rewrite_once(sys: &MonadicSystem, w: &[Symbol]) -> BTreeSet<Word> {
    let recognizers: Vec<(Option<Symbol>, Recognizer)> =
        sys.rules().map(|(r, g)| (r, Recognizer::new(g))).collect();
    let mut out = BTreeSet::new();
    for i in 0..w.len() {
        for j in i + 1..=w.len() {
            for (r, rec) in &recognizers {
                if rec.accepts(&w[i..j]).unwrap_or(false) {
                    let mut v = w[..i].to_vec();
                    v.extend(r);
                    v.extend_from_slice(&w[j..]);
                    out.insert(v);
                }
            }
        }
    }
    out
}

/// Forward-rewriting oracle with left-hand sides enumerated up front, so a
/// factor test is a set lookup.
#[derive(Clone, Debug)]
pub struct AncestorOracle {
    rules: Vec<(HashSet<Word>, Option<Symbol>)>,
    max_len: usize,
}

impl AncestorOracle {
    /// Handles words of length up to `max_len`.
    pub fn new(sys: &MonadicSystem, max_len: usize) -> AncestorOracle {
        let rules = sys
            .rules()
            .map(|(r, g)| (g.enumerate(max_len).into_iter().filter(|u| !u.is_empty()).collect(), r))
            .collect();
        AncestorOracle { rules, max_len }
    }

    pub fn rewrite_once(&self, w: &[Symbol]) -> BTreeSet<Word> {
        let mut out = BTreeSet::new();
        for i in 0..w.len() {
            for j in i + 1..=w.len() {
                for (set, r) in &self.rules {
                    if set.contains(&w[i..j]) {
                        let mut v = w[..i].to_vec();
                        v.extend(r);
                        v.extend_from_slice(&w[j..]);
                        out.insert(v);
                    }
                }
            }
        }
        out
    }

    /// All descendants of `w` including `w` itself.
    pub fn descendants(&self, w: &[Symbol]) -> HashSet<Word> {
        assert!(w.len() <= self.max_len, "word longer than the oracle bound");
        let mut seen: HashSet<Word> = HashSet::from([w.to_vec()]);
        let mut queue = VecDeque::from([w.to_vec()]);
        while let Some(x) = queue.pop_front() {
            for y in self.rewrite_once(&x) {
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        seen
    }

    /// Whether some descendant of `w` satisfies `target`.
    pub fn is_ancestor(&self, w: &[Symbol], target: impl Fn(&[Symbol]) -> bool) -> bool {
        self.descendants(w).iter().any(|x| target(x))
    }
}

/// Breadth-first search over descendants of `w` for one accepted by `target`.
pub fn is_ancestor_oracle(sys: &MonadicSystem, w: &[Symbol], target: impl Fn(&[Symbol]) -> bool) -> bool {
    AncestorOracle::new(sys, w.len()).is_ancestor(w, target)
}

/// Ancestors of every word over `alphabet` up to length `max_len`, decided by
/// the oracle in parallel.
pub fn oracle_ancestors(
    sys: &MonadicSystem,
    alphabet: &BTreeSet<Symbol>,
    max_len: usize,
    target: impl Fn(&[Symbol]) -> bool + Sync,
) -> BTreeSet<Word> {
    let oracle = AncestorOracle::new(sys, max_len);
    let all = Nfa::universal(alphabet).enumerate(max_len);
    all.into_par_iter()
        .filter(|w| oracle.is_ancestor(w, &target))
        .collect::<Vec<_>>()
        .into_iter()
        .collect()
}

/// Letters of the segment alphabets for a `k`-shuffled problem.
fn base_alphabet(systems: &[MonadicSystem], g: &Grammar, k: usize) -> BTreeSet<Symbol> {
    systems
        .iter()
        .flat_map(|s| s.alphabet.iter().copied())
        .chain(g.terminals().iter().copied())
        .filter(|s| !matches!(s.tag(), Tag::Marker(i) if i >= 1 && (i as usize) <= k))
        .collect()
}

/// Intermediate languages of the segment-wise ancestor pipeline.
pub struct PolypartisanStages {
    pub marked: Grammar,
    pub system: MonadicSystem,
    pub ancestors: Grammar,
    pub unmarked: Grammar,
    pub result: Grammar,
}

/// `{ w0 #1 w1 ... #k wk : ∃ u0 #1 ... #k uk ∈ L(g), wi →* ui under systems[i] }`.
///
/// `systems` has `k + 1` entries; `L(g)` must be k-shuffled.
pub fn polypartisan_ancestors(systems: &[MonadicSystem], g: &Grammar) -> Result<Grammar> {
    Ok(polypartisan_stages(systems, g)?.result)
}

/// As [`polypartisan_ancestors`], returning every stage.
pub fn polypartisan_stages(systems: &[MonadicSystem], g: &Grammar) -> Result<PolypartisanStages> {
    if systems.is_empty() {
        return Err(Error::Arity {
            op: "polypartisan ancestors",
            expected: 2,
        });
    }
    let k = systems.len() - 1;
    let letters = base_alphabet(systems, g, k);
    let shuffled = shuffle_language(&letters, k);
    let mut sigma = letters.clone();
    sigma.extend((1..=k).map(|i| Symbol::marker(i as u8)));
    sigma.extend(g.terminals().iter().copied());
    if !g.intersect_regular(&shuffled.complement(&sigma)).is_empty() {
        return Err(Error::NotShuffled(k));
    }
    let mu = Fst::mu_k(&letters, k)?;
    let marked = g.apply_fst(&mu)?;
    let mut system = MonadicSystem::new(mu.out_alphabet().clone());
    for (i, sys) in systems.iter().enumerate() {
        system = system.union(&sys.rename(move |a| a.in_segment(i as u8)));
    }
    let ancestors = ancestors_grammar(&system, &marked)?;
    let unmarked = ancestors.apply_fst(&mu.invert()?)?;
    let result = unmarked.intersect_regular(&shuffled);
    Ok(PolypartisanStages {
        marked,
        system,
        ancestors,
        unmarked,
        result,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbol::{alphabet, parse_word};

    fn w(s: &str) -> Word {
        parse_word(s).unwrap()
    }

    fn ws(items: &[&str]) -> BTreeSet<Word> {
        items.iter().map(|s| w(s)).collect()
    }

    fn sys(rules: &[(&str, Option<&str>)], letters: &[&str]) -> MonadicSystem {
        let rules: Vec<(Word, Option<Symbol>)> = rules.iter().map(|(u, v)| (w(u), v.map(Symbol::new))).collect();
        MonadicSystem::from_rules(alphabet(letters.iter().copied()), &rules).unwrap()
    }

    #[test]
    fn empty_system_keeps_language() {
        let g = Grammar::parse("S -> a S b | c").unwrap();
        let s = MonadicSystem::new(alphabet(["a", "b", "c"]));
        assert_eq!(ancestors_grammar(&s, &g).unwrap().enumerate(6), g.enumerate(6));
    }

    #[test]
    fn contraction_ancestors() {
        let s = sys(&[("a a", Some("a"))], &["a"]);
        let anc = ancestors_grammar(&s, &Grammar::word(&w("a"))).unwrap();
        assert_eq!(anc.enumerate(4), ws(&["a", "a a", "a a a", "a a a a"]));
    }

    #[test]
    fn dyck_ancestors_match_oracle() {
        let s = sys(&[("a b", None)], &["a", "b"]);
        let anc = ancestors_grammar(&s, &Grammar::word(&[])).unwrap();
        let expected = oracle_ancestors(&s, &alphabet(["a", "b"]), 8, |x| x.is_empty());
        assert_eq!(anc.enumerate(8), expected);
    }

    #[test]
    fn rewrite_once_examples() {
        let s = sys(&[("a b", None)], &["a", "b"]);
        assert_eq!(rewrite_once(&s, &w("a a b b")), ws(&["a b"]));
        assert!(rewrite_once(&s, &w("b a")).is_empty());
        let s = sys(&[("a a", Some("a"))], &["a"]);
        assert_eq!(rewrite_once(&s, &w("a a a")), ws(&["a a"]));
    }

    #[test]
    fn oracle_examples() {
        let s = sys(&[("a b", None)], &["a", "b"]);
        assert!(is_ancestor_oracle(&s, &w("a a b b"), |x| x.is_empty()));
        assert!(!is_ancestor_oracle(&s, &w("a a b"), |x| x.is_empty()));
        let s = sys(&[("a a", Some("a"))], &["a"]);
        assert!(is_ancestor_oracle(&s, &w("a a a a"), |x| x == w("a")));
    }

    #[test]
    fn monadic_violations_rejected() {
        let mut s = MonadicSystem::new(alphabet(["a"]));
        assert!(matches!(
            s.add_rule(Some(Symbol::new("a")), Grammar::word(&[])),
            Err(Error::NotMonadic { .. })
        ));
        assert!(matches!(
            s.add_rule(None, Grammar::word(&w("z"))),
            Err(Error::LhsAlphabet(_))
        ));
    }

    #[test]
    fn polypartisan_examples() {
        let contraction = sys(&[("a a", Some("a"))], &["a", "b"]);
        let none = MonadicSystem::new(alphabet(["a", "b"]));
        let g = Grammar::word(&w("a #1 b"));
        let out = polypartisan_ancestors(&[contraction, none.clone()], &g).unwrap();
        assert_eq!(out.enumerate(5), ws(&["a #1 b", "a a #1 b", "a a a #1 b"]));

        let dyck = sys(&[("a b", None)], &["a", "b", "c"]);
        let g = Grammar::word(&w("c #1"));
        let out = polypartisan_ancestors(&[none.clone(), dyck], &g).unwrap();
        assert_eq!(out.enumerate(6), ws(&["c #1", "c #1 a b", "c #1 a a b b", "c #1 a b a b"]));

        let g = Grammar::parse("S -> a #1 S | b").unwrap();
        assert!(matches!(
            polypartisan_ancestors(&[none.clone(), none], &g),
            Err(Error::NotShuffled(1))
        ));
    }
}
