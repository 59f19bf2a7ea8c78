//! Context-free grammars and their closure algebra.

mod earley;
mod enumerate;
mod product;
mod text;

use std::collections::{BTreeMap, BTreeSet};

pub use earley::Recognizer;

use crate::error::{Error, Result};
use crate::fsa::Nfa;
use crate::symbol::{Symbol, Word};

pub type NtId = usize;

/// A grammar symbol: terminal or nonterminal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sym {
    T(Symbol),
    N(NtId),
}

/// Context-free grammar. ε- and unit productions are allowed.
#[derive(Clone, Debug)]
pub struct Grammar {
    terminals: BTreeSet<Symbol>,
    names: Vec<String>,
    rules: Vec<Vec<Vec<Sym>>>,
    start: NtId,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CombineOp {
    Union,
    Concat,
    Star,
    Reverse,
}

/// Size figures for tracking blowup.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GrammarStats {
    pub nonterminals: usize,
    pub productions: usize,
    pub body_symbols: usize,
}

impl Grammar {
    /// Grammar with a single nonterminal and no productions (empty language).
    pub fn new(terminals: BTreeSet<Symbol>) -> Grammar {
        Grammar {
            terminals,
            names: vec!["S".into()],
            rules: vec![Vec::new()],
            start: 0,
        }
    }

    pub fn empty_language(terminals: BTreeSet<Symbol>) -> Grammar {
        Grammar::new(terminals)
    }

    /// Generates exactly the given words.
    pub fn from_words<'a>(words: impl IntoIterator<Item = &'a Word>) -> Grammar {
        let mut g = Grammar::new(BTreeSet::new());
        for w in words {
            g.add_production(0, w.iter().map(|&s| Sym::T(s)).collect());
        }
        g
    }

    pub fn word(w: &[Symbol]) -> Grammar {
        Grammar::from_words([&w.to_vec()])
    }

    /// Right-linear grammar with one nonterminal per automaton state.
    pub fn from_nfa(n: &Nfa) -> Grammar {
        let n = n.trim();
        let mut g = Grammar::new(n.alphabet().clone());
        let base = g.rules.len();
        for _ in 0..n.num_states() {
            g.add_nonterminal(None);
        }
        for &(p, l, q) in n.transitions() {
            let mut body: Vec<Sym> = l.map(Sym::T).into_iter().collect();
            body.push(Sym::N(base + q));
            g.add_production(base + p, body);
        }
        for &f in n.finals() {
            g.add_production(base + f, Vec::new());
        }
        for &i in n.initials() {
            g.add_production(0, vec![Sym::N(base + i)]);
        }
        g.trim()
    }

    pub fn add_nonterminal(&mut self, name: Option<&str>) -> NtId {
        let id = self.rules.len();
        self.names.push(name.map_or_else(|| format!("N{id}"), str::to_string));
        self.rules.push(Vec::new());
        id
    }

    pub fn add_production(&mut self, lhs: NtId, body: Vec<Sym>) {
        for s in &body {
            match *s {
                Sym::T(a) => {
                    self.terminals.insert(a);
                }
                Sym::N(n) => assert!(n < self.rules.len(), "undeclared nonterminal"),
            }
        }
        self.rules[lhs].push(body);
    }

    pub fn set_start(&mut self, start: NtId) {
        self.start = start;
    }

    pub fn extend_terminals(&mut self, symbols: impl IntoIterator<Item = Symbol>) {
        self.terminals.extend(symbols);
    }

    pub fn terminals(&self) -> &BTreeSet<Symbol> {
        &self.terminals
    }

    pub fn start(&self) -> NtId {
        self.start
    }

    pub fn num_nonterminals(&self) -> usize {
        self.rules.len()
    }

    pub fn rules_of(&self, n: NtId) -> &[Vec<Sym>] {
        &self.rules[n]
    }

    pub fn name_of(&self, n: NtId) -> &str {
        &self.names[n]
    }

    /// All productions as `(lhs, body)` pairs.
    pub fn productions(&self) -> impl Iterator<Item = (NtId, &Vec<Sym>)> {
        self.rules
            .iter()
            .enumerate()
            .flat_map(|(n, bodies)| bodies.iter().map(move |b| (n, b)))
    }

    pub fn stats(&self) -> GrammarStats {
        GrammarStats {
            nonterminals: self.rules.len(),
            productions: self.rules.iter().map(Vec::len).sum(),
            body_symbols: self.productions().map(|(_, b)| b.len()).sum(),
        }
    }

    /// Copies `other`'s nonterminals into `self`, with every terminal `a`
    /// replaced by `subst(a)`. Returns the id of the copied start symbol.
    pub fn import(&mut self, other: &Grammar, subst: &impl Fn(Symbol) -> Sym) -> NtId {
        let off = self.rules.len();
        self.names.extend(other.names.iter().cloned());
        self.rules.extend(other.rules.iter().map(|_| Vec::new()));
        self.terminals.extend(other.terminals.iter().copied().filter_map(|a| match subst(a) {
            Sym::T(b) => Some(b),
            Sym::N(_) => None,
        }));
        for (n, body) in other.productions() {
            let body = body
                .iter()
                .map(|s| match *s {
                    Sym::T(a) => subst(a),
                    Sym::N(m) => Sym::N(m + off),
                })
                .collect();
            self.add_production(n + off, body);
        }
        off + other.start
    }

    pub fn union(&self, other: &Grammar) -> Grammar {
        let mut g = Grammar::new(self.terminals.union(&other.terminals).copied().collect());
        let a = g.import(self, &Sym::T);
        let b = g.import(other, &Sym::T);
        g.add_production(0, vec![Sym::N(a)]);
        g.add_production(0, vec![Sym::N(b)]);
        g.trim()
    }

    /// Union of many grammars under one start symbol.
    pub fn union_all<'a>(parts: impl IntoIterator<Item = &'a Grammar>) -> Grammar {
        let mut g = Grammar::new(BTreeSet::new());
        for p in parts {
            g.terminals.extend(p.terminals.iter().copied());
            let s = g.import(p, &Sym::T);
            g.add_production(0, vec![Sym::N(s)]);
        }
        g.trim()
    }

    pub fn concat(&self, other: &Grammar) -> Grammar {
        let mut g = Grammar::new(self.terminals.union(&other.terminals).copied().collect());
        let a = g.import(self, &Sym::T);
        let b = g.import(other, &Sym::T);
        g.add_production(0, vec![Sym::N(a), Sym::N(b)]);
        g.trim()
    }

    pub fn star(&self) -> Grammar {
        let mut g = Grammar::new(self.terminals.clone());
        let a = g.import(self, &Sym::T);
        g.add_production(0, Vec::new());
        g.add_production(0, vec![Sym::N(a), Sym::N(0)]);
        g.trim()
    }

    pub fn reverse(&self) -> Grammar {
        let mut g = self.clone();
        for bodies in &mut g.rules {
            for b in bodies {
                b.reverse();
            }
        }
        g
    }

    /// Applies `op`; `other` must be present exactly for the binary operations.
    pub fn combine(op: CombineOp, g1: &Grammar, g2: Option<&Grammar>) -> Result<Grammar> {
        match (op, g2) {
            (CombineOp::Union, Some(g2)) => Ok(g1.union(g2)),
            (CombineOp::Concat, Some(g2)) => Ok(g1.concat(g2)),
            (CombineOp::Star, None) => Ok(g1.star()),
            (CombineOp::Reverse, None) => Ok(g1.reverse()),
            (CombineOp::Union, None) => Err(Error::Arity { op: "union", expected: 2 }),
            (CombineOp::Concat, None) => Err(Error::Arity { op: "concat", expected: 2 }),
            (CombineOp::Star, Some(_)) => Err(Error::Arity { op: "star", expected: 1 }),
            (CombineOp::Reverse, Some(_)) => Err(Error::Arity { op: "reverse", expected: 1 }),
        }
    }

    /// Letter-to-letter renaming of terminals.
    pub fn map_terminals(&self, f: impl Fn(Symbol) -> Symbol) -> Grammar {
        let mut g = self.clone();
        g.terminals = self.terminals.iter().map(|&a| f(a)).collect();
        for bodies in &mut g.rules {
            for b in bodies {
                for s in b {
                    if let Sym::T(a) = s {
                        *a = f(*a);
                    }
                }
            }
        }
        g
    }

    /// Substitution of languages for terminals. Terminals outside `map` are
    /// kept.
    ///
    /// In nested mode every `map[a]` must contain `a`, and the result is the
    /// limit of iterating the substitution.
    pub fn substitute(&self, map: &BTreeMap<Symbol, Grammar>, nested: bool) -> Result<Grammar> {
        if nested {
            for (&a, img) in map {
                if !img.accepts(&[a]).unwrap_or(false) {
                    return Err(Error::NotNested { symbol: a });
                }
            }
        }
        let mut g = Grammar::new(BTreeSet::new());
        let slots: BTreeMap<Symbol, NtId> = map
            .keys()
            .map(|&a| (a, g.add_nonterminal(Some(&format!("Sub_{a}")))))
            .collect();
        let through = |a: Symbol| slots.get(&a).map_or(Sym::T(a), |&n| Sym::N(n));
        for (&a, img) in map {
            let start = if nested {
                g.add_production(slots[&a], vec![Sym::T(a)]);
                g.import(img, &through)
            } else {
                g.import(img, &Sym::T)
            };
            g.add_production(slots[&a], vec![Sym::N(start)]);
        }
        let s = g.import(self, &through);
        g.add_production(0, vec![Sym::N(s)]);
        Ok(g.trim())
    }

    /// Equivalent grammar whose bodies have at most two symbols.
    pub fn binarized(&self) -> Grammar {
        let mut g = Grammar {
            terminals: self.terminals.clone(),
            names: self.names.clone(),
            rules: vec![Vec::new(); self.rules.len()],
            start: self.start,
        };
        for (n, body) in self.productions() {
            if body.len() <= 2 {
                g.rules[n].push(body.clone());
                continue;
            }
            let mut lhs = n;
            for &s in &body[..body.len() - 2] {
                let next = g.add_nonterminal(None);
                g.rules[lhs].push(vec![s, Sym::N(next)]);
                lhs = next;
            }
            g.rules[lhs].push(body[body.len() - 2..].to_vec());
        }
        g
    }

    /// Nullable nonterminals.
    pub fn nullable(&self) -> Vec<bool> {
        let mut nullable = vec![false; self.rules.len()];
        loop {
            let mut changed = false;
            for (n, body) in self.productions() {
                if !nullable[n] && body.iter().all(|s| matches!(s, Sym::N(m) if nullable[*m])) {
                    nullable[n] = true;
                    changed = true;
                }
            }
            if !changed {
                return nullable;
            }
        }
    }

    fn productive(&self) -> Vec<bool> {
        let mut prod = vec![false; self.rules.len()];
        loop {
            let mut changed = false;
            for (n, body) in self.productions() {
                if !prod[n] && body.iter().all(|s| matches!(s, Sym::T(_)) || matches!(s, Sym::N(m) if prod[*m])) {
                    prod[n] = true;
                    changed = true;
                }
            }
            if !changed {
                return prod;
            }
        }
    }

    pub fn is_empty(&self) -> bool {
        !self.productive()[self.start]
    }

    /// Removes unproductive and unreachable nonterminals and duplicate
    /// productions. The start symbol always survives.
    pub fn trim(&self) -> Grammar {
        let prod = self.productive();
        let mut reach = vec![false; self.rules.len()];
        let mut stack = vec![self.start];
        reach[self.start] = true;
        while let Some(n) = stack.pop() {
            if !prod[n] {
                continue;
            }
            for body in &self.rules[n] {
                if body.iter().all(|s| !matches!(s, Sym::N(m) if !prod[*m])) {
                    for s in body {
                        if let Sym::N(m) = *s {
                            if !reach[m] {
                                reach[m] = true;
                                stack.push(m);
                            }
                        }
                    }
                }
            }
        }
        let mut map = vec![usize::MAX; self.rules.len()];
        let mut g = Grammar {
            terminals: self.terminals.clone(),
            names: Vec::new(),
            rules: Vec::new(),
            start: 0,
        };
        map[self.start] = 0;
        g.names.push(self.names[self.start].clone());
        g.rules.push(Vec::new());
        for n in 0..self.rules.len() {
            if n != self.start && reach[n] && prod[n] {
                map[n] = g.rules.len();
                g.names.push(self.names[n].clone());
                g.rules.push(Vec::new());
            }
        }
        for n in 0..self.rules.len() {
            if map[n] == usize::MAX || !prod[n] {
                continue;
            }
            let mut seen = BTreeSet::new();
            for body in &self.rules[n] {
                if body.iter().any(|s| matches!(s, Sym::N(m) if !prod[*m])) {
                    continue;
                }
                let body: Vec<Sym> = body
                    .iter()
                    .map(|s| match *s {
                        Sym::N(m) => Sym::N(map[m]),
                        t => t,
                    })
                    .collect();
                if body != [Sym::N(map[n])] && seen.insert(body.clone()) {
                    g.rules[map[n]].push(body);
                }
            }
        }
        g
    }

    /// Trimmed copy whose terminal set is exactly the terminals it uses.
    pub fn tight(&self) -> Grammar {
        let mut g = self.trim();
        g.terminals = g
            .rules
            .iter()
            .flatten()
            .flatten()
            .filter_map(|s| match *s {
                Sym::T(a) => Some(a),
                Sym::N(_) => None,
            })
            .collect();
        g
    }

    /// Membership via a chart recognizer.
    pub fn accepts(&self, w: &[Symbol]) -> Result<bool> {
        Recognizer::new(self).accepts(w)
    }

    /// Every generated word of length at most `max_len`.
    pub fn enumerate(&self, max_len: usize) -> BTreeSet<Word> {
        enumerate::enumerate(self, max_len)
    }

    /// `L(self) ∩ L(n)`.
    pub fn intersect_regular(&self, n: &Nfa) -> Grammar {
        product::intersect_regular(self, n)
    }

    /// Image of `L(self)` under the transducer.
    pub fn apply_fst(&self, t: &crate::fst::Fst) -> Result<Grammar> {
        product::apply_fst(self, t)
    }

    /// `{ u : ∃v ∈ L(n), uv ∈ L(self) }`.
    pub fn right_quotient(&self, n: &Nfa) -> Grammar {
        product::right_quotient(self, n)
    }

    /// Parses the textual production format, see [`Grammar::to_text`].
    pub fn parse(text: &str) -> Result<Grammar> {
        text::parse(text, None)
    }

    /// Parses productions with an explicit start symbol name.
    pub fn parse_with_start(text: &str, start: &str) -> Result<Grammar> {
        text::parse(text, Some(start))
    }

    /// One line per nonterminal, `A -> x B y | ε`, start first. Nonterminal
    /// names are made distinct from every terminal name.
    pub fn to_text(&self) -> String {
        text::render(self)
    }

    /// Nonterminal names as printed by [`Grammar::to_text`].
    pub fn rendered_names(&self) -> Vec<String> {
        text::rendered_names(self)
    }
}
