//! Regular languages: ε-NFAs with the closure algebra, decision procedures
//! and bounded enumeration.

mod dfa;
mod regex;

use std::collections::{BTreeMap, BTreeSet, VecDeque};

pub use dfa::Dfa;
pub use regex::RegexExpr;

use crate::error::{Error, Result};
use crate::symbol::{Symbol, Word};

pub type StateId = usize;

/// Nondeterministic finite automaton with ε-moves.
///
/// The alphabet is the declared alphabet together with every symbol used on
/// a transition; adding a transition extends it.
#[derive(Clone, Debug, Default)]
pub struct Nfa {
    alphabet: BTreeSet<Symbol>,
    num_states: usize,
    transitions: Vec<(StateId, Option<Symbol>, StateId)>,
    initials: BTreeSet<StateId>,
    finals: BTreeSet<StateId>,
}

impl Nfa {
    /// Automaton with no states over `alphabet`; accepts nothing.
    pub fn empty(alphabet: BTreeSet<Symbol>) -> Nfa {
        Nfa {
            alphabet,
            ..Nfa::default()
        }
    }

    /// Accepts exactly the given word.
    pub fn word(w: &[Symbol]) -> Nfa {
        let mut n = Nfa::empty(w.iter().copied().collect());
        let mut cur = n.add_state();
        n.set_initial(cur);
        for &s in w {
            let next = n.add_state();
            n.add_transition(cur, Some(s), next);
            cur = next;
        }
        n.set_final(cur);
        n
    }

    pub fn epsilon() -> Nfa {
        Nfa::word(&[])
    }

    /// Accepts the single-letter words over `symbols`.
    pub fn letters(symbols: &BTreeSet<Symbol>) -> Nfa {
        let mut n = Nfa::empty(symbols.clone());
        let p = n.add_state();
        let q = n.add_state();
        n.set_initial(p);
        n.set_final(q);
        for &s in symbols {
            n.add_transition(p, Some(s), q);
        }
        n
    }

    /// Accepts every word over `alphabet`.
    pub fn universal(alphabet: &BTreeSet<Symbol>) -> Nfa {
        Nfa::letters(alphabet).star()
    }

    /// Thompson-style construction of an automaton for `e`.
    pub fn from_regex(e: &RegexExpr) -> Nfa {
        match e {
            RegexExpr::Epsilon => Nfa::epsilon(),
            RegexExpr::Symbol(s) => Nfa::word(&[*s]),
            RegexExpr::Union(a, b) => Nfa::from_regex(a).union(&Nfa::from_regex(b)),
            RegexExpr::Concat(a, b) => Nfa::from_regex(a).concat(&Nfa::from_regex(b)),
            RegexExpr::Star(a) => Nfa::from_regex(a).star(),
            RegexExpr::Reverse(a) => Nfa::from_regex(a).reverse(),
        }
    }

    pub fn add_state(&mut self) -> StateId {
        self.num_states += 1;
        self.num_states - 1
    }

    pub fn add_transition(&mut self, from: StateId, label: Option<Symbol>, to: StateId) {
        assert!(from < self.num_states && to < self.num_states, "state out of range");
        if let Some(s) = label {
            self.alphabet.insert(s);
        }
        self.transitions.push((from, label, to));
    }

    pub fn set_initial(&mut self, s: StateId) {
        self.initials.insert(s);
    }

    pub fn set_final(&mut self, s: StateId) {
        self.finals.insert(s);
    }

    pub fn extend_alphabet(&mut self, symbols: impl IntoIterator<Item = Symbol>) {
        self.alphabet.extend(symbols);
    }

    pub fn alphabet(&self) -> &BTreeSet<Symbol> {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.num_states
    }

    pub fn transitions(&self) -> &[(StateId, Option<Symbol>, StateId)] {
        &self.transitions
    }

    pub fn initials(&self) -> &BTreeSet<StateId> {
        &self.initials
    }

    pub fn finals(&self) -> &BTreeSet<StateId> {
        &self.finals
    }

    /// Copies `other`'s states into `self`, returning the state offset.
    fn absorb(&mut self, other: &Nfa) -> usize {
        let off = self.num_states;
        self.num_states += other.num_states;
        self.alphabet.extend(other.alphabet.iter().copied());
        self.transitions.extend(
            other
                .transitions
                .iter()
                .map(|&(p, l, q)| (p + off, l, q + off)),
        );
        off
    }

    pub fn union(&self, other: &Nfa) -> Nfa {
        let mut n = self.clone();
        let off = n.absorb(other);
        n.initials.extend(other.initials.iter().map(|s| s + off));
        n.finals.extend(other.finals.iter().map(|s| s + off));
        n
    }

    pub fn concat(&self, other: &Nfa) -> Nfa {
        let mut n = self.clone();
        let off = n.absorb(other);
        let mid = n.add_state();
        for &f in &self.finals {
            n.add_transition(f, None, mid);
        }
        for &i in &other.initials {
            n.add_transition(mid, None, i + off);
        }
        n.finals = other.finals.iter().map(|s| s + off).collect();
        n
    }

    pub fn star(&self) -> Nfa {
        let mut n = self.clone();
        let hub = n.add_state();
        for &i in &self.initials {
            n.add_transition(hub, None, i);
        }
        for &f in &self.finals {
            n.add_transition(f, None, hub);
        }
        n.initials = BTreeSet::from([hub]);
        n.finals = BTreeSet::from([hub]);
        n
    }

    pub fn plus(&self) -> Nfa {
        self.concat(&self.star())
    }

    /// Accepts `{ w^rev : w ∈ L(self) }`.
    pub fn reverse(&self) -> Nfa {
        Nfa {
            alphabet: self.alphabet.clone(),
            num_states: self.num_states,
            transitions: self.transitions.iter().map(|&(p, l, q)| (q, l, p)).collect(),
            initials: self.finals.clone(),
            finals: self.initials.clone(),
        }
    }

    /// Product construction; ε-moves of either side interleave freely.
    pub fn intersect(&self, other: &Nfa) -> Nfa {
        let alphabet: BTreeSet<Symbol> = self.alphabet.union(&other.alphabet).copied().collect();
        let mut n = Nfa::empty(alphabet);
        let out_a = self.adjacency();
        let out_b = other.adjacency();
        let mut ids: BTreeMap<(StateId, StateId), StateId> = BTreeMap::new();
        let mut queue = VecDeque::new();
        for &i in &self.initials {
            for &j in &other.initials {
                let s = n.add_state();
                ids.insert((i, j), s);
                n.set_initial(s);
                queue.push_back((i, j));
            }
        }
        while let Some((p, q)) = queue.pop_front() {
            let from = ids[&(p, q)];
            if self.finals.contains(&p) && other.finals.contains(&q) {
                n.set_final(from);
            }
            let mut edges = Vec::new();
            for &(l, p2) in &out_a[p] {
                match l {
                    None => edges.push((None, p2, q)),
                    Some(a) => {
                        for &(l2, q2) in &out_b[q] {
                            if l2 == Some(a) {
                                edges.push((Some(a), p2, q2));
                            }
                        }
                    }
                }
            }
            for &(l, q2) in &out_b[q] {
                if l.is_none() {
                    edges.push((None, p, q2));
                }
            }
            for (l, p2, q2) in edges {
                let to = *ids.entry((p2, q2)).or_insert_with(|| {
                    queue.push_back((p2, q2));
                    n.num_states += 1;
                    n.num_states - 1
                });
                n.transitions.push((from, l, to));
            }
        }
        n.trim()
    }

    /// Complement relative to `alphabet*`.
    pub fn complement(&self, alphabet: &BTreeSet<Symbol>) -> Nfa {
        Dfa::from_nfa(self, alphabet).complement().to_nfa()
    }

    /// `L(self) \ L(other)`.
    pub fn difference(&self, other: &Nfa) -> Nfa {
        let sigma: BTreeSet<Symbol> = self.alphabet.union(&other.alphabet).copied().collect();
        self.intersect(&other.complement(&sigma))
    }

    /// Restricts to states that are reachable and co-reachable.
    pub fn trim(&self) -> Nfa {
        let fwd = reach(self.num_states, &self.initials, self.transitions.iter().map(|&(p, _, q)| (p, q)));
        let bwd = reach(self.num_states, &self.finals, self.transitions.iter().map(|&(p, _, q)| (q, p)));
        let mut map = vec![usize::MAX; self.num_states];
        let mut n = Nfa::empty(self.alphabet.clone());
        for s in 0..self.num_states {
            if fwd[s] && bwd[s] {
                map[s] = n.add_state();
            }
        }
        for &(p, l, q) in &self.transitions {
            if map[p] != usize::MAX && map[q] != usize::MAX {
                n.transitions.push((map[p], l, map[q]));
            }
        }
        n.initials = self.initials.iter().filter(|&&s| map[s] != usize::MAX).map(|&s| map[s]).collect();
        n.finals = self.finals.iter().filter(|&&s| map[s] != usize::MAX).map(|&s| map[s]).collect();
        n
    }

    /// Outgoing edges per state.
    pub fn adjacency(&self) -> Vec<Vec<(Option<Symbol>, StateId)>> {
        let mut out = vec![Vec::new(); self.num_states];
        for &(p, l, q) in &self.transitions {
            out[p].push((l, q));
        }
        out
    }

    /// States reachable from each state by ε-moves (reflexive).
    pub fn epsilon_closures(&self) -> Vec<BTreeSet<StateId>> {
        let eps: Vec<(StateId, StateId)> = self
            .transitions
            .iter()
            .filter(|t| t.1.is_none())
            .map(|&(p, _, q)| (p, q))
            .collect();
        (0..self.num_states)
            .map(|s| {
                let seen = reach(self.num_states, &BTreeSet::from([s]), eps.iter().copied());
                (0..self.num_states).filter(|&t| seen[t]).collect()
            })
            .collect()
    }

    pub fn closure_of(&self, states: &BTreeSet<StateId>) -> BTreeSet<StateId> {
        let eps = self
            .transitions
            .iter()
            .filter(|t| t.1.is_none())
            .map(|&(p, _, q)| (p, q));
        let seen = reach(self.num_states, states, eps);
        (0..self.num_states).filter(|&t| seen[t]).collect()
    }

    fn step(&self, states: &BTreeSet<StateId>, a: Symbol, adj: &[Vec<(Option<Symbol>, StateId)>]) -> BTreeSet<StateId> {
        let next: BTreeSet<StateId> = states
            .iter()
            .flat_map(|&p| adj[p].iter().filter(|(l, _)| *l == Some(a)).map(|&(_, q)| q))
            .collect();
        self.closure_of(&next)
    }

    /// Membership; symbols outside the alphabet are rejected.
    pub fn accepts(&self, w: &[Symbol]) -> Result<bool> {
        if let Some(&s) = w.iter().find(|s| !self.alphabet.contains(s)) {
            return Err(Error::RejectedInput {
                symbol: s,
                context: "automaton",
            });
        }
        let adj = self.adjacency();
        let mut cur = self.closure_of(&self.initials);
        for &a in w {
            if cur.is_empty() {
                return Ok(false);
            }
            cur = self.step(&cur, a, &adj);
        }
        Ok(cur.iter().any(|s| self.finals.contains(s)))
    }

    pub fn accepts_epsilon(&self) -> bool {
        self.closure_of(&self.initials)
            .iter()
            .any(|s| self.finals.contains(s))
    }

    /// Every accepted word of length at most `max_len`, breadth first.
    pub fn enumerate(&self, max_len: usize) -> BTreeSet<Word> {
        let adj = self.adjacency();
        let mut out = BTreeSet::new();
        let mut layer: BTreeMap<Word, BTreeSet<StateId>> = BTreeMap::new();
        let start = self.closure_of(&self.initials);
        if start.is_empty() {
            return out;
        }
        layer.insert(Vec::new(), start);
        for len in 0..=max_len {
            for (w, states) in &layer {
                if states.iter().any(|s| self.finals.contains(s)) {
                    out.insert(w.clone());
                }
            }
            if len == max_len {
                break;
            }
            let mut next = BTreeMap::new();
            for (w, states) in &layer {
                for &a in &self.alphabet {
                    let s2 = self.step(states, a, &adj);
                    if !s2.is_empty() {
                        let mut w2 = w.clone();
                        w2.push(a);
                        next.insert(w2, s2);
                    }
                }
            }
            layer = next;
        }
        out
    }

    pub fn is_empty(&self) -> bool {
        let fwd = reach(self.num_states, &self.initials, self.transitions.iter().map(|&(p, _, q)| (p, q)));
        !self.finals.iter().any(|&f| fwd[f])
    }

    /// Exact language equality via determinization.
    pub fn equivalent(&self, other: &Nfa) -> bool {
        let sigma: BTreeSet<Symbol> = self.alphabet.union(&other.alphabet).copied().collect();
        let a = Dfa::from_nfa(self, &sigma);
        let b = Dfa::from_nfa(other, &sigma);
        a.equivalent(&b)
    }

    /// Applies a letter-to-letter renaming.
    pub fn map_symbols(&self, f: impl Fn(Symbol) -> Symbol) -> Nfa {
        Nfa {
            alphabet: self.alphabet.iter().map(|&s| f(s)).collect(),
            num_states: self.num_states,
            transitions: self.transitions.iter().map(|&(p, l, q)| (p, l.map(&f), q)).collect(),
            initials: self.initials.clone(),
            finals: self.finals.clone(),
        }
    }

    /// `L(self) ∖ {ε}`, i.e. the intersection with `Σ⁺`.
    pub fn without_epsilon(&self) -> Nfa {
        self.intersect(&Nfa::letters(&self.alphabet).plus())
    }
}

fn reach(
    n: usize,
    start: &BTreeSet<StateId>,
    edges: impl Iterator<Item = (StateId, StateId)>,
) -> Vec<bool> {
    let mut adj = vec![Vec::new(); n];
    for (p, q) in edges {
        adj[p].push(q);
    }
    let mut seen = vec![false; n];
    let mut stack: Vec<StateId> = start.iter().copied().collect();
    for &s in start {
        seen[s] = true;
    }
    while let Some(p) = stack.pop() {
        for &q in &adj[p] {
            if !seen[q] {
                seen[q] = true;
                stack.push(q);
            }
        }
    }
    seen
}
