use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::{Nfa, StateId};
use crate::symbol::Symbol;

/// Complete deterministic automaton over a fixed alphabet.
#[derive(Clone, Debug)]
pub struct Dfa {
    alphabet: Vec<Symbol>,
    /// `delta[state][letter index]`
    delta: Vec<Vec<StateId>>,
    accepting: Vec<bool>,
}

impl Dfa {
    /// Subset construction; letters of `alphabet` absent from `nfa` lead to
    /// the dead state.
    pub fn from_nfa(nfa: &Nfa, alphabet: &BTreeSet<Symbol>) -> Dfa {
        let sigma: Vec<Symbol> = alphabet
            .iter()
            .chain(nfa.alphabet().iter())
            .copied()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let adj = nfa.adjacency();
        let mut ids: BTreeMap<BTreeSet<StateId>, StateId> = BTreeMap::new();
        let mut delta: Vec<Vec<StateId>> = Vec::new();
        let mut accepting = Vec::new();
        let mut queue = VecDeque::new();
        let start = nfa.closure_of(nfa.initials());
        ids.insert(start.clone(), 0);
        delta.push(vec![0; sigma.len()]);
        accepting.push(start.iter().any(|s| nfa.finals().contains(s)));
        queue.push_back(start);
        while let Some(set) = queue.pop_front() {
            let from = ids[&set];
            for (k, &a) in sigma.iter().enumerate() {
                let moved: BTreeSet<StateId> = set
                    .iter()
                    .flat_map(|&p| adj[p].iter().filter(|(l, _)| *l == Some(a)).map(|&(_, q)| q))
                    .collect();
                let next = nfa.closure_of(&moved);
                let to = match ids.get(&next) {
                    Some(&id) => id,
                    None => {
                        let id = delta.len();
                        ids.insert(next.clone(), id);
                        delta.push(vec![0; sigma.len()]);
                        accepting.push(next.iter().any(|s| nfa.finals().contains(s)));
                        queue.push_back(next);
                        id
                    }
                };
                delta[from][k] = to;
            }
        }
        Dfa {
            alphabet: sigma,
            delta,
            accepting,
        }
    }

    pub fn num_states(&self) -> usize {
        self.delta.len()
    }

    pub fn complement(mut self) -> Dfa {
        for a in &mut self.accepting {
            *a = !*a;
        }
        self
    }

    pub fn accepts(&self, w: &[Symbol]) -> bool {
        let mut s = 0;
        for a in w {
            match self.alphabet.binary_search(a) {
                Ok(k) => s = self.delta[s][k],
                Err(_) => return false,
            }
        }
        self.accepting[s]
    }

    /// Product walk over a common alphabet looking for a distinguishing state.
    pub fn equivalent(&self, other: &Dfa) -> bool {
        assert_eq!(self.alphabet, other.alphabet, "alphabets differ");
        let mut seen = BTreeSet::from([(0, 0)]);
        let mut queue = VecDeque::from([(0usize, 0usize)]);
        while let Some((p, q)) = queue.pop_front() {
            if self.accepting[p] != other.accepting[q] {
                return false;
            }
            for k in 0..self.alphabet.len() {
                let next = (self.delta[p][k], other.delta[q][k]);
                if seen.insert(next) {
                    queue.push_back(next);
                }
            }
        }
        true
    }

    pub fn to_nfa(&self) -> Nfa {
        let mut n = Nfa::empty(self.alphabet.iter().copied().collect());
        for _ in 0..self.delta.len() {
            n.add_state();
        }
        n.set_initial(0);
        for (p, row) in self.delta.iter().enumerate() {
            if self.accepting[p] {
                n.set_final(p);
            }
            for (k, &q) in row.iter().enumerate() {
                n.add_transition(p, Some(self.alphabet[k]), q);
            }
        }
        n.trim()
    }
}
