use std::collections::{HashMap, HashSet};

use super::{Grammar, NtId, Sym};
use crate::error::{Error, Result};
use crate::symbol::Symbol;

/// Earley recognizer with the nullable-aware prediction step, so ε- and
/// unit-productions need no preprocessing.
#[derive(Clone, Debug)]
pub struct Recognizer {
    lhs: Vec<NtId>,
    bodies: Vec<Vec<Sym>>,
    by_lhs: Vec<Vec<usize>>,
    nullable: Vec<bool>,
    start: NtId,
    terminals: HashSet<Symbol>,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
struct Item {
    rule: usize,
    dot: usize,
    origin: usize,
}

impl Recognizer {
    pub fn new(g: &Grammar) -> Recognizer {
        let mut lhs = Vec::new();
        let mut bodies = Vec::new();
        let mut by_lhs = vec![Vec::new(); g.num_nonterminals()];
        for (n, body) in g.productions() {
            by_lhs[n].push(bodies.len());
            lhs.push(n);
            bodies.push(body.clone());
        }
        Recognizer {
            lhs,
            bodies,
            by_lhs,
            nullable: g.nullable(),
            start: g.start(),
            terminals: g.terminals().iter().copied().collect(),
        }
    }

    pub fn accepts(&self, w: &[Symbol]) -> Result<bool> {
        if let Some(&s) = w.iter().find(|s| !self.terminals.contains(s)) {
            return Err(Error::RejectedInput {
                symbol: s,
                context: "grammar",
            });
        }
        let n = w.len();
        let mut sets: Vec<Vec<Item>> = vec![Vec::new(); n + 1];
        let mut seen: Vec<HashSet<Item>> = vec![HashSet::new(); n + 1];
        // items of set i waiting on nonterminal B
        let mut waiting: Vec<HashMap<NtId, Vec<Item>>> = vec![HashMap::new(); n + 1];
        let mut predicted: Vec<HashSet<NtId>> = vec![HashSet::new(); n + 1];

        fn push(sets: &mut [Vec<Item>], seen: &mut [HashSet<Item>], i: usize, it: Item) {
            if seen[i].insert(it) {
                sets[i].push(it);
            }
        }

        for &r in &self.by_lhs[self.start] {
            push(&mut sets, &mut seen, 0, Item { rule: r, dot: 0, origin: 0 });
        }
        predicted[0].insert(self.start);

        for i in 0..=n {
            let mut k = 0;
            while k < sets[i].len() {
                let it = sets[i][k];
                k += 1;
                let body = &self.bodies[it.rule];
                if it.dot < body.len() {
                    match body[it.dot] {
                        Sym::T(a) => {
                            if i < n && w[i] == a {
                                push(&mut sets, &mut seen, i + 1, Item { dot: it.dot + 1, ..it });
                            }
                        }
                        Sym::N(b) => {
                            waiting[i].entry(b).or_default().push(it);
                            if predicted[i].insert(b) {
                                for &r in &self.by_lhs[b] {
                                    push(&mut sets, &mut seen, i, Item { rule: r, dot: 0, origin: i });
                                }
                            }
                            if self.nullable[b] {
                                push(&mut sets, &mut seen, i, Item { dot: it.dot + 1, ..it });
                            }
                        }
                    }
                } else {
                    let a = self.lhs[it.rule];
                    let parents: Vec<Item> = waiting[it.origin].get(&a).cloned().unwrap_or_default();
                    for p in parents {
                        push(&mut sets, &mut seen, i, Item { dot: p.dot + 1, ..p });
                    }
                }
            }
        }
        Ok(sets[n]
            .iter()
            .any(|it| it.origin == 0 && self.lhs[it.rule] == self.start && it.dot == self.bodies[it.rule].len()))
    }
}
