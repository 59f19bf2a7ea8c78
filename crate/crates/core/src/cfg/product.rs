//! Grammar × transducer product. Intersection with a regular language,
//! transducer images and right quotients all go through [`product`].

use std::collections::{BTreeSet, HashMap, HashSet};

use super::{Grammar, NtId, Sym};
use crate::error::Result;
use crate::fsa::{Dfa, Nfa, StateId};
use crate::fst::{Edge, Fst};
use crate::symbol::Symbol;

struct Machine<'a> {
    num_states: usize,
    edges: &'a [Edge],
    initials: &'a BTreeSet<StateId>,
    finals: &'a BTreeSet<StateId>,
    out_alphabet: &'a BTreeSet<Symbol>,
}

/// Relation of one grammar symbol: pairs of machine states it can connect.
#[derive(Default)]
struct Rel {
    pairs: HashSet<(StateId, StateId)>,
    fwd: HashMap<StateId, Vec<StateId>>,
    bwd: HashMap<StateId, Vec<StateId>>,
}

impl Rel {
    fn insert(&mut self, p: StateId, q: StateId) -> bool {
        if self.pairs.insert((p, q)) {
            self.fwd.entry(p).or_default().push(q);
            self.bwd.entry(q).or_default().push(p);
            true
        } else {
            false
        }
    }

    fn starting_at(&self, p: StateId) -> &[StateId] {
        self.fwd.get(&p).map_or(&[], Vec::as_slice)
    }

    fn ending_at(&self, q: StateId) -> &[StateId] {
        self.bwd.get(&q).map_or(&[], Vec::as_slice)
    }
}

fn product(g: &Grammar, m: &Machine) -> Grammar {
    let g = g.trim().binarized();
    let nn = g.num_nonterminals();
    let terms: Vec<Symbol> = g.terminals().iter().copied().collect();
    let term_id: HashMap<Symbol, usize> = terms.iter().enumerate().map(|(i, &a)| (a, nn + i)).collect();
    let sid = |s: &Sym| match *s {
        Sym::N(n) => n,
        Sym::T(a) => term_id[&a],
    };

    // ε-input reachability
    let mut eps_adj = vec![Vec::new(); m.num_states];
    let mut eps_out = false;
    for &(p, i, o, q) in m.edges {
        if i.is_none() {
            eps_adj[p].push(q);
            eps_out |= o.is_some();
        }
    }
    let eps_reach: Vec<Vec<StateId>> = (0..m.num_states)
        .map(|s| {
            let mut seen = vec![false; m.num_states];
            let mut stack = vec![s];
            seen[s] = true;
            let mut out = vec![s];
            while let Some(p) = stack.pop() {
                for &q in &eps_adj[p] {
                    if !seen[q] {
                        seen[q] = true;
                        out.push(q);
                        stack.push(q);
                    }
                }
            }
            out
        })
        .collect();

    // occurrences: for each symbol, (lhs, position, rule body)
    let total = nn + terms.len();
    let mut unit_of: Vec<Vec<NtId>> = vec![Vec::new(); total];
    let mut left_of: Vec<Vec<(NtId, usize)>> = vec![Vec::new(); total];
    let mut right_of: Vec<Vec<(NtId, usize)>> = vec![Vec::new(); total];
    let mut eps_rules = Vec::new();
    for (a, body) in g.productions() {
        match body.as_slice() {
            [] => eps_rules.push(a),
            [x] => unit_of[sid(x)].push(a),
            [x, y] => {
                left_of[sid(x)].push((a, sid(y)));
                right_of[sid(y)].push((a, sid(x)));
            }
            _ => unreachable!("binarized"),
        }
    }

    let mut rels: Vec<Rel> = (0..total).map(|_| Rel::default()).collect();
    let mut work: Vec<(usize, StateId, StateId)> = Vec::new();
    for &(p, i, _, s1) in m.edges {
        if let Some(&t) = i.and_then(|a| term_id.get(&a)) {
            for &q in &eps_reach[s1] {
                if rels[t].insert(p, q) {
                    work.push((t, p, q));
                }
            }
        }
    }
    for &a in &eps_rules {
        for p in 0..m.num_states {
            if rels[a].insert(p, p) {
                work.push((a, p, p));
            }
        }
    }
    while let Some((x, p, q)) = work.pop() {
        let mut found = Vec::new();
        for &a in &unit_of[x] {
            found.push((a, p, q));
        }
        for &(a, y) in &left_of[x] {
            for &r in rels[y].starting_at(q) {
                found.push((a, p, r));
            }
        }
        for &(a, y) in &right_of[x] {
            for &o in rels[y].ending_at(p) {
                found.push((a, o, q));
            }
        }
        for (a, s, t) in found {
            if rels[a].insert(s, t) {
                work.push((a, s, t));
            }
        }
    }

    // top-down generation of the reachable part
    let mut out = Grammar::new(m.out_alphabet.clone());
    let mut ids: HashMap<(usize, StateId, StateId), NtId> = HashMap::new();
    let mut eps_ids: HashMap<(StateId, StateId), NtId> = HashMap::new();
    let mut stack: Vec<(usize, StateId, StateId, NtId)> = Vec::new();
    let mut eps_stack: Vec<(StateId, StateId, NtId)> = Vec::new();

    // a terminal triple whose edges all write the same output collapses to it
    let mut terminal_edges: HashMap<(usize, StateId, StateId), Vec<(Option<Symbol>, StateId)>> = HashMap::new();
    for &(p, i, o, s1) in m.edges {
        if let Some(&t) = i.and_then(|a| term_id.get(&a)) {
            for &q in &eps_reach[s1] {
                terminal_edges.entry((t, p, q)).or_default().push((o, s1));
            }
        }
    }

    macro_rules! eps_nt {
        ($p:expr, $q:expr) => {{
            let key = ($p, $q);
            match eps_ids.get(&key) {
                Some(&id) => id,
                None => {
                    let id = out.add_nonterminal(None);
                    eps_ids.insert(key, id);
                    eps_stack.push(($p, $q, id));
                    id
                }
            }
        }};
    }

    macro_rules! triple {
        ($x:expr, $p:expr, $q:expr) => {{
            let key = ($x, $p, $q);
            match ids.get(&key) {
                Some(&id) => Some(Sym::N(id)),
                None => {
                    if $x >= nn && !eps_out {
                        let outs: BTreeSet<Option<Symbol>> =
                            terminal_edges[&key].iter().map(|&(o, _)| o).collect();
                        if outs.len() == 1 {
                            outs.into_iter().next().unwrap().map(Sym::T)
                        } else {
                            let id = out.add_nonterminal(None);
                            ids.insert(key, id);
                            stack.push(($x, $p, $q, id));
                            Some(Sym::N(id))
                        }
                    } else {
                        let id = out.add_nonterminal(None);
                        ids.insert(key, id);
                        stack.push(($x, $p, $q, id));
                        Some(Sym::N(id))
                    }
                }
            }
        }};
    }

    let start = g.start();
    for &i in m.initials {
        for &p in &eps_reach[i] {
            for &f in m.finals {
                if rels[start].pairs.contains(&(p, f)) {
                    let mut body = Vec::new();
                    if eps_out {
                        body.push(Sym::N(eps_nt!(i, p)));
                    }
                    body.extend(triple!(start, p, f));
                    out.add_production(0, body);
                }
            }
        }
    }

    loop {
        if let Some((x, p, q, id)) = stack.pop() {
            if x >= nn {
                let edges = terminal_edges[&(x, p, q)].clone();
                for (o, s1) in edges {
                    let mut body: Vec<Sym> = o.map(Sym::T).into_iter().collect();
                    if eps_out {
                        body.push(Sym::N(eps_nt!(s1, q)));
                    }
                    out.add_production(id, body);
                }
                continue;
            }
            for body in g.rules_of(x).to_vec() {
                match body.as_slice() {
                    [] => {
                        if p == q {
                            out.add_production(id, Vec::new());
                        }
                    }
                    [y] => {
                        let y = sid(y);
                        if rels[y].pairs.contains(&(p, q)) {
                            let b: Vec<Sym> = triple!(y, p, q).into_iter().collect();
                            out.add_production(id, b);
                        }
                    }
                    [y, z] => {
                        let (y, z) = (sid(y), sid(z));
                        let mids: Vec<StateId> = rels[y]
                            .starting_at(p)
                            .iter()
                            .copied()
                            .filter(|&r| rels[z].pairs.contains(&(r, q)))
                            .collect();
                        for r in mids {
                            let mut b: Vec<Sym> = triple!(y, p, r).into_iter().collect();
                            b.extend(triple!(z, r, q));
                            out.add_production(id, b);
                        }
                    }
                    _ => unreachable!("binarized"),
                }
            }
        } else if let Some((p, q, id)) = eps_stack.pop() {
            if p == q {
                out.add_production(id, Vec::new());
            }
            for &(s, i, o, t) in m.edges {
                if s == p && i.is_none() && eps_reach[t].contains(&q) {
                    let mut body: Vec<Sym> = o.map(Sym::T).into_iter().collect();
                    body.push(Sym::N(eps_nt!(t, q)));
                    out.add_production(id, body);
                }
            }
        } else {
            break;
        }
    }
    out.trim()
}

pub(super) fn intersect_regular(g: &Grammar, n: &Nfa) -> Grammar {
    let d = Dfa::from_nfa(n, n.alphabet()).to_nfa();
    let edges: Vec<Edge> = d.transitions().iter().map(|&(p, l, q)| (p, l, l, q)).collect();
    let mut alphabet = g.terminals().clone();
    alphabet.extend(n.alphabet().iter().copied());
    let machine = Machine {
        num_states: d.num_states(),
        edges: &edges,
        initials: d.initials(),
        finals: d.finals(),
        out_alphabet: &alphabet,
    };
    product(g, &machine)
}

pub(super) fn apply_fst(g: &Grammar, t: &Fst) -> Result<Grammar> {
    t.check_bounded()?;
    let machine = Machine {
        num_states: t.num_states(),
        edges: t.transitions(),
        initials: t.initials(),
        finals: t.finals(),
        out_alphabet: t.out_alphabet(),
    };
    Ok(product(g, &machine))
}

/// Copies a prefix, then guesses the start of the erased suffix and checks
/// it against `n` while writing nothing.
pub(super) fn right_quotient(g: &Grammar, n: &Nfa) -> Grammar {
    let mut t = Fst::new(g.terminals().clone(), g.terminals().clone());
    let copy = t.add_state();
    t.set_initial(copy);
    for &a in g.terminals() {
        t.add_transition(copy, Some(a), Some(a), copy);
    }
    let off = t.num_states();
    for _ in 0..n.num_states() {
        t.add_state();
    }
    for &i in n.initials() {
        t.add_transition(copy, None, None, i + off);
    }
    for &(p, l, q) in n.transitions() {
        t.add_transition(p + off, l, None, q + off);
    }
    for &f in n.finals() {
        t.set_final(f + off);
    }
    let machine = Machine {
        num_states: t.num_states(),
        edges: t.transitions(),
        initials: t.initials(),
        finals: t.finals(),
        out_alphabet: g.terminals(),
    };
    product(g, &machine)
}
